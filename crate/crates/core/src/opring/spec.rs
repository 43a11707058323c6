use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rat::{self, Rat};
use crate::structure::CoeffStructure;

use super::word::{OpExpr, OpLetter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variety {
    /// Differential algebras.
    Diff,
    /// Rota-Baxter algebras.
    Rb,
    /// Differential Rota-Baxter algebras.
    Drb,
    /// Integro-differential algebras.
    Id,
}

impl Variety {
    pub const ALL: [Variety; 4] = [Variety::Diff, Variety::Rb, Variety::Drb, Variety::Id];

    pub fn name(&self) -> &'static str {
        match self {
            Variety::Diff => "diff",
            Variety::Rb => "rb",
            Variety::Drb => "drb",
            Variety::Id => "id",
        }
    }

    /// The integral letter of this variety, if any.
    pub fn integral(&self) -> Option<OpLetter> {
        match self {
            Variety::Diff => None,
            Variety::Rb | Variety::Id => Some(OpLetter::Int),
            Variety::Drb => Some(OpLetter::VInt),
        }
    }

    pub fn has_der(&self) -> bool {
        *self != Variety::Rb
    }

    pub fn allows(&self, l: &OpLetter) -> bool {
        match l {
            OpLetter::Coeff(_) => true,
            OpLetter::Der => self.has_der(),
            OpLetter::Int => matches!(self, Variety::Rb | Variety::Id),
            OpLetter::VInt => *self == Variety::Drb,
            OpLetter::Ev => *self == Variety::Id,
        }
    }
}

impl FromStr for Variety {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "diff" => Ok(Variety::Diff),
            "rb" => Ok(Variety::Rb),
            "drb" => Ok(Variety::Drb),
            "id" => Ok(Variety::Id),
            other => Err(Error::Invalid(format!("unknown ring `{other}` (expected diff, rb, drb or id)"))),
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Variety plus coefficient model; selects the rewrite system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    variety: Variety,
    coeff: CoeffStructure,
}

impl RingSpec {
    /// The weight of `coeff` is overwritten by `weight`.
    pub fn new(variety: Variety, weight: Rat, coeff: CoeffStructure) -> Self {
        RingSpec { variety, coeff: coeff.with_weight(weight) }
    }

    /// Weight zero over `k[x]` with `∫ = ∫_0^x`.
    pub fn standard(variety: Variety) -> Self {
        RingSpec::new(variety, rat::int(0), CoeffStructure::point(rat::int(0)))
    }

    pub fn with_weight(variety: Variety, weight: Rat) -> Self {
        RingSpec::new(variety, weight, CoeffStructure::point(rat::int(0)))
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn weight(&self) -> &Rat {
        self.coeff.weight()
    }

    pub fn coeff(&self) -> &CoeffStructure {
        &self.coeff
    }

    /// Same coefficient model, another variety.
    pub fn as_variety(&self, variety: Variety) -> RingSpec {
        RingSpec { variety, coeff: self.coeff.clone() }
    }

    pub fn check_letter(&self, l: &OpLetter) -> Result<()> {
        let ok = self.variety.allows(l)
            && match l {
                OpLetter::Coeff(m) => self.coeff.admits_mono(m),
                _ => true,
            };
        if ok {
            Ok(())
        } else {
            let letter = match l {
                OpLetter::Int => "I (integral)".to_string(),
                OpLetter::VInt => "I (Rota-Baxter)".to_string(),
                other => other.symbol(),
            };
            Err(Error::LetterNotAllowed { letter, ring: self.to_string() })
        }
    }

    pub fn check(&self, t: &OpExpr) -> Result<()> {
        t.letters().try_for_each(|l| self.check_letter(l))
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.variety, self.coeff)
    }
}
