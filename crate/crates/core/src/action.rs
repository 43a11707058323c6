//! Operators acting on polynomials: `k[x]` and `k[x,ε]` as modules over
//! their operator rings.

use crate::error::{Error, Result};
use crate::gen;
use crate::opring::{normal_form, OpExpr, OpLetter, RingSpec};
use crate::poly::Poly;
use crate::structure::CoeffStructure;

/// A coefficient algebra acted on by its operator ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionModel {
    structure: CoeffStructure,
}

impl ActionModel {
    pub fn new(structure: CoeffStructure) -> Self {
        ActionModel { structure }
    }

    pub fn for_spec(spec: &RingSpec) -> Self {
        ActionModel::new(spec.coeff().clone())
    }

    pub fn structure(&self) -> &CoeffStructure {
        &self.structure
    }
}

/// `t · p`, letters applied right to left.
pub fn apply(t: &OpExpr, p: &Poly, m: &ActionModel) -> Result<Poly> {
    let s = &m.structure;
    s.check(p)?;
    let mut out = Poly::zero();
    for (w, c) in t.terms() {
        let mut cur = p.clone();
        for l in w.letters().iter().rev() {
            cur = match l {
                OpLetter::Coeff(mono) => {
                    if !s.admits_mono(mono) {
                        return Err(Error::Structure(format!("coefficient {mono} is not in the model {s}")));
                    }
                    cur.times_mono(mono)
                }
                OpLetter::Der => s.derivation(&cur),
                OpLetter::Int | OpLetter::VInt => s.integral(&cur),
                OpLetter::Ev => s.evaluation(&cur),
            };
            if cur.is_zero() {
                break;
            }
        }
        out += &cur.scale(c);
    }
    Ok(out)
}

/// A polynomial on which `t` and its normal form act differently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub input: Poly,
    pub direct: Poly,
    pub reduced: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub samples: usize,
    pub normal_form: OpExpr,
    pub counterexample: Option<Counterexample>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Compares `t · p` with `normal_form(t) · p` on seeded random `p`.
pub fn oracle_check(t: &OpExpr, spec: &RingSpec, samples: usize, seed: u64) -> Result<OracleReport> {
    let nf = normal_form(t, spec)?;
    let model = ActionModel::for_spec(spec);
    let mut rng = gen::rng(seed);
    let with_eps = spec.coeff().is_generic();
    for _ in 0..samples {
        let p = gen::random_poly(&mut rng, gen::MAX_POLY_DEGREE, with_eps);
        let direct = apply(t, &p, &model)?;
        let reduced = apply(&nf, &p, &model)?;
        if direct != reduced {
            let counterexample = Some(Counterexample { input: p, direct, reduced });
            return Ok(OracleReport { samples, normal_form: nf, counterexample });
        }
    }
    Ok(OracleReport { samples, normal_form: nf, counterexample: None })
}
