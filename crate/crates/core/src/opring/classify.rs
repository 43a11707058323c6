//! Direct-sum decomposition of normal forms by word shape.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

use super::rewrite::normal_form;
use super::spec::{RingSpec, Variety};
use super::word::{OpExpr, OpLetter, OpWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Component {
    /// `f∂^k`, including the coefficients themselves at `k = 0`.
    Differential,
    /// `f∫g` (or `f⨛g`).
    Integral,
    /// `f⨛g∂^k` with `k > 0`, the evaluation rung.
    Rung,
    /// `f e ∂^k`, the evaluation ideal.
    Evaluation,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Component::Differential => "differential",
            Component::Integral => "integral",
            Component::Rung => "rung",
            Component::Evaluation => "evaluation",
        })
    }
}

/// The summand a normal-form word of `variety` belongs to.
pub fn shape(w: &OpWord, variety: Variety) -> Option<Component> {
    let mut rest = w.letters();
    if let [OpLetter::Coeff(_), tail @ ..] = rest {
        rest = tail;
    }
    let all_der = |ls: &[OpLetter]| ls.iter().all(|l| *l == OpLetter::Der);
    match rest {
        ls if all_der(ls) => (variety.has_der() || ls.is_empty()).then_some(Component::Differential),
        [l, tail @ ..] if Some(*l) == variety.integral() => {
            let tail = match tail {
                [OpLetter::Coeff(_), t @ ..] => t,
                t => t,
            };
            if tail.is_empty() {
                Some(Component::Integral)
            } else if variety == Variety::Drb && all_der(tail) {
                Some(Component::Rung)
            } else {
                None
            }
        }
        [OpLetter::Ev, tail @ ..] if variety == Variety::Id && all_der(tail) => Some(Component::Evaluation),
        _ => None,
    }
}

/// Splits a normal form into its direct summands.
pub fn classify(t: &OpExpr, spec: &RingSpec) -> Result<BTreeMap<Component, OpExpr>> {
    spec.check(t)?;
    let mut out: BTreeMap<Component, OpExpr> = BTreeMap::new();
    for (w, c) in t.terms() {
        let comp = shape(w, spec.variety()).ok_or_else(|| Error::Unclassified(w.to_string()))?;
        out.entry(comp).or_default().add_term(w.clone(), c.clone());
    }
    Ok(out)
}

/// The quotient map from differential Rota-Baxter operators onto
/// integro-differential operators over the same coefficients: `⨛ ↦ ∫`
/// followed by reduction.
pub fn project_drb_to_id(t: &OpExpr, drb: &RingSpec) -> Result<OpExpr> {
    let id = drb.as_variety(Variety::Id);
    let source = drb.as_variety(Variety::Drb);
    source.check(t)?;
    normal_form(&t.rename_letter(OpLetter::VInt, OpLetter::Int), &id)
}
