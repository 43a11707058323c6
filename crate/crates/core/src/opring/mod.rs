//! Operator rings: the free operator ring over a coefficient algebra and
//! its quotients by the differential, Rota-Baxter, differential Rota-Baxter
//! and integro-differential rewrite systems.

mod classify;
mod overlap;
mod rewrite;
mod spec;
mod word;

pub use classify::{classify, project_drb_to_id, shape, Component};
pub use overlap::{overlap_routes, overlaps, spoly, spoly_check};
pub use rewrite::{is_normal, normal_form, normal_form_with, Redex, Rules, Strategy};
pub use spec::{RingSpec, Variety};
pub use word::{OpExpr, OpLetter, OpWord};

/// Free product: concatenation of words, no rewriting.
pub fn mul(a: &OpExpr, b: &OpExpr) -> OpExpr {
    a * b
}

/// `e = 1 − ⨛∂`, the evaluation of a differential Rota-Baxter ring
/// expressed in its letters.
pub fn drb_evaluation() -> OpExpr {
    &OpExpr::one() - &OpExpr::product(&[OpLetter::VInt, OpLetter::Der])
}
