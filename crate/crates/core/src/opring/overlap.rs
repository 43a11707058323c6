//! Overlap ambiguities of the rewrite systems and their S-polynomials.
//!
//! Overlap names spell the overlap word: `d` is `∂`, `i` the integral,
//! `e` the evaluation, and `f`, `g` coefficient slots. For example
//! `i_f_i_g_i` is the self-overlap `∫f∫g∫` of the Rota-Baxter rule. The
//! three-letter names `i_f_*`, `d_i_f`, `e_i_f` meet the rule pulling
//! `ε`-constants out of the integral and only matter over `k[x,ε]`.

use crate::error::{Error, Result};
use crate::poly::Poly;

use super::rewrite::{normal_form, Rules};
use super::spec::{RingSpec, Variety};
use super::word::{OpExpr, OpLetter};

const DIFF: &[&str] = &["d_fg"];
const RB: &[&str] = &["i_f_i_g_i"];
const DRB: &[&str] = &["d_fg", "i_f_i_g_i", "d_i_f_i"];
const ID: &[&str] = &[
    "d_fg",
    "i_f_i_g_i",
    "d_i_f_i",
    "i_f_d_g",
    "i_f_i_g_d",
    "d_i_f_d",
    "i_f_d_i",
    "e_f_g",
    "e_e_f",
    "d_e_f",
    "e_e_e",
    "d_e_e",
    "e_e_i",
    "e_i_f_i",
    "e_i_f_d",
    "e_i_f_e",
    "i_f_e_g",
    "i_f_e_e",
    "i_f_e_i",
    "i_f_i_g_e",
    "i_f_d_e",
    "d_i_f_e",
    "i_f_i",
    "i_f_d",
    "i_f_e",
    "d_i_f",
    "e_i_f",
];

/// All overlap ambiguities of the rule set of `variety`.
pub fn overlaps(variety: Variety) -> &'static [&'static str] {
    match variety {
        Variety::Diff => DIFF,
        Variety::Rb => RB,
        Variety::Drb => DRB,
        Variety::Id => ID,
    }
}

/// The two one-step reductions of the overlap word.
pub fn overlap_routes(spec: &RingSpec, overlap: &str, f: &Poly, g: &Poly) -> Result<(OpExpr, OpExpr)> {
    if !overlaps(spec.variety()).contains(&overlap) {
        return Err(Error::UnknownOverlap { overlap: overlap.to_string(), ring: spec.variety().to_string() });
    }
    spec.coeff().check(f)?;
    spec.coeff().check(g)?;
    let r = Rules::new(spec);
    let c = OpExpr::poly;
    let i = OpExpr::letter(spec.variety().integral().unwrap_or(OpLetter::Int));
    let d = OpExpr::letter(OpLetter::Der);
    let e = OpExpr::letter(OpLetter::Ev);
    let fg = f * g;
    let ifx = &i * &c(f);
    let pair = match overlap {
        "d_fg" => (&r.der_coeff(f) * &c(g), r.der_coeff(&fg)),
        "i_f_i_g_i" => (&(&r.int_coeff_int(f) * &c(g)) * &i, &ifx * &r.int_coeff_int(g)),
        "d_i_f_i" => (&(&r.der_int() * &c(f)) * &i, &d * &r.int_coeff_int(f)),
        "i_f_d_g" => (&r.int_coeff_der(f) * &c(g), &ifx * &r.der_coeff(g)),
        "i_f_i_g_d" => (&(&r.int_coeff_int(f) * &c(g)) * &d, &ifx * &r.int_coeff_der(g)),
        "d_i_f_d" => (&(&r.der_int() * &c(f)) * &d, &d * &r.int_coeff_der(f)),
        "i_f_d_i" => (&r.int_coeff_der(f) * &i, &ifx * &r.der_int()),
        "e_f_g" => (&r.ev_coeff(f) * &c(g), r.ev_coeff(&fg)),
        "e_e_f" => (&r.ev_ev() * &c(f), &e * &r.ev_coeff(f)),
        "d_e_f" => (&r.der_ev() * &c(f), &d * &r.ev_coeff(f)),
        "e_e_e" => (&r.ev_ev() * &e, &e * &r.ev_ev()),
        "d_e_e" => (&r.der_ev() * &e, &d * &r.ev_ev()),
        "e_e_i" => (&r.ev_ev() * &i, &e * &r.ev_int()),
        "e_i_f_i" => (&(&r.ev_int() * &c(f)) * &i, &e * &r.int_coeff_int(f)),
        "e_i_f_d" => (&(&r.ev_int() * &c(f)) * &d, &e * &r.int_coeff_der(f)),
        "e_i_f_e" => (&(&r.ev_int() * &c(f)) * &e, &e * &r.int_coeff_ev(f)),
        "i_f_e_g" => (&r.int_coeff_ev(f) * &c(g), &ifx * &r.ev_coeff(g)),
        "i_f_e_e" => (&r.int_coeff_ev(f) * &e, &ifx * &r.ev_ev()),
        "i_f_e_i" => (&r.int_coeff_ev(f) * &i, &ifx * &r.ev_int()),
        "i_f_i_g_e" => (&(&r.int_coeff_int(f) * &c(g)) * &e, &ifx * &r.int_coeff_ev(g)),
        "i_f_d_e" => (&r.int_coeff_der(f) * &e, &ifx * &r.der_ev()),
        "d_i_f_e" => (&(&r.der_int() * &c(f)) * &e, &d * &r.int_coeff_ev(f)),
        "i_f_i" => (r.int_coeff_int(f), &r.int_const(f) * &i),
        "i_f_d" => (r.int_coeff_der(f), &r.int_const(f) * &d),
        "i_f_e" => (r.int_coeff_ev(f), &r.int_const(f) * &e),
        "d_i_f" => (&r.der_int() * &c(f), &d * &r.int_const(f)),
        "e_i_f" => (&r.ev_int() * &c(f), &e * &r.int_const(f)),
        _ => unreachable!("overlap list and routes out of sync"),
    };
    Ok(pair)
}

/// Difference of the normal forms of both reductions.
pub fn spoly(spec: &RingSpec, overlap: &str, f: &Poly, g: &Poly) -> Result<OpExpr> {
    let (a, b) = overlap_routes(spec, overlap, f, g)?;
    Ok(&normal_form(&a, spec)? - &normal_form(&b, spec)?)
}

/// Whether the overlap resolves for the coefficients `f`, `g`.
pub fn spoly_check(spec: &RingSpec, overlap: &str, f: &Poly, g: &Poly) -> Result<bool> {
    Ok(spoly(spec, overlap, f, g)?.is_zero())
}
