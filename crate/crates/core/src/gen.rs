//! Seeded random inputs for property checks.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::opring::{OpExpr, OpLetter, RingSpec};
use crate::poly::{Mono, Poly};
use crate::rat::Rat;
use crate::terms::{Letter, Mode, Monomial, OpLabel, Var};
use crate::weyl::WeylElt;

pub const MAX_POLY_DEGREE: u32 = 6;
pub const MAX_COEFF_DEGREE: u32 = 4;
pub const MAX_WORD_LEN: usize = 6;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in `{−9..9} / {1..4}`.
pub fn random_rat(rng: &mut impl Rng) -> Rat {
    Rat::new(BigInt::from(rng.gen_range(-9..=9)), BigInt::from(rng.gen_range(1..=4)))
}

fn nonzero_rat(rng: &mut impl Rng) -> Rat {
    loop {
        let r = random_rat(rng);
        if r != Rat::from_integer(BigInt::from(0)) {
            return r;
        }
    }
}

/// Dense polynomial of `x`-degree at most `max_deg`; with `with_eps`, each
/// coefficient may also carry `ε^0..ε^2`.
pub fn random_poly(rng: &mut impl Rng, max_deg: u32, with_eps: bool) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let mut p = Poly::zero();
    for i in 0..=deg {
        let eps = if with_eps { rng.gen_range(0..=2) } else { 0 };
        p.add_term(Mono::new(i, eps), random_rat(rng));
    }
    p
}

/// One or two monomials of `x`-degree at most `max_deg`.
pub fn random_sparse_poly(rng: &mut impl Rng, max_deg: u32, with_eps: bool) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let eps = if with_eps { rng.gen_range(0..=1) } else { 0 };
        p.add_term(Mono::new(rng.gen_range(0..=max_deg), eps), nonzero_rat(rng));
    }
    p
}

/// The operator letters (no coefficients) of the ring of `spec`.
pub fn operator_letters(spec: &RingSpec) -> Vec<OpLetter> {
    [OpLetter::Der, OpLetter::Int, OpLetter::VInt, OpLetter::Ev]
        .into_iter()
        .filter(|l| spec.variety().allows(l))
        .collect()
}

/// A product of `1..=max_len` factors, each an operator letter or a sparse
/// coefficient polynomial of degree at most `coeff_deg`.
pub fn random_word(rng: &mut impl Rng, spec: &RingSpec, max_len: usize, coeff_deg: u32) -> OpExpr {
    let ops = operator_letters(spec);
    let with_eps = spec.coeff().is_generic();
    let len = rng.gen_range(1..=max_len);
    let mut out = OpExpr::one();
    for _ in 0..len {
        let factor = if rng.gen_bool(0.6) {
            OpExpr::letter(*ops.choose(rng).expect("every ring has an operator"))
        } else {
            OpExpr::poly(&random_sparse_poly(rng, coeff_deg, with_eps))
        };
        out = &out * &factor;
    }
    out
}

/// A rational combination of up to `terms` random words.
pub fn random_expr(rng: &mut impl Rng, spec: &RingSpec, terms: usize, max_len: usize, coeff_deg: u32) -> OpExpr {
    let mut out = OpExpr::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        out = &out + &random_word(rng, spec, max_len, coeff_deg).scale(&nonzero_rat(rng));
    }
    out
}

/// A random `B2` element with exponents at most `max_index`.
pub fn random_weyl(rng: &mut impl Rng, terms: usize, max_index: u32) -> WeylElt {
    let mut out = WeylElt::zero(crate::weyl::Basis::B2);
    for _ in 0..rng.gen_range(1..=terms) {
        let t = WeylElt::triple(
            rng.gen_range(0..=max_index),
            rng.gen_range(0..=max_index),
            rng.gen_range(0..=max_index),
        );
        out = out.add(&t.scale(&nonzero_rat(rng))).expect("same basis");
    }
    out
}

/// A random bracket word over `vars` and `labels` with nesting at most
/// `depth` and at most `max_letters` letters per level.
pub fn random_monomial(
    rng: &mut impl Rng,
    vars: &[Var],
    labels: &[OpLabel],
    depth: usize,
    max_letters: usize,
) -> Monomial {
    let n = rng.gen_range(1..=max_letters);
    let letters = (0..n)
        .map(|_| {
            if depth > 0 && rng.gen_bool(0.35) {
                let label = labels.choose(rng).expect("labels").clone();
                Letter::Bracket(label, random_monomial(rng, vars, labels, depth - 1, max_letters))
            } else {
                Letter::Var(vars.choose(rng).expect("variables").clone())
            }
        })
        .collect();
    Monomial::new(letters)
}

/// A random law in `mode` with up to `terms` monomials.
pub fn random_law(
    rng: &mut impl Rng,
    mode: Mode,
    vars: &[Var],
    labels: &[OpLabel],
    terms: usize,
    depth: usize,
) -> crate::terms::LawExpr {
    let mut out = crate::terms::LawExpr::zero(mode);
    for _ in 0..rng.gen_range(1..=terms) {
        out.add_term(random_monomial(rng, vars, labels, depth, 3), nonzero_rat(rng));
    }
    out
}
