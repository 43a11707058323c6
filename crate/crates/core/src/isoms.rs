//! The free integro-differential extension `k[x] → k[x,ε]` and the maps it
//! induces between operator rings: the generic embedding of the
//! differential Rota-Baxter operators, and specialization at a point.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::opring::{normal_form, OpExpr, OpLetter, OpWord, RingSpec, Rules, Variety};
use crate::poly::{Mono, Poly};
use crate::rat::{self, Rat};
use crate::structure::CoeffStructure;
use crate::weyl::{self, Basis, WeylWord};

/// Source and target rings of the generic embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingContext {
    source: RingSpec,
    target: RingSpec,
}

impl EmbeddingContext {
    pub fn new() -> Self {
        EmbeddingContext {
            source: RingSpec::standard(Variety::Drb),
            target: RingSpec::new(Variety::Id, Rat::zero(), CoeffStructure::generic()),
        }
    }

    pub fn source(&self) -> &RingSpec {
        &self.source
    }

    pub fn target(&self) -> &RingSpec {
        &self.target
    }
}

impl Default for EmbeddingContext {
    fn default() -> Self {
        EmbeddingContext::new()
    }
}

fn ders(k: u32) -> OpExpr {
    OpExpr::letter(OpLetter::Der).pow(k)
}

/// Closed normal form of `∫ f ∂^k` in an integro-differential ring.
pub fn ev_rung_expand(f: &Poly, k: u32, target: &RingSpec) -> Result<OpExpr> {
    if k == 0 {
        return Err(Error::Invalid("ev-rung expansion needs k > 0".into()));
    }
    if target.variety() != Variety::Id {
        return Err(Error::Invalid(format!("ev-rung expansion needs an id ring, got {}", target.variety())));
    }
    let s = target.coeff();
    if !s.is_weight_zero() {
        return Err(Error::Structure("ev-rung expansion is stated at weight zero".into()));
    }
    s.check(f)?;
    let ev = OpExpr::letter(OpLetter::Ev);
    let mut out = OpExpr::zero();
    let mut fi = f.clone();
    for i in 0..k {
        let part = &OpExpr::poly(&fi) - &(&OpExpr::poly(&s.evaluation(&fi)) * &ev);
        let sign = if i % 2 == 0 { Rat::one() } else { -Rat::one() };
        out = &out + &(&part * &ders(k - i - 1)).scale(&sign);
        fi = s.derivation(&fi);
    }
    let sign = if k.is_multiple_of(2) { Rat::one() } else { -Rat::one() };
    out = &out + &Rules::new(target).int_const(&fi).scale(&sign);
    Ok(out)
}

/// `⨛ ↦ ∫_ε^x`, then the integro-differential normal form over `k[x,ε]`.
pub fn embed_drb(t: &OpExpr, ctx: &EmbeddingContext) -> Result<OpExpr> {
    if t.has_eps() {
        return Err(Error::Structure("the differential Rota-Baxter source is k[x]; found eps".into()));
    }
    ctx.source.check(t)?;
    normal_form(&t.rename_letter(OpLetter::VInt, OpLetter::Int), &ctx.target)
}

/// The image of the `B1` word `x^i ℓ^j e ∂^k` under the generic embedding:
/// `x^i (x−ε)^j / j! · e · ∂^k`.
pub fn eval_word_image(i: u32, j: u32, k: u32) -> OpExpr {
    let shifted = (&Poly::x() - &Poly::eps()).pow(j).scale(&(Rat::one() / rat::factorial(j)));
    let head = OpExpr::poly(&shifted.times_mono(&Mono::new(i, 0)));
    &(&head * &OpExpr::letter(OpLetter::Ev)) * &ders(k)
}

/// The integro-differential ring over `k[x]` with integration constant `c`.
pub fn point_spec(c: &Rat) -> RingSpec {
    RingSpec::new(Variety::Id, Rat::zero(), CoeffStructure::point(c.clone()))
}

/// Quotient map onto `k[x][∂,∫]` with `∫ = ∫_c^x`, computed through the
/// `B1` basis of the Weyl algebra.
pub fn specialize(t: &OpExpr, c: &Rat) -> Result<OpExpr> {
    let drb = RingSpec::standard(Variety::Drb);
    if t.has_eps() {
        return Err(Error::Structure("specialization acts on k[x] operators; found eps".into()));
    }
    let nf = normal_form(t, &drb)?;
    let b1 = weyl::convert(&weyl::from_opexpr(&nf)?, Basis::B1);
    let target = point_spec(c);
    let x_pow = |i: u32| OpExpr::poly(&Poly::x_pow(i));
    let ints = |j: u32| OpExpr::letter(OpLetter::Int).pow(j);
    let mut out = OpExpr::zero();
    for (w, coeff) in b1.terms() {
        let image = match *w {
            WeylWord::Diff { i, k } => &x_pow(i) * &ders(k),
            WeylWord::Right { i, j } => &x_pow(i) * &ints(j),
            WeylWord::Eval { i, j, k } => {
                let shifted = (&Poly::x() - &Poly::constant(c.clone())).pow(j);
                let head = shifted.times_mono(&Mono::new(i, 0)).scale(&(Rat::one() / rat::factorial(j)));
                &(&OpExpr::poly(&head) * &OpExpr::letter(OpLetter::Ev)) * &ders(k)
            }
            _ => unreachable!("b1 words only"),
        };
        out = &out + &image.scale(coeff);
    }
    normal_form(&out, &target)
}

/// The differential Rota-Baxter normal-form words with all exponents at
/// most `bound`.
pub fn drb_basis_words(bound: u32) -> Vec<OpWord> {
    let x = |e: u32| OpLetter::Coeff(Mono::new(e, 0));
    let word = |ls: Vec<OpLetter>| OpWord::from_letters(ls);
    let mut out = Vec::new();
    for i in 0..=bound {
        for k in 0..=bound {
            let mut ls = vec![x(i)];
            ls.extend(std::iter::repeat_n(OpLetter::Der, k as usize));
            out.push(word(ls));
        }
        for j in 0..=bound {
            for k in 0..=bound {
                let mut ls = vec![x(i), OpLetter::VInt, x(j)];
                ls.extend(std::iter::repeat_n(OpLetter::Der, k as usize));
                out.push(word(ls));
            }
        }
    }
    out
}

/// Outcome of the rank computation behind [`injectivity_witness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityReport {
    pub bound: u32,
    pub words: usize,
    pub rank: usize,
    /// A nontrivial combination of source words with zero image.
    pub dependency: Option<Vec<(OpWord, Rat)>>,
    /// Highest `∂`-order among the words of `dependency`.
    pub top_order: Option<usize>,
}

impl InjectivityReport {
    pub fn injective(&self) -> bool {
        self.dependency.is_none() && self.rank == self.words
    }
}

pub const MAX_INJECTIVITY_BOUND: u32 = 4;

type Row = BTreeMap<OpWord, Rat>;

fn axpy(dst: &mut BTreeMap<usize, Rat>, src: &BTreeMap<usize, Rat>, a: &Rat) {
    for (k, v) in src {
        let e = dst.entry(*k).or_insert_with(Rat::zero);
        *e += a * v;
        if e.is_zero() {
            dst.remove(k);
        }
    }
}

fn axpy_row(dst: &mut Row, src: &Row, a: &Rat) {
    for (k, v) in src {
        let e = dst.entry(k.clone()).or_insert_with(Rat::zero);
        *e += a * v;
        if e.is_zero() {
            dst.remove(k);
        }
    }
}

/// Exact rank of the embedded images of [`drb_basis_words`].
pub fn injectivity_witness(bound: u32, ctx: &EmbeddingContext) -> Result<InjectivityReport> {
    if bound > MAX_INJECTIVITY_BOUND {
        return Err(Error::Invalid(format!(
            "injectivity bound {bound} exceeds the limit of {MAX_INJECTIVITY_BOUND}"
        )));
    }
    let words = drb_basis_words(bound);
    let mut pivots: BTreeMap<OpWord, (Row, BTreeMap<usize, Rat>)> = BTreeMap::new();
    for (n, w) in words.iter().enumerate() {
        let image = embed_drb(&OpExpr::word(w.clone()), ctx)?;
        let mut row: Row = image.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut combo = BTreeMap::from([(n, Rat::one())]);
        while let Some((lead, lc)) = row.last_key_value().map(|(w, c)| (w.clone(), c.clone())) {
            match pivots.get(&lead) {
                Some((prow, pcombo)) => {
                    let a = -(lc / &prow[&lead]);
                    axpy_row(&mut row, prow, &a);
                    axpy(&mut combo, pcombo, &a);
                }
                None => break,
            }
        }
        match row.last_key_value().map(|(w, _)| w.clone()) {
            Some(lead) => {
                pivots.insert(lead, (row, combo));
            }
            None => {
                let dependency: Vec<(OpWord, Rat)> =
                    combo.into_iter().map(|(i, c)| (words[i].clone(), c)).collect();
                let top_order = dependency
                    .iter()
                    .map(|(w, _)| w.letters().iter().filter(|l| **l == OpLetter::Der).count())
                    .max();
                return Ok(InjectivityReport {
                    bound,
                    words: words.len(),
                    rank: pivots.len(),
                    dependency: Some(dependency),
                    top_order,
                });
            }
        }
    }
    Ok(InjectivityReport { bound, words: words.len(), rank: pivots.len(), dependency: None, top_order: None })
}

/// The extension of `phi: k[x] → k[x]` to `k[x,ε]`:
/// `x^i ε^j ↦ phi(x^i) · e(phi(x^j))`, with `e` the evaluation of `target`.
pub fn free_extension_map(phi: &dyn Fn(&Poly) -> Poly, target: &CoeffStructure, p: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        let head = phi(&Poly::x_pow(m.x));
        let tail = target.evaluation(&phi(&Poly::x_pow(m.eps)));
        out += &(&head * &tail).scale(c);
    }
    out
}

/// Checks that the extension of `phi` commutes with `∂`, `∫` and `e` on the
/// monomials `x^i ε^j`, `i, j ≤ max_deg`. Returns the first failing
/// monomial and operator.
pub fn factorization_check(
    phi: &dyn Fn(&Poly) -> Poly,
    target: &CoeffStructure,
    max_deg: u32,
) -> Option<(Mono, &'static str)> {
    let free = CoeffStructure::generic();
    let ext = |p: &Poly| free_extension_map(phi, target, p);
    for i in 0..=max_deg {
        for j in 0..=max_deg {
            let m = Mono::new(i, j);
            let p = Poly::term(Rat::one(), m);
            if ext(&free.derivation(&p)) != target.derivation(&ext(&p)) {
                return Some((m, "D"));
            }
            if ext(&free.integral(&p)) != target.integral(&ext(&p)) {
                return Some((m, "I"));
            }
            if ext(&free.evaluation(&p)) != target.evaluation(&ext(&p)) {
                return Some((m, "E"));
            }
        }
    }
    None
}
