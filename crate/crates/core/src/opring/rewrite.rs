//! The rewrite systems of the four operator rings and the reduction engine.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::poly::{Mono, Poly};
use crate::rat::Rat;

use super::spec::{RingSpec, Variety};
use super::word::{OpExpr, OpLetter, OpWord};

/// Right-hand sides of the rule schemas, extended linearly in the
/// coefficient slots.
pub struct Rules<'a> {
    spec: &'a RingSpec,
}

impl<'a> Rules<'a> {
    pub fn new(spec: &'a RingSpec) -> Self {
        Rules { spec }
    }

    fn int(&self) -> OpExpr {
        OpExpr::letter(self.spec.variety().integral().unwrap_or(OpLetter::Int))
    }

    /// `∂f → f∂ + λf'∂ + f'`
    pub fn der_coeff(&self, f: &Poly) -> OpExpr {
        let s = self.spec.coeff();
        let df = s.derivation(f);
        let d = OpExpr::letter(OpLetter::Der);
        let lead = &OpExpr::poly(&(f + &df.scale(s.weight()))) * &d;
        &lead + &OpExpr::poly(&df)
    }

    /// `∫f∫ → f`∫ − ∫f` − λ∫f`
    pub fn int_coeff_int(&self, f: &Poly) -> OpExpr {
        let s = self.spec.coeff();
        let fi = OpExpr::poly(&s.integral(f));
        let i = self.int();
        let a = &fi * &i;
        let b = &i * &fi;
        let c = &(&i * &OpExpr::poly(f)).scale(s.weight());
        &(&a - &b) - c
    }

    /// `∂∫ → 1`
    pub fn der_int(&self) -> OpExpr {
        OpExpr::one()
    }

    /// `∫f∂ → f̲ − ∫f̲' − e(f̲)e`
    pub fn int_coeff_der(&self, f: &Poly) -> OpExpr {
        let s = self.spec.coeff();
        let under = s.shift_inverse(f);
        let a = OpExpr::poly(&under);
        let b = &self.int() * &OpExpr::poly(&s.derivation(&under));
        let c = &OpExpr::poly(&s.evaluation(&under)) * &OpExpr::letter(OpLetter::Ev);
        &(&a - &b) - &c
    }

    /// `e f → e(f) e`
    pub fn ev_coeff(&self, f: &Poly) -> OpExpr {
        &OpExpr::poly(&self.spec.coeff().evaluation(f)) * &OpExpr::letter(OpLetter::Ev)
    }

    /// `e e → e`
    pub fn ev_ev(&self) -> OpExpr {
        OpExpr::letter(OpLetter::Ev)
    }

    /// `∂e → 0`
    pub fn der_ev(&self) -> OpExpr {
        OpExpr::zero()
    }

    /// `e∫ → 0`
    pub fn ev_int(&self) -> OpExpr {
        OpExpr::zero()
    }

    /// `∫f e → (∫f) e`
    pub fn int_coeff_ev(&self, f: &Poly) -> OpExpr {
        &OpExpr::poly(&self.spec.coeff().integral(f)) * &OpExpr::letter(OpLetter::Ev)
    }

    /// `∫ x^i ε^j → ε^j ∫ x^i`: over `k[x,ε]` the constants `k[ε]` commute
    /// with the integral.
    pub fn int_const(&self, f: &Poly) -> OpExpr {
        let mut out = OpExpr::zero();
        for (m, c) in f.terms() {
            let eps = OpExpr::poly(&Poly::term(Rat::one(), Mono::new(0, m.eps)));
            let x = OpExpr::poly(&Poly::term(c.clone(), Mono::new(m.x, 0)));
            out = &out + &(&(&eps * &self.int()) * &x);
        }
        out
    }

    /// The redex of `w` starting at `i`, if any.
    pub fn redex_at(&self, w: &OpWord, i: usize) -> Option<Redex> {
        let letters = w.letters();
        let variety = self.spec.variety();
        let next = letters.get(i + 1).copied();
        let mono = |m: Mono| Poly::term(Rat::one(), m);
        let found = |end: usize, rhs: OpExpr| Some(Redex { start: i, end, rhs });
        match letters[i] {
            OpLetter::Der => match next? {
                OpLetter::Coeff(m) => found(i + 2, self.der_coeff(&mono(m))),
                l if l.is_integral() && matches!(variety, Variety::Drb | Variety::Id) => found(i + 2, self.der_int()),
                OpLetter::Ev if variety == Variety::Id => found(i + 2, self.der_ev()),
                _ => None,
            },
            l if l.is_integral() => {
                if let Some(OpLetter::Coeff(m)) = next {
                    if m.eps > 0 && variety == Variety::Id {
                        return found(i + 2, self.int_const(&mono(m)));
                    }
                }
                let (f, j) = match next? {
                    OpLetter::Coeff(m) => (mono(m), i + 2),
                    _ => (Poly::one(), i + 1),
                };
                match letters.get(j)? {
                    l2 if l2.is_integral() => found(j + 1, self.int_coeff_int(&f)),
                    OpLetter::Der if variety == Variety::Id => found(j + 1, self.int_coeff_der(&f)),
                    OpLetter::Ev if variety == Variety::Id => found(j + 1, self.int_coeff_ev(&f)),
                    _ => None,
                }
            }
            OpLetter::Ev => match next? {
                OpLetter::Coeff(m) => found(i + 2, self.ev_coeff(&mono(m))),
                OpLetter::Ev => found(i + 2, self.ev_ev()),
                l if l.is_integral() => found(i + 2, self.ev_int()),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn redexes(&self, w: &OpWord) -> Vec<Redex> {
        (0..w.len()).filter_map(|i| self.redex_at(w, i)).collect()
    }
}

/// An occurrence of a rule's left-hand side in a word.
#[derive(Clone, Debug)]
pub struct Redex {
    pub start: usize,
    pub end: usize,
    pub rhs: OpExpr,
}

/// Which redex to contract when a word has several.
#[allow(clippy::large_enum_variant)]
pub enum Strategy {
    Leftmost,
    Random(ChaCha8Rng),
}

/// The unique normal form of `t` under the rules of `spec`.
pub fn normal_form(t: &OpExpr, spec: &RingSpec) -> Result<OpExpr> {
    normal_form_with(t, spec, &mut Strategy::Leftmost)
}

pub fn normal_form_with(t: &OpExpr, spec: &RingSpec, strategy: &mut Strategy) -> Result<OpExpr> {
    spec.check(t)?;
    let rules = Rules::new(spec);
    let mut pending: BTreeMap<OpWord, Rat> = t.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    let mut done = OpExpr::zero();
    while let Some((w, c)) = pending.pop_last() {
        let redex = match strategy {
            Strategy::Leftmost => (0..w.len()).find_map(|i| rules.redex_at(&w, i)),
            Strategy::Random(rng) => {
                let mut all = rules.redexes(&w);
                if all.is_empty() {
                    None
                } else {
                    let k = rng.gen_range(0..all.len());
                    Some(all.swap_remove(k))
                }
            }
        };
        let Some(r) = redex else {
            done.add_term(w, c);
            continue;
        };
        let prefix = w.slice(0, r.start);
        let suffix = w.slice(r.end, w.len());
        for (m, a) in r.rhs.terms() {
            let word = prefix.concat(m).concat(&suffix);
            let entry = pending.entry(word.clone()).or_insert_with(Rat::zero);
            *entry += &c * a;
            if entry.is_zero() {
                pending.remove(&word);
            }
        }
    }
    Ok(done)
}

pub fn is_normal(t: &OpExpr, spec: &RingSpec) -> Result<bool> {
    spec.check(t)?;
    let rules = Rules::new(spec);
    Ok(t.terms().all(|(w, _)| rules.redexes(w).is_empty()))
}
