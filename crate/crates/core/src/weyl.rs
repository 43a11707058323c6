//! The integro-differential Weyl algebra `A₁(∂, ℓ)` at weight zero.
//!
//! Elements are stored over one of three bases:
//!
//! * `B1`: `x^i ∂^k`, `x^i ℓ^j` (`j > 0`) and `x^i ℓ^j e ∂^k`;
//! * `B2`: `x^i ℓ^j ∂^k` for all `i, j, k ≥ 0`, the working basis;
//! * `B3`: `x^i ∂^k`, `x^i ℓ x^j` and `x^i ℓ x^j ∂^k` (`k > 0`).
//!
//! Multiplication is done in `B2` by skew-polynomial commutation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::opring::{is_normal, OpExpr, OpLetter, RingSpec, Variety};
use crate::poly::Mono;
use crate::rat::{self, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    B1,
    B2,
    B3,
}

impl Basis {
    pub fn name(&self) -> &'static str {
        match self {
            Basis::B1 => "b1",
            Basis::B2 => "b2",
            Basis::B3 => "b3",
        }
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "b1" => Ok(Basis::B1),
            "b2" => Ok(Basis::B2),
            "b3" => Ok(Basis::B3),
            other => Err(Error::Invalid(format!("unknown basis `{other}` (expected b1, b2 or b3)"))),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A basis word, tagged by sub-basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WeylWord {
    /// `x^i ∂^k`
    Diff { i: u32, k: u32 },
    /// `x^i ℓ^j`, `j > 0`
    Right { i: u32, j: u32 },
    /// `x^i ℓ^j e ∂^k`
    Eval { i: u32, j: u32, k: u32 },
    /// `x^i ℓ^j ∂^k`
    Triple { i: u32, j: u32, k: u32 },
    /// `x^i ℓ x^j`
    Mid { i: u32, j: u32 },
    /// `x^i ℓ x^j ∂^k`, `k > 0`
    Rung { i: u32, j: u32, k: u32 },
}

impl WeylWord {
    /// Whether the word is a member of `basis`.
    pub fn in_basis(&self, basis: Basis) -> bool {
        match (self, basis) {
            (WeylWord::Diff { .. }, Basis::B1 | Basis::B3) => true,
            (WeylWord::Right { j, .. }, Basis::B1) => *j > 0,
            (WeylWord::Eval { .. }, Basis::B1) => true,
            (WeylWord::Triple { .. }, Basis::B2) => true,
            (WeylWord::Mid { .. }, Basis::B3) => true,
            (WeylWord::Rung { k, .. }, Basis::B3) => *k > 0,
            _ => false,
        }
    }

    /// Total number of generators in the word.
    pub fn degree(&self) -> u32 {
        match *self {
            WeylWord::Diff { i, k } => i + k,
            WeylWord::Right { i, j } => i + j,
            WeylWord::Eval { i, j, k } => i + j + 1 + k,
            WeylWord::Triple { i, j, k } => i + j + k,
            WeylWord::Mid { i, j } => i + 1 + j,
            WeylWord::Rung { i, j, k } => i + 1 + j + k,
        }
    }

    fn sort_key(&self) -> (u32, u32, u32, u32) {
        let (i, j, k) = match *self {
            WeylWord::Diff { i, k } => (i, 0, k),
            WeylWord::Right { i, j } => (i, j, 0),
            WeylWord::Mid { i, j } => (i, j, 0),
            WeylWord::Eval { i, j, k } | WeylWord::Triple { i, j, k } | WeylWord::Rung { i, j, k } => (i, j, k),
        };
        (self.degree(), i, j, k)
    }

    /// Letters with exponents, e.g. `["x^2", "l^1", "D^1"]`.
    pub fn letters(&self) -> Vec<String> {
        fn pow(out: &mut Vec<String>, name: &str, e: u32) {
            if e > 0 {
                out.push(format!("{name}^{e}"));
            }
        }
        let mut out = Vec::new();
        match *self {
            WeylWord::Diff { i, k } => {
                pow(&mut out, "x", i);
                pow(&mut out, "D", k);
            }
            WeylWord::Right { i, j } => {
                pow(&mut out, "x", i);
                pow(&mut out, "l", j);
            }
            WeylWord::Eval { i, j, k } => {
                pow(&mut out, "x", i);
                pow(&mut out, "l", j);
                out.push("E".into());
                pow(&mut out, "D", k);
            }
            WeylWord::Triple { i, j, k } => {
                pow(&mut out, "x", i);
                pow(&mut out, "l", j);
                pow(&mut out, "D", k);
            }
            WeylWord::Mid { i, j } => {
                pow(&mut out, "x", i);
                pow(&mut out, "l", 1);
                pow(&mut out, "x", j);
            }
            WeylWord::Rung { i, j, k } => {
                pow(&mut out, "x", i);
                pow(&mut out, "l", 1);
                pow(&mut out, "x", j);
                pow(&mut out, "D", k);
            }
        }
        out
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters()
            .into_iter()
            .map(|l| l.strip_suffix("^1").map(str::to_string).unwrap_or(l))
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// An element of `A₁(∂, ℓ)` over one basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElt {
    basis: Basis,
    terms: BTreeMap<WeylWord, Rat>,
}

impl WeylElt {
    pub fn zero(basis: Basis) -> Self {
        WeylElt { basis, terms: BTreeMap::new() }
    }

    pub fn word(basis: Basis, w: WeylWord) -> Result<Self> {
        WeylElt::from_terms(basis, [(w, Rat::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (WeylWord, Rat)>>(basis: Basis, terms: I) -> Result<Self> {
        let mut out = WeylElt::zero(basis);
        for (w, c) in terms {
            if !w.in_basis(basis) {
                return Err(Error::Basis(format!("{w} is not a word of basis {basis}")));
            }
            out.add_term(w, c);
        }
        Ok(out)
    }

    /// `x^i ℓ^j ∂^k` in `B2`.
    pub fn triple(i: u32, j: u32, k: u32) -> Self {
        let mut out = WeylElt::zero(Basis::B2);
        out.add_term(WeylWord::Triple { i, j, k }, Rat::one());
        out
    }

    pub fn one() -> Self {
        WeylElt::triple(0, 0, 0)
    }

    pub fn x() -> Self {
        WeylElt::triple(1, 0, 0)
    }

    pub fn ell() -> Self {
        WeylElt::triple(0, 1, 0)
    }

    pub fn der() -> Self {
        WeylElt::triple(0, 0, 1)
    }

    /// `e = 1 − ℓ∂` in `B2`.
    pub fn evaluation() -> Self {
        WeylElt::one().sub(&WeylElt::triple(0, 1, 1)).expect("same basis")
    }

    fn add_term(&mut self, w: WeylWord, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylWord, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &WeylWord) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> WeylElt {
        let mut out = WeylElt::zero(self.basis);
        for (w, a) in &self.terms {
            out.add_term(*w, a * c);
        }
        out
    }

    pub fn add(&self, other: &WeylElt) -> Result<WeylElt> {
        same_basis(self, other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &WeylElt) -> Result<WeylElt> {
        self.add(&other.scale(&-Rat::one()))
    }

    /// Terms in print order: total degree, then the exponents, descending.
    pub fn ordered_terms(&self) -> Vec<(&WeylWord, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| b.sort_key().cmp(&a.sort_key()).then_with(|| b.cmp(a)));
        v
    }
}

fn same_basis(a: &WeylElt, b: &WeylElt) -> Result<()> {
    if a.basis == b.basis {
        Ok(())
    } else {
        Err(Error::Basis(format!("basis mismatch: {} and {}", a.basis, b.basis)))
    }
}

fn require_b2(a: &WeylElt) -> Result<()> {
    if a.basis == Basis::B2 {
        Ok(())
    } else {
        Err(Error::Basis(format!("multiplication expects basis b2, got {}", a.basis)))
    }
}

/// `ℓ^j x^s = Σ c · x^m ℓ^r`, returned as `(m, r) → c`.
fn ell_pow_times_x(j: u32, s: u32) -> BTreeMap<(u32, u32), Rat> {
    let mut cur: BTreeMap<(u32, u32), Rat> = BTreeMap::from([((s, 0), Rat::one())]);
    for _ in 0..j {
        let mut next: BTreeMap<(u32, u32), Rat> = BTreeMap::new();
        for ((e, r), c) in cur {
            // ℓ x^e = Σ_m (−1)^(e−m) e!/m! x^m ℓ^(e−m+1)
            for m in 0..=e {
                let sign = if (e - m) % 2 == 0 { Rat::one() } else { -Rat::one() };
                let coeff = sign * rat::falling(e, e - m);
                *next.entry((m, r + e - m + 1)).or_insert_with(Rat::zero) += &c * coeff;
            }
        }
        next.retain(|_, c| !c.is_zero());
        cur = next;
    }
    cur
}

fn mul_triples(lhs: (u32, u32, u32), rhs: (u32, u32, u32), out: &mut WeylElt, scale: &Rat) {
    let (i, j, k) = lhs;
    let (a, b, c) = rhs;
    for m in 0..=k.min(a) {
        // ∂^k x^a = Σ_m C(k,m) a!/(a−m)! x^(a−m) ∂^(k−m)
        let c1 = rat::binomial(k, m) * rat::falling(a, m);
        let u = k - m;
        for ((mx, r), c2) in ell_pow_times_x(j, a - m) {
            let word = if u >= b {
                WeylWord::Triple { i: i + mx, j: r, k: u - b + c }
            } else {
                WeylWord::Triple { i: i + mx, j: r + b - u, k: c }
            };
            out.add_term(word, scale * &c1 * c2);
        }
    }
}

/// Product of two `B2` elements.
pub fn weyl_mul(a: &WeylElt, b: &WeylElt) -> Result<WeylElt> {
    require_b2(a)?;
    require_b2(b)?;
    let mut out = WeylElt::zero(Basis::B2);
    for (wa, ca) in &a.terms {
        for (wb, cb) in &b.terms {
            let (WeylWord::Triple { i, j, k }, WeylWord::Triple { i: p, j: q, k: r }) = (wa, wb) else {
                unreachable!("b2 holds triples only");
            };
            mul_triples((*i, *j, *k), (*p, *q, *r), &mut out, &(ca * cb));
        }
    }
    Ok(out)
}

/// `[a, b] = ab − ba` in `B2`.
pub fn commutator(a: &WeylElt, b: &WeylElt) -> Result<WeylElt> {
    weyl_mul(a, b)?.sub(&weyl_mul(b, a)?)
}

/// Power of a `B2` element.
pub fn weyl_pow(a: &WeylElt, n: u32) -> Result<WeylElt> {
    (0..n).try_fold(WeylElt::one(), |acc, _| weyl_mul(&acc, a))
}

fn to_b2(a: &WeylElt) -> WeylElt {
    let mut out = WeylElt::zero(Basis::B2);
    let t = |i, j, k| WeylWord::Triple { i, j, k };
    for (w, c) in &a.terms {
        match *w {
            WeylWord::Triple { .. } => out.add_term(*w, c.clone()),
            WeylWord::Diff { i, k } => out.add_term(t(i, 0, k), c.clone()),
            WeylWord::Right { i, j } => out.add_term(t(i, j, 0), c.clone()),
            WeylWord::Eval { i, j, k } => {
                out.add_term(t(i, j, k), c.clone());
                out.add_term(t(i, j + 1, k + 1), -c.clone());
            }
            WeylWord::Mid { i, j } | WeylWord::Rung { i, j, k: 0 } => mid_to_b2(i, j, 0, c, &mut out),
            WeylWord::Rung { i, j, k } => mid_to_b2(i, j, k, c, &mut out),
        }
    }
    out
}

/// `x^i ℓ x^j ∂^k = Σ_m (−1)^(j−m) j!/m! x^(i+m) ℓ^(j−m+1) ∂^k`
fn mid_to_b2(i: u32, j: u32, k: u32, c: &Rat, out: &mut WeylElt) {
    for m in 0..=j {
        let sign = if (j - m).is_multiple_of(2) { Rat::one() } else { -Rat::one() };
        let coeff = sign * rat::falling(j, j - m);
        out.add_term(WeylWord::Triple { i: i + m, j: j - m + 1, k }, c * coeff);
    }
}

fn b2_to_b1(a: &WeylElt) -> WeylElt {
    let mut out = WeylElt::zero(Basis::B1);
    for (w, c) in &a.terms {
        let WeylWord::Triple { i, j, k } = *w else { unreachable!("b2 holds triples only") };
        let ell = |e: u32| if e == 0 { WeylWord::Diff { i, k: 0 } } else { WeylWord::Right { i, j: e } };
        match (j, k) {
            (0, _) => out.add_term(WeylWord::Diff { i, k }, c.clone()),
            (_, 0) => out.add_term(WeylWord::Right { i, j }, c.clone()),
            _ => {
                let head = if j >= k { ell(j - k) } else { WeylWord::Diff { i, k: k - j } };
                out.add_term(head, c.clone());
                for m in 1..=j.min(k) {
                    out.add_term(WeylWord::Eval { i, j: j - m, k: k - m }, -c.clone());
                }
            }
        }
    }
    out
}

fn b2_to_b3(a: &WeylElt) -> WeylElt {
    let mut out = WeylElt::zero(Basis::B3);
    for (w, c) in &a.terms {
        let WeylWord::Triple { i, j, k } = *w else { unreachable!("b2 holds triples only") };
        if j == 0 {
            out.add_term(WeylWord::Diff { i, k }, c.clone());
            continue;
        }
        // Σ_{m<j} (−1)^m / (m! (j−m−1)!) x^(i+j−m−1) ℓ x^m ∂^k
        for m in 0..j {
            let sign = if m % 2 == 0 { Rat::one() } else { -Rat::one() };
            let coeff = sign / (rat::factorial(m) * rat::factorial(j - m - 1));
            let (ii, jj) = (i + j - m - 1, m);
            let word = if k == 0 { WeylWord::Mid { i: ii, j: jj } } else { WeylWord::Rung { i: ii, j: jj, k } };
            out.add_term(word, c * coeff);
        }
    }
    out
}

/// Re-expresses `a` over the basis `to`; exact in both directions.
pub fn convert(a: &WeylElt, to: Basis) -> WeylElt {
    if a.basis == to {
        return a.clone();
    }
    let b2 = to_b2(a);
    match to {
        Basis::B1 => b2_to_b1(&b2),
        Basis::B2 => b2,
        Basis::B3 => b2_to_b3(&b2),
    }
}

/// The differential Rota-Baxter operator with the same `B3` word, `ℓ ↦ ⨛`.
pub fn to_opexpr(a: &WeylElt) -> OpExpr {
    let b3 = convert(a, Basis::B3);
    let x = |e: u32| OpLetter::Coeff(Mono::new(e, 0));
    let ders = |k: u32| std::iter::repeat_n(OpLetter::Der, k as usize);
    let mut out = OpExpr::zero();
    for (w, c) in &b3.terms {
        let letters: Vec<OpLetter> = match *w {
            WeylWord::Diff { i, k } => std::iter::once(x(i)).chain(ders(k)).collect(),
            WeylWord::Mid { i, j } => vec![x(i), OpLetter::VInt, x(j)],
            WeylWord::Rung { i, j, k } => [x(i), OpLetter::VInt, x(j)].into_iter().chain(ders(k)).collect(),
            _ => unreachable!("b3 words only"),
        };
        out = &out + &OpExpr::product(&letters).scale(c);
    }
    out
}

/// Inverse of [`to_opexpr`]; `t` must be a differential Rota-Baxter normal
/// form over `k[x]`.
pub fn from_opexpr(t: &OpExpr) -> Result<WeylElt> {
    let spec = RingSpec::standard(Variety::Drb);
    if !is_normal(t, &spec)? {
        return Err(Error::NotNormal(t.to_string()));
    }
    let mut out = WeylElt::zero(Basis::B3);
    for (w, c) in t.terms() {
        let bad = || Error::NotNormal(w.to_string());
        let (i, rest) = split_x(w.letters());
        let word = match rest {
            [OpLetter::VInt, tail @ ..] => {
                let (j, ds) = split_x(tail);
                match count_ders(ds).ok_or_else(bad)? {
                    0 => WeylWord::Mid { i, j },
                    k => WeylWord::Rung { i, j, k },
                }
            }
            ds => WeylWord::Diff { i, k: count_ders(ds).ok_or_else(bad)? },
        };
        out.add_term(word, c.clone());
    }
    Ok(out)
}

fn split_x(ls: &[OpLetter]) -> (u32, &[OpLetter]) {
    match ls {
        [OpLetter::Coeff(m), tail @ ..] => (m.x, tail),
        _ => (0, ls),
    }
}

fn count_ders(ls: &[OpLetter]) -> Option<u32> {
    ls.iter().all(|l| *l == OpLetter::Der).then_some(ls.len() as u32)
}

impl fmt::Display for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.ordered_terms().into_iter().enumerate() {
            let is_one = matches!(w, WeylWord::Diff { i: 0, k: 0 } | WeylWord::Triple { i: 0, j: 0, k: 0 });
            crate::poly::write_signed_term(f, n == 0, c, |f| write!(f, "{w}"), is_one)?;
        }
        Ok(())
    }
}
