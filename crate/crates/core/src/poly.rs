//! Sparse polynomials in `x` and the generic initialization point `ε`.
//!
//! One type serves both coefficient algebras: `k[x]` is the subset with no
//! `ε` exponent. All arithmetic is exact over [`Rat`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rat::{self, Rat};

/// The monomial `x^x · ε^eps`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Mono {
    pub x: u32,
    pub eps: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { x: 0, eps: 0 };

    pub fn new(x: u32, eps: u32) -> Self {
        Mono { x, eps }
    }

    pub fn is_one(&self) -> bool {
        self.x == 0 && self.eps == 0
    }

    pub fn degree(&self) -> u32 {
        self.x + self.eps
    }

    pub fn times(&self, other: &Mono) -> Mono {
        Mono { x: self.x + other.x, eps: self.eps + other.eps }
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pow = |f: &mut fmt::Formatter<'_>, name: &str, e: u32| {
            if e == 1 {
                write!(f, "{name}")
            } else {
                write!(f, "{name}^{e}")
            }
        };
        match (self.x, self.eps) {
            (0, 0) => write!(f, "1"),
            (x, 0) => pow(f, "x", x),
            (0, e) => pow(f, "eps", e),
            (x, e) => {
                pow(f, "x", x)?;
                write!(f, "*")?;
                pow(f, "eps", e)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::term(c, Mono::ONE)
    }

    pub fn x() -> Self {
        Poly::term(Rat::one(), Mono::new(1, 0))
    }

    pub fn eps() -> Self {
        Poly::term(Rat::one(), Mono::new(0, 1))
    }

    pub fn x_pow(n: u32) -> Self {
        Poly::term(Rat::one(), Mono::new(n, 0))
    }

    pub fn term(c: Rat, m: Mono) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Rat)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Coefficients listed from `x^0` upwards, `ε`-free.
    pub fn from_coeffs(coeffs: &[Rat]) -> Self {
        Poly::from_terms(coeffs.iter().enumerate().map(|(i, c)| (Mono::new(i as u32, 0), c.clone())))
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Mono, Rat)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
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

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    /// The constant term (coefficient of `x^0 ε^0`).
    pub fn constant_term(&self) -> Rat {
        self.coeff(&Mono::ONE)
    }

    pub fn has_eps(&self) -> bool {
        self.terms.keys().any(|m| m.eps > 0)
    }

    pub fn has_x(&self) -> bool {
        self.terms.keys().any(|m| m.x > 0)
    }

    /// Degree in `x`, `None` for the zero polynomial.
    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.x).max()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn times_mono(&self, m: &Mono) -> Poly {
        Poly { terms: self.terms.iter().map(|(k, a)| (k.times(m), a.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Substitutes `x := q`, keeping `ε`.
    pub fn subst_x(&self, q: &Poly) -> Poly {
        let mut powers: Vec<Poly> = vec![Poly::one()];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            while powers.len() <= m.x as usize {
                let next = powers.last().unwrap() * q;
                powers.push(next);
            }
            let eps = Mono::new(0, m.eps);
            out += &powers[m.x as usize].times_mono(&eps).scale(c);
        }
        out
    }

    /// Substitutes `ε := q`, keeping `x`.
    pub fn subst_eps(&self, q: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out += &q.pow(m.eps).times_mono(&Mono::new(m.x, 0)).scale(c);
        }
        out
    }

    /// `x := c` for a scalar `c`.
    pub fn at_x(&self, c: &Rat) -> Poly {
        self.subst_x(&Poly::constant(c.clone()))
    }

    /// `x := x + h`.
    pub fn translate(&self, h: &Rat) -> Poly {
        self.subst_x(&(&Poly::x() + &Poly::constant(h.clone())))
    }
}

/// The standard derivation `d/dx`; `ε` is a constant.
pub fn derive(p: &Poly) -> Poly {
    Poly::from_terms(
        p.terms()
            .filter(|(m, _)| m.x > 0)
            .map(|(m, c)| (Mono::new(m.x - 1, m.eps), c * rat::int(m.x as i64))),
    )
}

/// Inverse of the shift `q ↦ q + λ q'` for `' = d/dx`, via the terminating
/// series `Σ_m (-λ)^m p^(m)`.
pub fn shift_inverse(p: &Poly, weight: &Rat) -> Poly {
    neumann_inverse(p, weight, derive)
}

/// `Σ_m (-λ)^m D^m p` for a locally nilpotent `D` lowering `x`-degree.
pub(crate) fn neumann_inverse(p: &Poly, weight: &Rat, d: impl Fn(&Poly) -> Poly) -> Poly {
    let mut out = p.clone();
    if weight.is_zero() {
        return out;
    }
    let step = -weight.clone();
    let mut factor = Rat::one();
    let mut cur = p.clone();
    loop {
        cur = d(&cur);
        if cur.is_zero() {
            break;
        }
        factor *= &step;
        out += &cur.scale(&factor);
    }
    out
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.times(b), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Mono, &Rat)> = self.terms.iter().collect();
        ordered.sort_by_key(|(m, _)| std::cmp::Reverse((m.degree(), m.x)));
        for (n, (m, c)) in ordered.into_iter().enumerate() {
            write_signed_term(f, n == 0, c, |f| write!(f, "{m}"), m.is_one())?;
        }
        Ok(())
    }
}

/// Writes `± c*body` with the usual elisions of unit coefficients.
pub(crate) fn write_signed_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &Rat,
    body: impl FnOnce(&mut fmt::Formatter<'_>) -> fmt::Result,
    body_is_one: bool,
) -> fmt::Result {
    let neg = rat::is_neg(c);
    let abs = if neg { -c.clone() } else { c.clone() };
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if body_is_one {
        return write!(f, "{}", rat::to_short(&abs));
    }
    if !abs.is_one() {
        write!(f, "{}*", rat::to_short(&abs))?;
    }
    body(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(&coeffs.iter().map(|&c| int(c)).collect::<Vec<_>>())
    }

    #[test]
    fn derive_power_rule() {
        assert_eq!(derive(&Poly::x_pow(3)), p(&[0, 0, 3]));
        assert_eq!(derive(&Poly::one()), Poly::zero());
        let x2eps = Poly::term(int(1), Mono::new(2, 1));
        assert_eq!(derive(&x2eps), Poly::term(int(2), Mono::new(1, 1)));
        assert_eq!(derive(&Poly::eps()), Poly::zero());
    }

    #[test]
    fn shift_inverse_examples() {
        assert_eq!(shift_inverse(&Poly::x(), &int(1)), p(&[-1, 1]));
        assert_eq!(shift_inverse(&Poly::x_pow(2), &int(2)), p(&[8, -4, 1]));
        let q = p(&[3, -1, 4, 1]);
        assert_eq!(shift_inverse(&q, &int(0)), q);
    }

    #[test]
    fn shift_inverse_is_two_sided() {
        let q = p(&[3, -1, 4, 1, -5, 9, 2, 6, 5, 3, 5]);
        for w in [int(0), int(1), int(-1), frac(1, 2)] {
            let shift = |r: &Poly| r + &derive(r).scale(&w);
            assert_eq!(shift(&shift_inverse(&q, &w)), q);
            assert_eq!(shift_inverse(&shift(&q), &w), q);
        }
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let a = p(&[1, 2, 3]);
        let d = &a - &a;
        assert!(d.is_zero());
        assert_eq!(d.len(), 0);
    }

    #[test]
    fn substitution() {
        let q = Poly::from_terms([(Mono::new(2, 1), int(1)), (Mono::new(0, 0), int(3))]);
        assert_eq!(q.at_x(&int(2)), Poly::from_terms([(Mono::new(0, 1), int(4)), (Mono::ONE, int(3))]));
        assert_eq!(q.subst_x(&Poly::eps()), Poly::from_terms([(Mono::new(0, 3), int(1)), (Mono::ONE, int(3))]));
        assert_eq!(q.subst_eps(&Poly::constant(int(0))), Poly::constant(int(3)));
        assert_eq!(p(&[0, 0, 1]).translate(&int(1)), p(&[1, 2, 1]));
    }

    #[test]
    fn display() {
        let q = Poly::from_terms([(Mono::new(2, 0), frac(3, 2)), (Mono::new(0, 1), int(-1))]);
        assert_eq!(q.to_string(), "3/2*x^2 - eps");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(p(&[-1, 1]).to_string(), "x - 1");
    }
}
