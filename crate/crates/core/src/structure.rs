//! Differential, Rota-Baxter and evaluation structure on `k[x]` and `k[x,ε]`.
//!
//! At weight zero the derivation is `d/dx` and the integral is `∫_a^x` (or
//! `∫_ε^x` for the generic initialization point). At nonzero weight `λ` the
//! derivation is the difference quotient `(f(x+λ) - f(x))/λ` and the integral
//! is the matching summation operator, which together form an
//! integro-differential algebra of weight `λ`; both reduce to the classical
//! operators as `λ → 0`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{self, Mono, Poly};
use crate::rat::{self, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffKind {
    /// `k[x]`
    PolyX,
    /// `k[x,ε]`
    PolyXEps,
}

/// Where the integral vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Init {
    Point(Rat),
    /// `x = ε`; only meaningful on `k[x,ε]`.
    Generic,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffStructure {
    kind: CoeffKind,
    weight: Rat,
    init: Init,
}

impl CoeffStructure {
    pub fn new(kind: CoeffKind, weight: Rat, init: Init) -> Result<Self> {
        if init == Init::Generic && kind == CoeffKind::PolyX {
            return Err(Error::Structure(
                "generic initialization requires the coefficient algebra k[x,eps]".into(),
            ));
        }
        Ok(CoeffStructure { kind, weight, init })
    }

    /// `k[x]` at weight zero with `∫ = ∫_c^x`.
    pub fn point(c: Rat) -> Self {
        CoeffStructure { kind: CoeffKind::PolyX, weight: Rat::zero(), init: Init::Point(c) }
    }

    /// `k[x,ε]` at weight zero with `∫ = ∫_ε^x`.
    pub fn generic() -> Self {
        CoeffStructure { kind: CoeffKind::PolyXEps, weight: Rat::zero(), init: Init::Generic }
    }

    pub fn with_weight(mut self, weight: Rat) -> Self {
        self.weight = weight;
        self
    }

    pub fn kind(&self) -> CoeffKind {
        self.kind
    }

    pub fn weight(&self) -> &Rat {
        &self.weight
    }

    pub fn init(&self) -> &Init {
        &self.init
    }

    pub fn is_generic(&self) -> bool {
        self.init == Init::Generic
    }

    /// Whether `p` lives in this coefficient algebra.
    pub fn admits(&self, p: &Poly) -> bool {
        self.kind == CoeffKind::PolyXEps || !p.has_eps()
    }

    pub fn admits_mono(&self, m: &Mono) -> bool {
        self.kind == CoeffKind::PolyXEps || m.eps == 0
    }

    pub fn check(&self, p: &Poly) -> Result<()> {
        if self.admits(p) {
            Ok(())
        } else {
            Err(Error::Structure(format!("`{p}` contains eps but the coefficient algebra is k[x]")))
        }
    }

    /// The weight-λ derivation.
    pub fn derivation(&self, p: &Poly) -> Poly {
        if self.weight.is_zero() {
            poly::derive(p)
        } else {
            difference_quotient(p, &self.weight)
        }
    }

    /// The Rota-Baxter operator: the unique right inverse of
    /// [`derivation`](Self::derivation) vanishing at the initialization point.
    pub fn integral(&self, p: &Poly) -> Poly {
        let anti = if self.weight.is_zero() {
            antiderivative(p)
        } else {
            summation(p, &self.weight)
        };
        &anti - &self.evaluation(&anti)
    }

    /// `e = 1 - ∫∂`, computed as substitution at the initialization point.
    pub fn evaluation(&self, p: &Poly) -> Poly {
        match &self.init {
            Init::Point(c) => p.at_x(c),
            Init::Generic => p.subst_x(&Poly::eps()),
        }
    }

    /// Inverse of `f ↦ f + λ ∂f`. For the difference model this is the
    /// translation `x ↦ x - λ`.
    pub fn shift_inverse(&self, p: &Poly) -> Poly {
        poly::neumann_inverse(p, &self.weight, |q| self.derivation(q))
    }
}

/// `∫` under structure `s`, rejecting polynomials outside its algebra.
pub fn integrate(p: &Poly, s: &CoeffStructure) -> Result<Poly> {
    s.check(p)?;
    Ok(s.integral(p))
}

/// Evaluation under structure `s`.
pub fn evaluate(p: &Poly, s: &CoeffStructure) -> Result<Poly> {
    s.check(p)?;
    Ok(s.evaluation(p))
}

fn antiderivative(p: &Poly) -> Poly {
    Poly::from_terms(
        p.terms().map(|(m, c)| (Mono::new(m.x + 1, m.eps), c / rat::int(m.x as i64 + 1))),
    )
}

/// `(p(x+λ) - p(x)) / λ`
fn difference_quotient(p: &Poly, weight: &Rat) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        // (x+λ)^n - x^n = Σ_{i<n} C(n,i) λ^(n-i) x^i
        for i in 0..m.x {
            let coeff = rat::binomial(m.x, i) * rat::pow(weight, m.x - i - 1);
            out.add_term(Mono::new(i, m.eps), c * coeff);
        }
    }
    out
}

/// The `F` with `F(0) = 0` and `ΔF = p`, by peeling leading terms.
fn summation(p: &Poly, weight: &Rat) -> Poly {
    let mut out = Poly::zero();
    let mut rest = p.clone();
    while let Some((m, c)) = rest.terms().max_by_key(|(m, _)| (m.x, m.eps)).map(|(m, c)| (*m, c.clone())) {
        let t = Poly::term(c / rat::int(m.x as i64 + 1), Mono::new(m.x + 1, m.eps));
        rest -= &difference_quotient(&t, weight);
        out += &t;
    }
    &out - &out.at_x(&Rat::zero())
}

impl Default for CoeffStructure {
    fn default() -> Self {
        CoeffStructure::point(Rat::zero())
    }
}

impl std::fmt::Display for CoeffStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let alg = match self.kind {
            CoeffKind::PolyX => "k[x]",
            CoeffKind::PolyXEps => "k[x,eps]",
        };
        let init = match &self.init {
            Init::Point(c) => rat::to_short(c),
            Init::Generic => "eps".to_string(),
        };
        write!(f, "{alg}, weight {}, init {init}", rat::to_short(&self.weight))
    }
}

impl CoeffStructure {
    /// The integration constant `e(x)`, a scalar for point initialization.
    pub fn integration_constant(&self) -> Poly {
        self.evaluation(&Poly::x())
    }

    pub fn is_weight_zero(&self) -> bool {
        self.weight.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(&coeffs.iter().map(|&c| int(c)).collect::<Vec<_>>())
    }

    #[test]
    fn generic_requires_eps_algebra() {
        assert!(CoeffStructure::new(CoeffKind::PolyX, int(0), Init::Generic).is_err());
        assert!(CoeffStructure::new(CoeffKind::PolyXEps, int(0), Init::Generic).is_ok());
    }

    #[test]
    fn integrate_examples() {
        let s0 = CoeffStructure::point(int(0));
        assert_eq!(integrate(&Poly::x(), &s0).unwrap(), Poly::x_pow(2).scale(&frac(1, 2)));
        let s1 = CoeffStructure::point(int(1));
        assert_eq!(integrate(&Poly::x(), &s1).unwrap(), Poly::from_coeffs(&[frac(-1, 2), int(0), frac(1, 2)]));
        let g = CoeffStructure::generic();
        for i in 0..4 {
            for j in 0..3 {
                let m = Poly::term(int(1), Mono::new(i, j));
                let want = Poly::from_terms([
                    (Mono::new(i + 1, j), frac(1, i as i64 + 1)),
                    (Mono::new(0, i + 1 + j), frac(-1, i as i64 + 1)),
                ]);
                assert_eq!(integrate(&m, &g).unwrap(), want);
            }
        }
    }

    #[test]
    fn integrate_rejects_eps_in_k_x() {
        assert!(integrate(&Poly::eps(), &CoeffStructure::point(int(0))).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let s0 = CoeffStructure::point(int(0));
        assert_eq!(evaluate(&p(&[3, 0, 1]), &s0).unwrap(), Poly::constant(int(3)));
        let g = CoeffStructure::generic();
        let m = Poly::term(int(1), Mono::new(2, 3));
        assert_eq!(evaluate(&m, &g).unwrap(), Poly::term(int(1), Mono::new(0, 5)));
    }

    #[test]
    fn difference_model_is_section() {
        for w in [int(1), int(-1), frac(1, 2)] {
            let s = CoeffStructure::point(int(2)).with_weight(w.clone());
            let q = p(&[3, -1, 4, 1, -5]);
            assert_eq!(s.derivation(&s.integral(&q)), q);
            // shift then inverse
            assert_eq!(s.shift_inverse(&(&q + &s.derivation(&q).scale(&w))), q);
            assert_eq!(s.shift_inverse(&q), q.translate(&-w));
        }
    }

    #[test]
    fn difference_model_weighted_leibniz() {
        let w = int(-1);
        let s = CoeffStructure::point(int(0)).with_weight(w.clone());
        let f = p(&[1, 2, 0, 3]);
        let g = p(&[-2, 0, 5]);
        let d = |q: &Poly| s.derivation(q);
        let lhs = d(&(&f * &g));
        let rhs = &(&(&d(&f) * &g) + &(&f * &d(&g))) + &(&d(&f) * &d(&g)).scale(&w);
        assert_eq!(lhs, rhs);
    }
}
