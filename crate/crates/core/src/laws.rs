//! Laws of operated algebras: homogeneous decomposition, polarization,
//! instances, and translation of standard laws into operator relators.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::opring::{OpExpr, OpLetter, RingSpec};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::structure::CoeffStructure;
use crate::terms::{
    abelianize, comm_embed, star_pattern, substitute, substitute_expr, BracketWord, LawExpr, Letter, Mode,
    Monomial, OpLabel, Symbol, Var,
};

/// Largest degree [`polarize_var`] accepts (`8!` permutations).
pub const MAX_POLARIZATION_DEGREE: usize = 8;

/// Splits `l` into parts homogeneous in `y`, by degree.
pub fn homog_decomp(l: &LawExpr, y: &Var) -> Vec<(usize, LawExpr)> {
    let mut parts: BTreeMap<usize, LawExpr> = BTreeMap::new();
    for (m, c) in l.terms() {
        parts
            .entry(m.deg_in(y))
            .or_insert_with(|| LawExpr::zero(l.mode()))
            .add_term(m.clone(), c.clone());
    }
    if parts.is_empty() {
        return vec![(0, l.clone())];
    }
    parts.into_iter().collect()
}

/// `y#1, …, y#n`, checked to be absent from `l`.
pub fn fresh_vars(l: &LawExpr, y: &Var, n: usize) -> Result<Vec<Var>> {
    let used = l.vars();
    let fresh: Vec<Var> = (1..=n).map(|i| Var::new(format!("{}#{i}", y.name()))).collect();
    if let Some(clash) = fresh.iter().find(|v| used.contains(v)) {
        return Err(Error::Law(format!("fresh variable {clash} already occurs")));
    }
    Ok(fresh)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Polarization of `l` in `y` with the given fresh variables:
/// `Σ_τ Σ_i c_i q_i[y_τ(1), …, y_τ(n)]` where `★_i` receives `y_τ(i)`.
pub fn polarize_var(l: &LawExpr, y: &Var, fresh: &[Var]) -> Result<LawExpr> {
    let n = l
        .homogeneous_degree(y)
        .ok_or_else(|| Error::Law(format!("law is not homogeneous in {y}")))?;
    if n > MAX_POLARIZATION_DEGREE {
        return Err(Error::PolarizationTooLarge(n));
    }
    if fresh.len() != n {
        return Err(Error::Law(format!("degree {n} in {y} needs {n} fresh variables, got {}", fresh.len())));
    }
    let used = l.vars();
    let distinct: BTreeSet<&Var> = fresh.iter().collect();
    if distinct.len() != fresh.len() || fresh.iter().any(|v| used.contains(v)) {
        return Err(Error::Law("fresh variables must be distinct and absent from the law".into()));
    }
    if n == 0 {
        return Ok(l.clone());
    }
    if l.mode() == Mode::Commutative {
        return abelianize(&polarize_var(&comm_embed(l)?, y, fresh)?);
    }
    let perms = permutations(n);
    let mut out = LawExpr::zero(l.mode());
    for (m, c) in l.terms() {
        let q = star_pattern(&BracketWord::new(l.mode(), m.clone()), y)?;
        for tau in &perms {
            let bindings: BTreeMap<Symbol, LawExpr> = (0..n)
                .map(|i| (Symbol::Star(i + 1), LawExpr::var(l.mode(), fresh[tau[i]].name())))
                .collect();
            out = out.add(&substitute(&q.body, l.mode(), &bindings)?.scale(c));
        }
    }
    Ok(out)
}

/// Full polarization: every variable of degree at least two is polarized
/// in turn (natural variable order) with fresh names `y#1, y#2, …`.
pub fn polarize(l: &LawExpr) -> Result<LawExpr> {
    let vars = l.vars();
    for y in &vars {
        match l.homogeneous_degree(y) {
            None => return Err(Error::Law(format!("law is not homogeneous in {y}; decompose it first"))),
            Some(n) if n > MAX_POLARIZATION_DEGREE => return Err(Error::PolarizationTooLarge(n)),
            _ => {}
        }
    }
    let mut cur = l.clone();
    for y in &vars {
        let n = cur.homogeneous_degree(y).unwrap_or(0);
        if n >= 2 {
            let fresh = fresh_vars(&cur, y, n)?;
            cur = polarize_var(&cur, y, &fresh)?;
        }
    }
    Ok(cur)
}

/// Polarizations of all components of `l` that are homogeneous in every
/// variable; the components are split off one variable at a time in
/// natural variable order.
pub fn polarize_components(l: &LawExpr) -> Result<Vec<LawExpr>> {
    let mut parts = vec![l.clone()];
    for y in &l.vars() {
        parts = parts
            .iter()
            .flat_map(|p| homog_decomp(p, y).into_iter().map(|(_, part)| part))
            .filter(|p| !p.is_zero())
            .collect();
    }
    parts.iter().map(polarize).collect()
}

/// Collapses variables according to `collapse`, e.g. all `y#i ↦ y`.
pub fn centralize(l: &LawExpr, collapse: &BTreeMap<Var, Var>) -> LawExpr {
    l.rename(collapse)
}

/// The instance `l[θ]` in the term algebra.
pub fn instance_terms(l: &LawExpr, theta: &BTreeMap<Var, LawExpr>) -> Result<LawExpr> {
    if let Some(missing) = l.vars().iter().find(|v| !theta.contains_key(*v)) {
        return Err(Error::Law(format!("no value for variable {missing}")));
    }
    let bindings = theta.iter().map(|(v, e)| (Symbol::Var(v.clone()), e.clone())).collect();
    substitute_expr(l, &bindings)
}

/// The operator maps of a coefficient structure: `D` is the derivation and
/// `I` the integral.
pub fn structure_ops(s: &CoeffStructure) -> impl Fn(&OpLabel, &Poly) -> Result<Poly> + '_ {
    move |label, p| match label.name() {
        "D" => Ok(s.derivation(p)),
        "I" => Ok(s.integral(p)),
        other => Err(Error::Law(format!("no operator for label {other} in the coefficient algebra"))),
    }
}

/// The instance `l[θ]` in an operated algebra of polynomials whose
/// operators are given by `ops`.
pub fn instance_poly(
    l: &LawExpr,
    theta: &BTreeMap<Var, Poly>,
    ops: &dyn Fn(&OpLabel, &Poly) -> Result<Poly>,
) -> Result<Poly> {
    let mut out = Poly::zero();
    for (m, c) in l.terms() {
        out += &eval_monomial(m, theta, ops)?.scale(c);
    }
    Ok(out)
}

fn eval_monomial(
    m: &Monomial,
    theta: &BTreeMap<Var, Poly>,
    ops: &dyn Fn(&OpLabel, &Poly) -> Result<Poly>,
) -> Result<Poly> {
    let mut acc = Poly::one();
    for letter in m.letters() {
        let value = match letter {
            Letter::Var(v) => theta.get(v).cloned().ok_or_else(|| Error::Law(format!("no value for variable {v}")))?,
            Letter::Star(j) => return Err(Error::Law(format!("star *{j} in a law instance"))),
            Letter::Bracket(w, inner) => ops(w, &eval_monomial(inner, theta, ops)?)?,
        };
        acc = &acc * &value;
    }
    Ok(acc)
}

/// A multilinear commutative law with a distinguished argument variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardLaw {
    expr: LawExpr,
    main_var: Var,
    params: Vec<Var>,
}

/// Values of the parameters of a standard law.
pub type Assignment = BTreeMap<Var, Poly>;

impl StandardLaw {
    pub fn new(expr: LawExpr, main_var: Var) -> Result<Self> {
        if expr.mode() != Mode::Commutative {
            return Err(Error::Law("standard laws are commutative".into()));
        }
        if !expr.is_multilinear() {
            return Err(Error::Law(format!("law `{expr}` is not multilinear")));
        }
        if expr.terms().any(|(m, _)| m.deg_in(&main_var) != 1) {
            return Err(Error::Law(format!("argument {main_var} must occur in every monomial")));
        }
        let params = expr.vars().into_iter().filter(|v| *v != main_var).collect();
        Ok(StandardLaw { expr, main_var, params })
    }

    pub fn expr(&self) -> &LawExpr {
        &self.expr
    }

    pub fn main_var(&self) -> &Var {
        &self.main_var
    }

    pub fn params(&self) -> &[Var] {
        &self.params
    }

    /// `⌊fg⌋ − ⌊f⌋g − f⌊g⌋ − λ⌊f⌋⌊g⌋` with `g = y0`, `f = y1`.
    pub fn leibniz(weight: &Rat) -> Self {
        let (f, g, d) = (v("y1"), v("y0"), OpLabel::der());
        let expr = f
            .mul(&g)
            .bracket(&d)
            .sub(&f.bracket(&d).mul(&g))
            .sub(&f.mul(&g.bracket(&d)))
            .sub(&f.bracket(&d).mul(&g.bracket(&d)).scale(weight));
        StandardLaw::new(expr, Var::indexed(0)).expect("well-formed law")
    }

    /// `(∫f)(∫g) − ∫f∫g − ∫g∫f − λ∫fg` with `g = y0`, `f = y1`.
    pub fn rota_baxter(weight: &Rat) -> Self {
        let (f, g, i) = (v("y1"), v("y0"), OpLabel::int());
        let expr = f
            .bracket(&i)
            .mul(&g.bracket(&i))
            .sub(&f.mul(&g.bracket(&i)).bracket(&i))
            .sub(&g.mul(&f.bracket(&i)).bracket(&i))
            .sub(&f.mul(&g).bracket(&i).scale(weight));
        StandardLaw::new(expr, Var::indexed(0)).expect("well-formed law")
    }

    /// `∂∫g − g`.
    pub fn section() -> Self {
        let g = v("y0");
        let expr = g.bracket(&OpLabel::int()).bracket(&OpLabel::der()).sub(&g);
        StandardLaw::new(expr, Var::indexed(0)).expect("well-formed law")
    }

    /// Integration by parts, `f∫g − ∫f'∫g − ∫fg − λ∫f'g` with `g = y0`.
    pub fn integration_by_parts(weight: &Rat) -> Self {
        let (f, g, d, i) = (v("y1"), v("y0"), OpLabel::der(), OpLabel::int());
        let df = f.bracket(&d);
        let expr = f
            .mul(&g.bracket(&i))
            .sub(&df.mul(&g.bracket(&i)).bracket(&i))
            .sub(&f.mul(&g).bracket(&i))
            .sub(&df.mul(&g).bracket(&i).scale(weight));
        StandardLaw::new(expr, Var::indexed(0)).expect("well-formed law")
    }

    /// Multiplicativity of the evaluation in the form
    /// `∫fg' − fg + ∫f'g + λ∫f'g' + e(f)e(g)` with `e(y) = y − ∫∂y`.
    pub fn evaluation(weight: &Rat) -> Self {
        let (f, g, d, i) = (v("y1"), v("y0"), OpLabel::der(), OpLabel::int());
        let (df, dg) = (f.bracket(&d), g.bracket(&d));
        let ev = |y: &LawExpr| y.sub(&y.bracket(&d).bracket(&i));
        let expr = f
            .mul(&dg)
            .bracket(&i)
            .sub(&f.mul(&g))
            .add(&df.mul(&g).bracket(&i))
            .add(&df.mul(&dg).bracket(&i).scale(weight))
            .add(&ev(&f).mul(&ev(&g)));
        StandardLaw::new(expr, Var::indexed(0)).expect("well-formed law")
    }
}

fn v(name: &str) -> LawExpr {
    LawExpr::var(Mode::Commutative, name)
}

/// The induced relator `[l]_𝔞` in the operator ring of `spec`.
pub fn translate_relator(l: &StandardLaw, a: &Assignment, spec: &RingSpec) -> Result<OpExpr> {
    if let Some(missing) = l.params.iter().find(|p| !a.contains_key(*p)) {
        return Err(Error::Law(format!("assignment has no value for {missing}")));
    }
    for p in a.values() {
        spec.coeff().check(p)?;
    }
    let ops = structure_ops(spec.coeff());
    let mut out = OpExpr::zero();
    for (m, c) in l.expr.terms() {
        out = &out + &translate_monomial(m, &l.main_var, a, spec, &ops)?.scale(c);
    }
    Ok(out)
}

fn translate_monomial(
    m: &Monomial,
    y0: &Var,
    a: &Assignment,
    spec: &RingSpec,
    ops: &dyn Fn(&OpLabel, &Poly) -> Result<Poly>,
) -> Result<OpExpr> {
    let (arg, rest): (Vec<&Letter>, Vec<&Letter>) = m.letters().iter().partition(|l| match l {
        Letter::Var(v) => v == y0,
        Letter::Bracket(_, inner) => inner.deg_in(y0) > 0,
        Letter::Star(_) => false,
    });
    let [arg] = arg.as_slice() else {
        return Err(Error::Law(format!("monomial {m} is not linear in {y0}")));
    };
    let rest = Monomial::new(rest.into_iter().cloned().collect());
    let coeff = OpExpr::poly(&eval_monomial(&rest, a, ops)?);
    match arg {
        Letter::Bracket(w, inner) => {
            let letter = match w.name() {
                "D" if spec.variety().has_der() => OpLetter::Der,
                "I" => spec
                    .variety()
                    .integral()
                    .ok_or_else(|| Error::Law(format!("label I has no letter in the {} ring", spec.variety())))?,
                other => return Err(Error::Law(format!("label {other} has no letter in the {} ring", spec.variety()))),
            };
            let tail = translate_monomial(inner, y0, a, spec, ops)?;
            Ok(&(&coeff * &OpExpr::letter(letter)) * &tail)
        }
        _ => Ok(coeff),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opring::{normal_form, Variety};
    use crate::rat::int;

    const NC: Mode = Mode::Noncommutative;
    const C: Mode = Mode::Commutative;

    fn var(mode: Mode, name: &str) -> LawExpr {
        LawExpr::var(mode, name)
    }

    fn collapse_to(y: &str, fresh: &[&str]) -> BTreeMap<Var, Var> {
        fresh.iter().map(|f| (Var::new(*f), Var::new(y))).collect()
    }

    #[test]
    fn decomposition_buckets() {
        let y = var(C, "y");
        let d = OpLabel::der();
        let l = y
            .pow(2)
            .bracket(&d)
            .sub(&y.bracket(&d).mul(&y).scale(&int(2)))
            .add(&y)
            .add(&LawExpr::constant(C, int(3)));
        let parts = homog_decomp(&l, &Var::new("y"));
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], (0, LawExpr::constant(C, int(3))));
        assert_eq!(parts[1], (1, y.clone()));
        assert_eq!(parts[2].0, 2);
        let absent = homog_decomp(&l, &Var::new("z"));
        assert_eq!(absent, vec![(0, l.clone())]);
    }

    #[test]
    fn polarize_nested_bracket() {
        let d = OpLabel::der();
        let y = var(NC, "y");
        let l = y.mul(&y.bracket(&d)).bracket(&d);
        let fresh = [Var::new("y1"), Var::new("y2")];
        let p = polarize_var(&l, &Var::new("y"), &fresh).unwrap();
        let (y1, y2) = (var(NC, "y1"), var(NC, "y2"));
        let want = y1.mul(&y2.bracket(&d)).bracket(&d).add(&y2.mul(&y1.bracket(&d)).bracket(&d));
        assert_eq!(p, want);
        assert_eq!(centralize(&p, &collapse_to("y", &["y1", "y2"])), l.scale(&int(2)));
    }

    #[test]
    fn polarize_commutative_square() {
        let d = OpLabel::der();
        let y = var(C, "y");
        let l = y.pow(2).bracket(&d).sub(&y.bracket(&d).mul(&y).scale(&int(2)));
        let fresh = [Var::new("y1"), Var::new("y2")];
        let p = polarize_var(&l, &Var::new("y"), &fresh).unwrap();
        let (y1, y2) = (var(C, "y1"), var(C, "y2"));
        let want = y1
            .mul(&y2)
            .bracket(&d)
            .scale(&int(2))
            .sub(&y1.bracket(&d).mul(&y2).scale(&int(2)))
            .sub(&y1.mul(&y2.bracket(&d)).scale(&int(2)));
        assert_eq!(p, want);
    }

    #[test]
    fn degree_guard_and_freshness() {
        let y = var(NC, "y");
        let l = y.pow(9);
        let fresh: Vec<Var> = (1..=9).map(|i| Var::new(format!("z{i}"))).collect();
        assert_eq!(polarize_var(&l, &Var::new("y"), &fresh), Err(Error::PolarizationTooLarge(9)));
        let mixed = y.pow(2).add(&y);
        assert!(polarize_var(&mixed, &Var::new("y"), &fresh[..2]).is_err());
        let clash = y.pow(2).mul(&var(NC, "z1"));
        assert!(polarize_var(&clash, &Var::new("y"), &fresh[..2]).is_err());
    }

    #[test]
    fn components_of_mixed_law() {
        let y = var(C, "y");
        let l = y.pow(2).add(&y);
        let parts = polarize_components(&l).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(LawExpr::is_multilinear));
    }

    #[test]
    fn instances_in_k_x() {
        let s = CoeffStructure::point(int(0));
        let ops = structure_ops(&s);
        let theta = BTreeMap::from([(Var::new("y1"), Poly::x_pow(2)), (Var::new("y0"), Poly::x())]);
        let leib = StandardLaw::leibniz(&int(0));
        assert!(instance_poly(leib.expr(), &theta, &ops).unwrap().is_zero());
        let ibp = StandardLaw::integration_by_parts(&int(0));
        for g in [Poly::x(), Poly::x_pow(3), Poly::one()] {
            let theta = BTreeMap::from([(Var::new("y1"), Poly::one()), (Var::new("y0"), g)]);
            assert!(instance_poly(ibp.expr(), &theta, &ops).unwrap().is_zero());
        }
        let bad = var(C, "y0").bracket(&OpLabel::new("P"));
        assert!(instance_poly(&bad, &theta, &ops).is_err());
    }

    #[test]
    fn leibniz_relator() {
        for w in [int(0), int(1), int(-1)] {
            let spec = RingSpec::with_weight(Variety::Diff, w.clone());
            let f = Poly::from_coeffs(&[int(1), int(2), int(3)]);
            let a = BTreeMap::from([(Var::new("y1"), f.clone())]);
            let rel = translate_relator(&StandardLaw::leibniz(&w), &a, &spec).unwrap();
            let df = spec.coeff().derivation(&f);
            let d = OpExpr::letter(OpLetter::Der);
            let want = &(&(&d * &OpExpr::poly(&f)) - &(&OpExpr::poly(&f) * &d))
                - &(&(&OpExpr::poly(&df.scale(&w)) * &d) + &OpExpr::poly(&df));
            assert_eq!(rel, want);
            assert!(normal_form(&rel, &spec).unwrap().is_zero());
        }
    }

    #[test]
    fn relator_needs_assignment() {
        let spec = RingSpec::standard(Variety::Diff);
        assert!(translate_relator(&StandardLaw::leibniz(&int(0)), &BTreeMap::new(), &spec).is_err());
    }
}
