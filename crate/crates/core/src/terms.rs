//! Ω-decorated bracket words and their linear combinations.
//!
//! A [`Monomial`] is a product of letters, where a letter is a variable, a
//! placeholder star `★_j`, or a bracket `⌊w⌋_ω` around a nested monomial.
//! In [`Mode::Commutative`] the letters of every (nested) monomial are kept
//! sorted, which gives each commutative word a unique representative.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

/// An operator label `ω ∈ Ω`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpLabel(String);

impl OpLabel {
    pub fn new(name: impl Into<String>) -> Self {
        OpLabel(name.into())
    }

    /// The derivation label `D`.
    pub fn der() -> Self {
        OpLabel::new("D")
    }

    /// The integral label `I`.
    pub fn int() -> Self {
        OpLabel::new("I")
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Commutative,
    Noncommutative,
}

/// A law variable. Ordered naturally, so `y2 < y10`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Var(String);

impl Var {
    pub fn new(name: impl Into<String>) -> Self {
        Var(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// `y0`, `y1`, ... as used for standard laws.
    pub fn indexed(i: usize) -> Self {
        Var(format!("y{i}"))
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        natural_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for ((da, sa), (db, sb)) in ca.iter().zip(cb.iter()) {
        let ord = if *da && *db {
            let ta = sa.trim_start_matches('0');
            let tb = sb.trim_start_matches('0');
            ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb)).then_with(|| sa.len().cmp(&sb.len()))
        } else {
            sa.cmp(sb)
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len())
}

/// Something a substitution can bind.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Var(Var),
    Star(usize),
}

/// Variables sort before stars, stars before brackets; brackets compare by
/// label and then contents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Var(Var),
    Star(usize),
    Bracket(OpLabel, Monomial),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<Letter>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Monomial(letters)
    }

    pub fn var(name: &str) -> Self {
        Monomial(vec![Letter::Var(Var::new(name))])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        let mut letters = self.0.clone();
        letters.extend(other.0.iter().cloned());
        Monomial(letters)
    }

    pub fn bracket(&self, label: &OpLabel) -> Monomial {
        Monomial(vec![Letter::Bracket(label.clone(), self.clone())])
    }

    /// Canonical form for `mode`: letters sorted at every depth when commutative.
    pub fn normalized(&self, mode: Mode) -> Monomial {
        let mut letters: Vec<Letter> = self
            .0
            .iter()
            .map(|l| match l {
                Letter::Bracket(w, inner) => Letter::Bracket(w.clone(), inner.normalized(mode)),
                other => other.clone(),
            })
            .collect();
        if mode == Mode::Commutative {
            letters.sort();
        }
        Monomial(letters)
    }

    /// Occurrences of `y` at all nesting depths.
    pub fn deg_in(&self, y: &Var) -> usize {
        self.0
            .iter()
            .map(|l| match l {
                Letter::Var(v) => usize::from(v == y),
                Letter::Star(_) => 0,
                Letter::Bracket(_, inner) => inner.deg_in(y),
            })
            .sum()
    }

    pub fn total_deg(&self) -> usize {
        self.0
            .iter()
            .map(|l| match l {
                Letter::Var(_) => 1,
                Letter::Star(_) => 0,
                Letter::Bracket(_, inner) => inner.total_deg(),
            })
            .sum()
    }

    pub fn depth(&self) -> usize {
        self.0
            .iter()
            .map(|l| match l {
                Letter::Bracket(_, inner) => 1 + inner.depth(),
                _ => 0,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        for l in &self.0 {
            match l {
                Letter::Var(v) => {
                    out.insert(v.clone());
                }
                Letter::Star(_) => {}
                Letter::Bracket(_, inner) => inner.collect_vars(out),
            }
        }
    }

    pub fn collect_stars(&self, out: &mut Vec<usize>) {
        for l in &self.0 {
            match l {
                Letter::Star(j) => out.push(*j),
                Letter::Bracket(_, inner) => inner.collect_stars(out),
                Letter::Var(_) => {}
            }
        }
    }

    pub fn collect_labels(&self, out: &mut BTreeSet<OpLabel>) {
        for l in &self.0 {
            if let Letter::Bracket(w, inner) = l {
                out.insert(w.clone());
                inner.collect_labels(out);
            }
        }
    }

    /// Replaces the occurrences of `y` by `★_{next}, ★_{next+1}, ...` in
    /// depth-first left-to-right order.
    fn mark_stars(&self, y: &Var, next: &mut usize) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|l| match l {
                    Letter::Var(v) if v == y => {
                        *next += 1;
                        Letter::Star(*next)
                    }
                    Letter::Bracket(w, inner) => Letter::Bracket(w.clone(), inner.mark_stars(y, next)),
                    other => other.clone(),
                })
                .collect(),
        )
    }

    /// Renames variables (not stars) symbol-for-symbol.
    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|l| match l {
                    Letter::Var(v) => Letter::Var(map.get(v).cloned().unwrap_or_else(|| v.clone())),
                    Letter::Bracket(w, inner) => Letter::Bracket(w.clone(), inner.rename(map)),
                    other => other.clone(),
                })
                .collect(),
        )
    }
}

/// A single decorated bracket word together with its mode.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BracketWord {
    pub mode: Mode,
    pub body: Monomial,
}

impl BracketWord {
    pub fn new(mode: Mode, body: Monomial) -> Self {
        BracketWord { mode, body: body.normalized(mode) }
    }

    pub fn deg_in(&self, y: &Var) -> usize {
        self.body.deg_in(y)
    }

    pub fn total_deg(&self) -> usize {
        self.body.total_deg()
    }

    pub fn to_law(&self) -> LawExpr {
        LawExpr::monomial(self.mode, self.body.clone(), Rat::one())
    }
}

/// A finite `k`-linear combination of bracket words of one mode.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LawExpr {
    mode: Mode,
    terms: BTreeMap<Monomial, Rat>,
}

impl LawExpr {
    pub fn zero(mode: Mode) -> Self {
        LawExpr { mode, terms: BTreeMap::new() }
    }

    pub fn one(mode: Mode) -> Self {
        LawExpr::monomial(mode, Monomial::one(), Rat::one())
    }

    pub fn var(mode: Mode, name: &str) -> Self {
        LawExpr::monomial(mode, Monomial::var(name), Rat::one())
    }

    pub fn constant(mode: Mode, c: Rat) -> Self {
        LawExpr::monomial(mode, Monomial::one(), c)
    }

    pub fn monomial(mode: Mode, m: Monomial, c: Rat) -> Self {
        let mut out = LawExpr::zero(mode);
        out.add_term(m, c);
        out
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
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

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(&m.normalized(self.mode)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let m = m.normalized(self.mode);
        let entry = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &LawExpr) -> LawExpr {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LawExpr) -> LawExpr {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> LawExpr {
        let mut out = LawExpr::zero(self.mode);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    /// Bilinear product; concatenation of words.
    pub fn mul(&self, other: &LawExpr) -> LawExpr {
        let mut out = LawExpr::zero(self.mode);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.times(b), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> LawExpr {
        (0..n).fold(LawExpr::one(self.mode), |acc, _| acc.mul(self))
    }

    /// `⌊·⌋_ω` extended linearly.
    pub fn bracket(&self, label: &OpLabel) -> LawExpr {
        let mut out = LawExpr::zero(self.mode);
        for (m, c) in &self.terms {
            out.add_term(m.bracket(label), c.clone());
        }
        out
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            m.collect_vars(&mut out);
        }
        out
    }

    pub fn labels(&self) -> BTreeSet<OpLabel> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            m.collect_labels(&mut out);
        }
        out
    }

    /// Maximal degree in `y` over all monomials.
    pub fn deg_in(&self, y: &Var) -> usize {
        self.terms.keys().map(|m| m.deg_in(y)).max().unwrap_or(0)
    }

    /// `Some(n)` when every monomial has degree exactly `n` in `y`.
    pub fn homogeneous_degree(&self, y: &Var) -> Option<usize> {
        let mut degs = self.terms.keys().map(|m| m.deg_in(y));
        let first = degs.next().unwrap_or(0);
        degs.all(|d| d == first).then_some(first)
    }

    /// Degree one in every occurring variable.
    pub fn is_multilinear(&self) -> bool {
        let vars = self.vars();
        self.terms.keys().all(|m| vars.iter().all(|y| m.deg_in(y) == 1))
    }

    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> LawExpr {
        let mut out = LawExpr::zero(self.mode);
        for (m, c) in &self.terms {
            out.add_term(m.rename(map), c.clone());
        }
        out
    }

    /// Same monomials re-read in another mode.
    fn with_mode(&self, mode: Mode) -> LawExpr {
        let mut out = LawExpr::zero(mode);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

/// Replaces stars and variables by linear combinations.
///
/// Unbound variables are kept; a star left without a binding is an error.
pub fn substitute(q: &Monomial, mode: Mode, bindings: &BTreeMap<Symbol, LawExpr>) -> Result<LawExpr> {
    let mut out = LawExpr::one(mode);
    for letter in q.letters() {
        let factor = match letter {
            Letter::Var(v) => match bindings.get(&Symbol::Var(v.clone())) {
                Some(e) => e.clone(),
                None => LawExpr::monomial(mode, Monomial::new(vec![letter.clone()]), Rat::one()),
            },
            Letter::Star(j) => bindings
                .get(&Symbol::Star(*j))
                .cloned()
                .ok_or_else(|| Error::Term(format!("star *{j} has no binding")))?,
            Letter::Bracket(w, inner) => substitute(inner, mode, bindings)?.bracket(w),
        };
        if factor.mode != mode {
            return Err(Error::Term("substituted expression has a different mode".into()));
        }
        out = out.mul(&factor);
    }
    Ok(out)
}

/// [`substitute`] extended linearly over a whole expression.
pub fn substitute_expr(l: &LawExpr, bindings: &BTreeMap<Symbol, LawExpr>) -> Result<LawExpr> {
    let mut out = LawExpr::zero(l.mode);
    for (m, c) in l.terms() {
        out = out.add(&substitute(m, l.mode, bindings)?.scale(c));
    }
    Ok(out)
}

/// Writes `u = q[y, …, y]` and returns `q` with `★_1..★_n` in traversal order.
pub fn star_pattern(u: &BracketWord, y: &Var) -> Result<BracketWord> {
    if u.deg_in(y) == 0 {
        return Err(Error::Term(format!("variable {} does not occur", y.name())));
    }
    let mut next = 0;
    let marked = u.body.mark_stars(y, &mut next);
    Ok(BracketWord { mode: u.mode, body: marked })
}

/// The projection `π` from noncommutative to commutative words.
pub fn abelianize(l: &LawExpr) -> Result<LawExpr> {
    if l.mode != Mode::Noncommutative {
        return Err(Error::Term("abelianize expects a noncommutative expression".into()));
    }
    Ok(l.with_mode(Mode::Commutative))
}

/// The section `ρ`: each commutative word read as the noncommutative word
/// with letters in increasing order.
pub fn comm_embed(l: &LawExpr) -> Result<LawExpr> {
    if l.mode != Mode::Commutative {
        return Err(Error::Term("comm_embed expects a commutative expression".into()));
    }
    Ok(l.with_mode(Mode::Noncommutative))
}

impl fmt::Display for OpLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_str() {
            "D" | "I" => write!(f, "{}", self.0),
            other => write!(f, "w:{other}"),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Var(v) => write!(f, "{v}"),
            Letter::Star(j) => write!(f, "*{j}"),
            Letter::Bracket(w, inner) => write!(f, "{w}{{{inner}}}"),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == self.0[i] {
                run += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.0[i])?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

impl fmt::Display for BracketWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body)
    }
}

impl fmt::Display for LawExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // larger total degree first, then deeper words
        let mut ordered: Vec<(&Monomial, &Rat)> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            (b.total_deg(), b.depth()).cmp(&(a.total_deg(), a.depth())).then_with(|| b.cmp(a))
        });
        for (n, (m, c)) in ordered.into_iter().enumerate() {
            crate::poly::write_signed_term(f, n == 0, c, |f| write!(f, "{m}"), m.is_one())?;
        }
        Ok(())
    }
}
