use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::poly::{Mono, Poly};
use crate::rat::Rat;

/// A generator of the free operator ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpLetter {
    /// A coefficient monomial `x^i ε^j`.
    Coeff(Mono),
    /// `∂`
    Der,
    /// `∫` of an integro-differential ring (or plain Rota-Baxter ring).
    Int,
    /// `⨛` of a differential Rota-Baxter ring.
    VInt,
    /// `e`
    Ev,
}

impl OpLetter {
    fn rank(&self) -> (u8, u32, u32) {
        match self {
            OpLetter::Coeff(m) => (0, m.x, m.eps),
            OpLetter::Ev => (1, 0, 0),
            OpLetter::Int => (2, 0, 0),
            OpLetter::VInt => (3, 0, 0),
            OpLetter::Der => (4, 0, 0),
        }
    }

    pub fn is_coeff(&self) -> bool {
        matches!(self, OpLetter::Coeff(_))
    }

    pub fn is_integral(&self) -> bool {
        matches!(self, OpLetter::Int | OpLetter::VInt)
    }

    /// Name used in text and JSON output.
    pub fn symbol(&self) -> String {
        match self {
            OpLetter::Coeff(m) => m.to_string(),
            OpLetter::Der => "D".into(),
            OpLetter::Int | OpLetter::VInt => "I".into(),
            OpLetter::Ev => "E".into(),
        }
    }

    /// Like [`symbol`](Self::symbol) but with explicit exponents, `x^1`.
    pub fn json_symbol(&self) -> String {
        match self {
            OpLetter::Coeff(m) => match (m.x, m.eps) {
                (x, 0) => format!("x^{x}"),
                (0, e) => format!("eps^{e}"),
                (x, e) => format!("x^{x}*eps^{e}"),
            },
            other => other.symbol(),
        }
    }
}

impl Ord for OpLetter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for OpLetter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A monomial of the free operator ring in canonical storage: no unit
/// coefficient letters, no two coefficient letters side by side.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OpWord(Vec<OpLetter>);

impl OpWord {
    pub fn one() -> Self {
        OpWord(Vec::new())
    }

    pub fn from_letters<I: IntoIterator<Item = OpLetter>>(letters: I) -> Self {
        let mut w = OpWord::one();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn letter(l: OpLetter) -> Self {
        OpWord::from_letters([l])
    }

    pub fn push(&mut self, l: OpLetter) {
        if let OpLetter::Coeff(m) = l {
            if m.is_one() {
                return;
            }
            if let Some(OpLetter::Coeff(prev)) = self.0.last_mut() {
                *prev = prev.times(&m);
                return;
            }
        }
        self.0.push(l);
    }

    pub fn letters(&self) -> &[OpLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &OpWord) -> OpWord {
        let mut out = self.clone();
        for l in &other.0 {
            out.push(*l);
        }
        out
    }

    pub fn slice(&self, start: usize, end: usize) -> OpWord {
        OpWord(self.0[start..end].to_vec())
    }

    pub fn has_eps(&self) -> bool {
        self.0.iter().any(|l| matches!(l, OpLetter::Coeff(m) if m.eps > 0))
    }

    pub fn contains(&self, l: OpLetter) -> bool {
        self.0.contains(&l)
    }
}

impl Ord for OpWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for OpWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite rational combination of operator words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OpExpr {
    terms: BTreeMap<OpWord, Rat>,
}

impl OpExpr {
    pub fn zero() -> Self {
        OpExpr::default()
    }

    pub fn one() -> Self {
        OpExpr::word(OpWord::one())
    }

    pub fn scalar(c: Rat) -> Self {
        OpExpr::term(c, OpWord::one())
    }

    pub fn word(w: OpWord) -> Self {
        OpExpr::term(Rat::one(), w)
    }

    pub fn letter(l: OpLetter) -> Self {
        OpExpr::word(OpWord::letter(l))
    }

    pub fn term(c: Rat, w: OpWord) -> Self {
        let mut e = OpExpr::zero();
        e.add_term(w, c);
        e
    }

    /// A coefficient polynomial, expanded over its monomials.
    pub fn poly(p: &Poly) -> Self {
        let mut e = OpExpr::zero();
        for (m, c) in p.terms() {
            e.add_term(OpWord::letter(OpLetter::Coeff(*m)), c.clone());
        }
        e
    }

    /// Product of letters, e.g. `OpExpr::product(&[Der, Der])`.
    pub fn product(letters: &[OpLetter]) -> Self {
        OpExpr::word(OpWord::from_letters(letters.iter().copied()))
    }

    pub fn add_term(&mut self, w: OpWord, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(entry) => {
                *entry += c;
                if entry.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&OpWord, &Rat)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (OpWord, Rat)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &OpWord) -> Rat {
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

    pub fn scale(&self, c: &Rat) -> OpExpr {
        let mut out = OpExpr::zero();
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> OpExpr {
        (0..n).fold(OpExpr::one(), |acc, _| &acc * self)
    }

    pub fn has_eps(&self) -> bool {
        self.terms.keys().any(OpWord::has_eps)
    }

    pub fn letters(&self) -> impl Iterator<Item = &OpLetter> {
        self.terms.keys().flat_map(|w| w.letters().iter())
    }

    /// The ring map sending each letter to `image(letter)`.
    pub fn map_letters(&self, image: impl Fn(&OpLetter) -> OpExpr) -> OpExpr {
        let mut out = OpExpr::zero();
        for (w, c) in &self.terms {
            let mut acc = OpExpr::scalar(c.clone());
            for l in w.letters() {
                acc = &acc * &image(l);
            }
            out = &out + &acc;
        }
        out
    }

    /// Replaces the letter `from` by `to` everywhere.
    pub fn rename_letter(&self, from: OpLetter, to: OpLetter) -> OpExpr {
        let mut out = OpExpr::zero();
        for (w, c) in &self.terms {
            let word = OpWord::from_letters(w.letters().iter().map(|l| if *l == from { to } else { *l }));
            out.add_term(word, c.clone());
        }
        out
    }

    /// Substitutes `ε := c` in every coefficient letter.
    pub fn eps_at(&self, c: &Rat) -> OpExpr {
        self.map_letters(|l| match l {
            OpLetter::Coeff(m) if m.eps > 0 => {
                OpExpr::poly(&Poly::term(Rat::one(), *m).subst_eps(&Poly::constant(c.clone())))
            }
            other => OpExpr::letter(*other),
        })
    }
}

impl Add<&OpExpr> for &OpExpr {
    type Output = OpExpr;
    fn add(self, rhs: &OpExpr) -> OpExpr {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub<&OpExpr> for &OpExpr {
    type Output = OpExpr;
    fn sub(self, rhs: &OpExpr) -> OpExpr {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &OpExpr {
    type Output = OpExpr;
    fn neg(self) -> OpExpr {
        self.scale(&-Rat::one())
    }
}

impl Mul<&OpExpr> for &OpExpr {
    type Output = OpExpr;
    fn mul(self, rhs: &OpExpr) -> OpExpr {
        let mut out = OpExpr::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.concat(b), ca * cb);
            }
        }
        out
    }
}

impl Add for OpExpr {
    type Output = OpExpr;
    fn add(self, rhs: OpExpr) -> OpExpr {
        &self + &rhs
    }
}

impl Sub for OpExpr {
    type Output = OpExpr;
    fn sub(self, rhs: OpExpr) -> OpExpr {
        &self - &rhs
    }
}

impl Mul for OpExpr {
    type Output = OpExpr;
    fn mul(self, rhs: OpExpr) -> OpExpr {
        &self * &rhs
    }
}

impl Neg for OpExpr {
    type Output = OpExpr;
    fn neg(self) -> OpExpr {
        -&self
    }
}

impl fmt::Display for OpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        while i < self.0.len() {
            let mut run = 1;
            while !self.0[i].is_coeff() && i + run < self.0.len() && self.0[i + run] == self.0[i] {
                run += 1;
            }
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", self.0[i].symbol())?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

impl fmt::Display for OpExpr {
    /// Terms in descending term order, e.g. `x*D + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms.iter().rev().enumerate() {
            crate::poly::write_signed_term(f, n == 0, c, |f| write!(f, "{w}"), w.is_one())?;
        }
        Ok(())
    }
}
