//! JSON views of expressions. Scalars are `"p/q"` strings; words list their
//! letters left to right.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opring::{OpExpr, OpLetter, OpWord, RingSpec, Variety};
use crate::poly::{Mono, Poly};
use crate::rat::{self, Rat};
use crate::terms::{LawExpr, Mode};
use crate::weyl::WeylElt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub scalar: String,
    pub word: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpExprJson {
    pub ring: String,
    pub weight: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylJson {
    pub basis: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawTermJson {
    pub scalar: String,
    pub word: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawJson {
    pub mode: String,
    pub terms: Vec<LawTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub scalar: String,
    pub x: u32,
    pub eps: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<PolyTermJson>,
}

/// Terms in print order (leading word first).
pub fn opexpr_json(t: &OpExpr, spec: &RingSpec) -> OpExprJson {
    let terms = t
        .terms()
        .rev()
        .map(|(w, c)| TermJson {
            scalar: rat::to_pq(c),
            word: w.letters().iter().map(OpLetter::json_symbol).collect(),
        })
        .collect();
    OpExprJson { ring: spec.variety().name().into(), weight: rat::to_pq(spec.weight()), terms }
}

fn json_letter(symbol: &str, variety: Variety) -> Result<OpLetter> {
    let bad = || Error::Invalid(format!("unknown word symbol `{symbol}`"));
    let exponent = |s: &str, name: &str| -> Result<u32> {
        s.strip_prefix(name).and_then(|e| e.strip_prefix('^')).and_then(|e| e.parse().ok()).ok_or_else(bad)
    };
    match symbol {
        "D" => Ok(OpLetter::Der),
        "E" => Ok(OpLetter::Ev),
        "I" => variety.integral().ok_or_else(bad),
        s if s.starts_with("x") => match s.split_once('*') {
            Some((x, e)) => Ok(OpLetter::Coeff(Mono::new(exponent(x, "x")?, exponent(e, "eps")?))),
            None => Ok(OpLetter::Coeff(Mono::new(exponent(s, "x")?, 0))),
        },
        s if s.starts_with("eps") => Ok(OpLetter::Coeff(Mono::new(0, exponent(s, "eps")?))),
        _ => Err(bad()),
    }
}

/// Reads back the output of [`opexpr_json`].
pub fn opexpr_from_json(j: &OpExprJson) -> Result<OpExpr> {
    let variety: Variety = j.ring.parse()?;
    let mut out = OpExpr::zero();
    for t in &j.terms {
        let c = parse_pq(&t.scalar)?;
        let letters = t.word.iter().map(|s| json_letter(s, variety)).collect::<Result<Vec<_>>>()?;
        out = &out + &OpExpr::term(c, OpWord::from_letters(letters));
    }
    Ok(out)
}

pub fn parse_pq(s: &str) -> Result<Rat> {
    rat::parse_rat(s).ok_or_else(|| Error::Invalid(format!("`{s}` is not a rational number")))
}

pub fn weyl_json(a: &WeylElt) -> WeylJson {
    let terms = a
        .ordered_terms()
        .into_iter()
        .map(|(w, c)| TermJson { scalar: rat::to_pq(c), word: w.letters() })
        .collect();
    WeylJson { basis: a.basis().name().into(), terms }
}

pub fn law_json(l: &LawExpr) -> LawJson {
    let mode = match l.mode() {
        Mode::Commutative => "commutative",
        Mode::Noncommutative => "noncommutative",
    };
    let terms = l.terms().map(|(m, c)| LawTermJson { scalar: rat::to_pq(c), word: m.to_string() }).collect();
    LawJson { mode: mode.into(), terms }
}

pub fn poly_json(p: &Poly) -> PolyJson {
    let terms = p
        .terms()
        .rev()
        .map(|(m, c)| PolyTermJson { scalar: rat::to_pq(c), x: m.x, eps: m.eps })
        .collect();
    PolyJson { terms }
}
