//! Text syntax for operator expressions, laws, polynomials and Weyl
//! elements. Each printer's output parses back to the same value.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{ParseError, Result};
use crate::opring::{OpExpr, OpLetter, RingSpec};
use crate::poly::{Mono, Poly};
use crate::rat::Rat;
use crate::terms::{LawExpr, Letter, Mode, Monomial, OpLabel};
use crate::weyl::{Basis, WeylElt, WeylWord};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Colon,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Colon => "`:`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(pos, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
            continue;
        }
        if ch.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                digits.push(d);
                chars.next();
            }
            out.push((Tok::Num(digits.parse().expect("ascii digits")), pos));
            continue;
        }
        if ch.is_alphabetic() || ch == '_' {
            let mut name = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_' || d == '#') {
                    break;
                }
                name.push(d);
                chars.next();
            }
            out.push((Tok::Ident(name), pos));
            continue;
        }
        let tok = match ch {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ':' => Tok::Colon,
            other => return Err(ParseError::new(pos, format!("unexpected character `{other}`")).into()),
        };
        chars.next();
        out.push((tok, pos));
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self> {
        Ok(Parser { toks: lex(src)?, at: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        Err(ParseError::new(self.pos(), format!("expected {expected}, found {}", self.peek().describe())).into())
    }

    fn expect(&mut self, t: Tok, expected: &str) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.fail(expected)
        }
    }

    fn nat(&mut self) -> Result<u32> {
        match self.peek().clone() {
            Tok::Num(n) => {
                let pos = self.pos();
                self.bump();
                u32::try_from(&n).map_err(|_| ParseError::new(pos, format!("exponent {n} is too large")).into())
            }
            _ => self.fail("a natural number"),
        }
    }

    /// `n` or `n/d`, the number token already peeked.
    fn rational(&mut self) -> Result<Rat> {
        let Tok::Num(n) = self.bump() else { unreachable!("called on a number") };
        if self.eat(&Tok::Slash) {
            let pos = self.pos();
            let Tok::Num(d) = self.peek().clone() else { return self.fail("a denominator") };
            self.bump();
            if d.is_zero() {
                return Err(ParseError::new(pos, "zero denominator").into());
            }
            return Ok(Rat::new(n, d));
        }
        Ok(Rat::from_integer(n))
    }

    fn finish(&self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.fail("`+`, `-`, `*` or end of input")
        }
    }
}

/// A ring whose elements the shared expression grammar can build.
trait Grammar {
    type Out: Clone;
    fn scalar(&self, c: Rat) -> Self::Out;
    fn add(&self, a: &Self::Out, b: &Self::Out) -> Self::Out;
    fn scale(&self, a: &Self::Out, c: &Rat) -> Self::Out;
    fn mul(&self, a: &Self::Out, b: &Self::Out) -> Self::Out;
    /// Parses a grammar-specific atom at an identifier or other token.
    fn atom(&self, p: &mut Parser) -> Result<Self::Out>;

    fn expr(&self, p: &mut Parser) -> Result<Self::Out> {
        let mut acc = self.term(p)?;
        loop {
            if p.eat(&Tok::Plus) {
                acc = self.add(&acc, &self.term(p)?);
            } else if p.eat(&Tok::Minus) {
                acc = self.add(&acc, &self.scale(&self.term(p)?, &-Rat::one()));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&self, p: &mut Parser) -> Result<Self::Out> {
        let mut acc = self.factor(p)?;
        while p.eat(&Tok::Star) {
            acc = self.mul(&acc, &self.factor(p)?);
        }
        Ok(acc)
    }

    fn factor(&self, p: &mut Parser) -> Result<Self::Out> {
        let base = self.primary(p)?;
        if p.eat(&Tok::Caret) {
            let n = p.nat()?;
            return Ok((0..n).fold(self.scalar(Rat::one()), |acc, _| self.mul(&acc, &base)));
        }
        Ok(base)
    }

    fn primary(&self, p: &mut Parser) -> Result<Self::Out> {
        match p.peek() {
            Tok::Num(_) => Ok(self.scalar(p.rational()?)),
            Tok::Minus => {
                p.bump();
                Ok(self.scale(&self.factor(p)?, &-Rat::one()))
            }
            Tok::Plus => {
                p.bump();
                self.factor(p)
            }
            Tok::LParen => {
                p.bump();
                let inner = self.expr(p)?;
                p.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => self.atom(p),
        }
    }
}

fn ident(p: &mut Parser, expected: &str) -> Result<(String, usize)> {
    let pos = p.pos();
    match p.peek().clone() {
        Tok::Ident(s) => {
            p.bump();
            Ok((s, pos))
        }
        _ => p.fail(expected),
    }
}

struct OpGrammar<'a> {
    spec: &'a RingSpec,
}

impl Grammar for OpGrammar<'_> {
    type Out = OpExpr;

    fn scalar(&self, c: Rat) -> OpExpr {
        OpExpr::scalar(c)
    }

    fn add(&self, a: &OpExpr, b: &OpExpr) -> OpExpr {
        a + b
    }

    fn scale(&self, a: &OpExpr, c: &Rat) -> OpExpr {
        a.scale(c)
    }

    fn mul(&self, a: &OpExpr, b: &OpExpr) -> OpExpr {
        a * b
    }

    fn atom(&self, p: &mut Parser) -> Result<OpExpr> {
        const EXPECTED: &str = "a number, `(`, `x`, `eps`, `D`, `I` or `E`";
        let (name, pos) = ident(p, EXPECTED)?;
        let letter = match name.as_str() {
            "x" => OpLetter::Coeff(Mono::new(1, 0)),
            "eps" => OpLetter::Coeff(Mono::new(0, 1)),
            "D" => OpLetter::Der,
            "E" => OpLetter::Ev,
            "I" => self.spec.variety().integral().ok_or_else(|| {
                ParseError::new(pos, format!("the {} ring has no integral", self.spec.variety()))
            })?,
            other => return Err(ParseError::new(pos, format!("expected {EXPECTED}, found `{other}`")).into()),
        };
        self.spec.check_letter(&letter).map_err(|e| ParseError::new(pos, e.to_string()))?;
        Ok(OpExpr::letter(letter))
    }
}

/// Parses an operator expression in the ring of `spec`; `I` is `⨛` in the
/// differential Rota-Baxter ring and `∫` elsewhere.
pub fn parse_opexpr(src: &str, spec: &RingSpec) -> Result<OpExpr> {
    let mut p = Parser::new(src)?;
    let out = OpGrammar { spec }.expr(&mut p)?;
    p.finish()?;
    Ok(out)
}

struct PolyGrammar;

impl Grammar for PolyGrammar {
    type Out = Poly;

    fn scalar(&self, c: Rat) -> Poly {
        Poly::constant(c)
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }

    fn scale(&self, a: &Poly, c: &Rat) -> Poly {
        a.scale(c)
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a * b
    }

    fn atom(&self, p: &mut Parser) -> Result<Poly> {
        let (name, pos) = ident(p, "a number, `(`, `x` or `eps`")?;
        match name.as_str() {
            "x" => Ok(Poly::x()),
            "eps" => Ok(Poly::eps()),
            other => Err(ParseError::new(pos, format!("expected `x` or `eps`, found `{other}`")).into()),
        }
    }
}

/// Parses a polynomial in `x` and `eps`.
pub fn parse_poly(src: &str) -> Result<Poly> {
    let mut p = Parser::new(src)?;
    let out = PolyGrammar.expr(&mut p)?;
    p.finish()?;
    Ok(out)
}

struct LawGrammar {
    mode: Mode,
}

impl Grammar for LawGrammar {
    type Out = LawExpr;

    fn scalar(&self, c: Rat) -> LawExpr {
        LawExpr::constant(self.mode, c)
    }

    fn add(&self, a: &LawExpr, b: &LawExpr) -> LawExpr {
        a.add(b)
    }

    fn scale(&self, a: &LawExpr, c: &Rat) -> LawExpr {
        a.scale(c)
    }

    fn mul(&self, a: &LawExpr, b: &LawExpr) -> LawExpr {
        a.mul(b)
    }

    fn atom(&self, p: &mut Parser) -> Result<LawExpr> {
        if p.eat(&Tok::Star) {
            let pos = p.pos();
            let n = p.nat()? as usize;
            if n == 0 {
                return Err(ParseError::new(pos, "stars are numbered from 1").into());
            }
            return Ok(LawExpr::monomial(self.mode, Monomial::new(vec![Letter::Star(n)]), Rat::one()));
        }
        let (name, _) = ident(p, "a number, `(`, a variable, a star or a bracket")?;
        let label = if name == "w" && *p.peek() == Tok::Colon {
            p.bump();
            let (label, _) = ident(p, "an operator name")?;
            Some(OpLabel::new(label))
        } else if *p.peek() == Tok::LBrace {
            Some(OpLabel::new(name.clone()))
        } else {
            None
        };
        match label {
            Some(label) => {
                p.expect(Tok::LBrace, "`{`")?;
                let inner = self.expr(p)?;
                p.expect(Tok::RBrace, "`}`")?;
                Ok(inner.bracket(&label))
            }
            None => Ok(LawExpr::var(self.mode, &name)),
        }
    }
}

/// Parses a law: variables, `D{..}`, `I{..}` and `w:name{..}` brackets,
/// and `*n` placeholders.
pub fn parse_law(src: &str, mode: Mode) -> Result<LawExpr> {
    let mut p = Parser::new(src)?;
    let out = LawGrammar { mode }.expr(&mut p)?;
    p.finish()?;
    Ok(out)
}

/// Parses a combination of literal basis words of `basis`, such as
/// `x*l - l^2` or `2*x^2*l*E*D`.
pub fn parse_weyl(src: &str, basis: Basis) -> Result<WeylElt> {
    let mut p = Parser::new(src)?;
    let mut out = WeylElt::zero(basis);
    let mut sign = if p.eat(&Tok::Minus) { -Rat::one() } else { Rat::one() };
    loop {
        let start = p.pos();
        let mut scalar = sign.clone();
        let mut letters: Vec<(String, u32)> = Vec::new();
        loop {
            match p.peek() {
                Tok::Num(_) => scalar *= p.rational()?,
                Tok::Ident(_) => {
                    let (name, pos) = ident(&mut p, "a letter")?;
                    if !matches!(name.as_str(), "x" | "l" | "E" | "D") {
                        return Err(ParseError::new(pos, format!("expected `x`, `l`, `E` or `D`, found `{name}`")).into());
                    }
                    let e = if p.eat(&Tok::Caret) { p.nat()? } else { 1 };
                    match letters.last_mut() {
                        Some((last, n)) if *last == name => *n += e,
                        _ if e > 0 => letters.push((name, e)),
                        _ => {}
                    }
                }
                _ => return p.fail("a number or a letter"),
            }
            if !p.eat(&Tok::Star) {
                break;
            }
        }
        let word = weyl_word(&letters, basis).map_err(|m| ParseError::new(start, m))?;
        out = out.add(&WeylElt::word(basis, word)?.scale(&scalar))?;
        if p.eat(&Tok::Plus) {
            sign = Rat::one();
        } else if p.eat(&Tok::Minus) {
            sign = -Rat::one();
        } else {
            break;
        }
    }
    p.finish()?;
    Ok(out)
}

fn weyl_word(letters: &[(String, u32)], basis: Basis) -> std::result::Result<WeylWord, String> {
    let mut rest = letters;
    let mut take = |name: &str| match rest.first() {
        Some((n, e)) if n == name => {
            rest = &rest[1..];
            *e
        }
        _ => 0,
    };
    let word = match basis {
        Basis::B1 => {
            let (i, j, e, k) = (take("x"), take("l"), take("E"), take("D"));
            match (e, j, k) {
                (1, _, _) => WeylWord::Eval { i, j, k },
                (0, 0, _) => WeylWord::Diff { i, k },
                (0, _, 0) => WeylWord::Right { i, j },
                _ => return Err("not a b1 word: expected x^i*D^k, x^i*l^j or x^i*l^j*E*D^k".into()),
            }
        }
        Basis::B2 => WeylWord::Triple { i: take("x"), j: take("l"), k: take("D") },
        Basis::B3 => {
            let (i, l) = (take("x"), take("l"));
            let (j, k) = if l == 1 { (take("x"), take("D")) } else { (0, take("D")) };
            match (l, k) {
                (0, _) => WeylWord::Diff { i, k },
                (1, 0) => WeylWord::Mid { i, j },
                (1, _) => WeylWord::Rung { i, j, k },
                _ => return Err("not a b3 word: expected x^i*D^k or x^i*l*x^j*D^k".into()),
            }
        }
    };
    if !rest.is_empty() {
        return Err(format!("not a {basis} word"));
    }
    Ok(word)
}

/// Parses a signed rational `n` or `p/q`.
pub fn parse_scalar(src: &str) -> Result<Rat> {
    let mut p = Parser::new(src)?;
    let neg = p.eat(&Tok::Minus);
    if !matches!(p.peek(), Tok::Num(_)) {
        return p.fail("a rational number");
    }
    let r = p.rational()?;
    p.finish()?;
    Ok(if neg { -r } else { r })
}
