//! Exact rational scalars.
//!
//! The ground ring is the rationals; everything in this crate is computed
//! without rounding. [`Rat`] is always stored in lowest terms with a
//! positive denominator.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational as Rat;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u32) -> Rat {
    (1..=n as i64).fold(Rat::one(), |acc, k| acc * int(k))
}

pub fn binomial(n: u32, k: u32) -> Rat {
    if k > n {
        return Rat::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `n! / (n - m)!`, the falling factorial.
pub fn falling(n: u32, m: u32) -> Rat {
    if m > n {
        return Rat::zero();
    }
    ((n - m + 1)..=n).fold(Rat::one(), |acc, k| acc * int(k as i64))
}

pub fn pow(base: &Rat, exp: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rat(src: &str) -> Option<Rat> {
    let src = src.trim();
    let (num, den) = match src.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (src, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rat::new(num, den))
}

/// Always `p/q`, even for integers; used by the JSON schema.
pub fn to_pq(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `p` for integers, `p/q` otherwise.
pub fn to_short(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_neg(r: &Rat) -> bool {
    r.is_negative()
}
