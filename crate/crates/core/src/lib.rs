//! Exact computation in rings of linear operators over polynomial
//! coefficients: differential, Rota-Baxter, differential Rota-Baxter and
//! integro-differential operators, the laws that define them, and the
//! integro-differential Weyl algebra.

pub mod action;
pub mod error;
pub mod gen;
pub mod isoms;
pub mod json;
pub mod laws;
pub mod opring;
pub mod parse;
pub mod poly;
pub mod rat;
pub mod structure;
pub mod terms;
pub mod weyl;

pub use error::{Error, ParseError, Result};
pub use opring::{OpExpr, OpLetter, OpWord, RingSpec, Variety};
pub use poly::{Mono, Poly};
pub use rat::Rat;
pub use structure::{CoeffKind, CoeffStructure, Init};
pub use terms::{BracketWord, LawExpr, Mode, OpLabel, Var};
pub use weyl::{Basis, WeylElt, WeylWord};
