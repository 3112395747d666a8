//! Exact symbolic machinery for the Ramanujan polynomials.
//!
//! The crate has five layers:
//!
//! * [`algebra`] — multivariate Laurent polynomials over exact rationals and
//!   their extension by formal exponentials, with canonical forms so that
//!   equality is decidable.
//! * [`grammar`] — context-free grammars `var -> polynomial` and the formal
//!   derivative they induce, including generating functions `gen(f,t)`.
//! * [`trees`] — exhaustive enumeration of labeled rooted trees with
//!   improper-edge statistics, plus the z/v/u-insertion algorithm and its
//!   inverse.
//! * [`ramanujan`] — recurrence-built tables of `psi_k(r,x)` and `Q_{n,k}(x)`
//!   with the classical identities as executable checks.
//! * [`series`] — truncated power series in `t` over the exponential algebra,
//!   order-by-order solvers for the functional equations, and the
//!   verification routines tying everything together.

pub mod algebra;
pub mod grammar;
pub mod parse;
pub mod ramanujan;
pub mod series;
pub mod trees;

use std::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Inverting (or raising to a negative power) a polynomial with more
    /// than one term. Only single-term Laurent polynomials are units.
    #[error("cannot invert a Laurent polynomial that is not a single term")]
    NonUnitInverse,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{requested} vertices exceed the enumeration bound {max} (set RG_MAX_N to raise it)")]
    BoundExceeded { requested: usize, max: usize },
    #[error("vertex {0} cannot be used here")]
    InvalidVertex(usize),
    #[error("({0}, {1}) is not an edge of the tree")]
    InvalidEdge(usize, usize),
    #[error("({0}, {1}) is not an improper edge")]
    NotImproperEdge(usize, usize),
    #[error("the top-order linear factor in `{0}` is not invertible")]
    NonInvertibleLinearFactor(String),
    #[error("series operation needs a purely polynomial constant term")]
    BadConstantTerm,
    #[error("psi table does not cover r = {0}")]
    TableTooSmall(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn syntax(line: usize, col: usize, msg: impl fmt::Display) -> Error {
        Error::Syntax { line, col, msg: msg.to_string() }
    }
}
