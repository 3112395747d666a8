//! Exact arithmetic for Laurent polynomials and formal exponentials.
//!
//! All values are canonical on construction: no zero coefficients, no zero
//! exponents, exponential arguments merged. Equality is structural equality
//! of canonical forms.

mod expexpr;
mod laurent;
mod monomial;

pub use expexpr::ExpExpr;
pub use laurent::{rat, rat_int, LaurentPoly, Rat};
pub use monomial::{Monomial, VarId};
