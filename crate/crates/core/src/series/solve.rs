//! Order-by-order solvers for the functional equations satisfied by the
//! improper-edge generating functions.
//!
//! Each equation determines its solution coefficient by coefficient: with
//! orders `< n` fixed, the residual is affine in the order-`n` unknown with
//! an invertible linear factor. The solver extracts that factor by
//! evaluating the residual at two values of the unknown, which works for
//! every equation here without equation-specific algebra.

use num_traits::One;

use super::TruncatedSeries;
use crate::algebra::{ExpExpr, LaurentPoly, Rat};
use crate::{Error, Result};

/// The functional equations with order-by-order solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesEquation {
    /// `R = (1 - u^-1 + u^-1 t)·e^R + u^-1 - 1`, with `R(u,0) = 0`. The
    /// coefficient of `t^n/n!` is the improper-edge polynomial of rooted
    /// trees on `[n]`.
    R,
    /// `T = exp((1 - u^-1 + u^-1 t)·T + u^-1 - 1)`, with `T(u,0) = 1`. The
    /// coefficient of `t^n/n!` counts trees on `[n+1]` rooted at 1.
    T,
    /// `(1 - u^-1 + y)·u·e^{-y} = u - 1 + v z t`, with `y(0) = 0`; the
    /// auxiliary series behind the closed form of the degree-marked
    /// generating function.
    YGrammar,
    /// `y e^{-y} + u₀(e^{-y} - 1) = (1 - u₀) t` at an exact rational `u₀`,
    /// with `y(0) = 0`. Degenerate at `u₀ = 1`.
    YZeng(Rat),
}

impl SeriesEquation {
    pub fn name(&self) -> &'static str {
        match self {
            SeriesEquation::R => "R-eq",
            SeriesEquation::T => "T-eq",
            SeriesEquation::YGrammar => "Y-grammar-eq",
            SeriesEquation::YZeng(_) => "Y-zeng-eq",
        }
    }

    /// The constant coefficient forced by the equation.
    pub fn forced_constant(&self) -> ExpExpr {
        match self {
            SeriesEquation::T => ExpExpr::one(),
            _ => ExpExpr::zero(),
        }
    }

    /// Left side minus right side at the candidate `s`, truncated to the
    /// order of `s`. The solution is exactly the series with zero residual.
    pub fn residual(&self, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        let order = s.order();
        let uinv = LaurentPoly::mono(&[('u', -1)]);
        let one_minus_uinv = &LaurentPoly::one() - &uinv;
        let uinv_minus_one = -&one_minus_uinv;
        match self {
            SeriesEquation::R => {
                let pre = affine_t(one_minus_uinv, uinv, order);
                let rhs = pre
                    .mul(&s.exp()?)
                    .add(&constant(uinv_minus_one, order));
                Ok(s.sub(&rhs))
            }
            SeriesEquation::T => {
                let pre = affine_t(one_minus_uinv, uinv, order);
                let inner = pre.mul(s).add(&constant(uinv_minus_one, order));
                Ok(s.sub(&inner.exp()?))
            }
            SeriesEquation::YGrammar => {
                let u = LaurentPoly::var('u');
                let vz = LaurentPoly::mono(&[('v', 1), ('z', 1)]);
                let lhs = constant(one_minus_uinv, order)
                    .add(s)
                    .mul(&s.neg().exp()?)
                    .mul_laurent(&u);
                let rhs = affine_t(&u - &LaurentPoly::one(), vz, order);
                Ok(lhs.sub(&rhs))
            }
            SeriesEquation::YZeng(u0) => {
                let em = s.neg().exp()?;
                let em_minus_one =
                    em.sub(&constant(LaurentPoly::one(), order)).scale(u0);
                let lhs = s.mul(&em).add(&em_minus_one);
                let c1 = LaurentPoly::constant(Rat::one() - u0);
                let rhs = affine_t(LaurentPoly::zero(), c1, order);
                Ok(lhs.sub(&rhs))
            }
        }
    }
}

/// The series `c0 + c1·t` padded to `order`.
fn affine_t(c0: LaurentPoly, c1: LaurentPoly, order: usize) -> TruncatedSeries {
    let mut s = constant(c0, order);
    if order >= 1 {
        s = s.add(&TruncatedSeries::monomial(ExpExpr::from_laurent(c1), 1, order));
    }
    s
}

fn constant(c: LaurentPoly, order: usize) -> TruncatedSeries {
    TruncatedSeries::constant(ExpExpr::from_laurent(c), order)
}

/// Solves `eq` to the requested truncation order.
pub fn solve_equation(eq: &SeriesEquation, order: usize) -> Result<TruncatedSeries> {
    let mut coeffs = vec![eq.forced_constant()];
    debug_assert!(eq
        .residual(&TruncatedSeries::new(coeffs.clone()))?
        .is_zero());
    for n in 1..=order {
        coeffs.push(ExpExpr::zero());
        let r0 = eq.residual(&TruncatedSeries::new(coeffs.clone()))?.coeff(n);
        coeffs[n] = ExpExpr::one();
        let r1 = eq.residual(&TruncatedSeries::new(coeffs.clone()))?.coeff(n);
        let factor = &r1 - &r0;
        let inv = factor
            .try_inverse()
            .map_err(|_| Error::NonInvertibleLinearFactor(eq.name().to_string()))?;
        coeffs[n] = &(-&r0) * &inv;
    }
    Ok(TruncatedSeries::new(coeffs))
}
