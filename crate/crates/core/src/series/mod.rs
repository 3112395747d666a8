//! Truncated formal power series in one central variable `t`, with
//! coefficients in the exponential-polynomial algebra.
//!
//! A series is the plain coefficient list `c_0, ..., c_N` of `Σ c_n t^n`;
//! factorial normalizations are applied by callers at comparison points.
//! Arithmetic truncates to the shorter operand, so a computation's order is
//! decided once, at construction.

mod solve;
mod verify;

pub use solve::{solve_equation, SeriesEquation};
pub use verify::{
    verify_gen_a_closed_form, verify_gen_u_and_v, verify_gen_z, verify_psi_defining,
    verify_q_series, verify_solver_matches_grammar, verify_t_equals_exp_r,
    verify_tree_count_expansions,
};

use num_traits::One;

use crate::algebra::{rat_int, ExpExpr, LaurentPoly, Rat};
use crate::{Error, Result};

/// `n choose k` as an exact rational.
pub fn binomial(n: usize, k: usize) -> Rat {
    if k > n {
        return Rat::from_integer(0.into());
    }
    let mut out = Rat::one();
    for i in 0..k {
        out *= rat_int((n - i) as i64);
        out /= rat_int((i + 1) as i64);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<ExpExpr>, // index n holds the coefficient of t^n
}

impl TruncatedSeries {
    /// Wraps a coefficient list; the truncation order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<ExpExpr>) -> TruncatedSeries {
        assert!(!coeffs.is_empty());
        TruncatedSeries { coeffs }
    }

    /// The zero series to order `order`.
    pub fn zero(order: usize) -> TruncatedSeries {
        TruncatedSeries::new(vec![ExpExpr::zero(); order + 1])
    }

    /// A constant series to order `order`.
    pub fn constant(c: ExpExpr, order: usize) -> TruncatedSeries {
        let mut coeffs = vec![ExpExpr::zero(); order + 1];
        coeffs[0] = c;
        TruncatedSeries::new(coeffs)
    }

    /// The monomial `c·t^n` to order `order` (`n ≤ order`).
    pub fn monomial(c: ExpExpr, n: usize, order: usize) -> TruncatedSeries {
        let mut coeffs = vec![ExpExpr::zero(); order + 1];
        coeffs[n] = c;
        TruncatedSeries::new(coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^n` (zero above the truncation order).
    pub fn coeff(&self, n: usize) -> ExpExpr {
        self.coeffs.get(n).cloned().unwrap_or_else(ExpExpr::zero)
    }

    pub fn coeffs(&self) -> &[ExpExpr] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ExpExpr::is_zero)
    }

    /// First order with a nonzero coefficient, if any.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> TruncatedSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, ExpExpr::zero());
        TruncatedSeries::new(coeffs)
    }

    pub fn add(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| &self.coeffs[n] + &rhs.coeffs[n])
            .collect();
        TruncatedSeries::new(coeffs)
    }

    pub fn sub(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| &self.coeffs[n] - &rhs.coeffs[n])
            .collect();
        TruncatedSeries::new(coeffs)
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![ExpExpr::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        TruncatedSeries::new(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|x| x.scale(c)).collect())
    }

    pub fn mul_coeff(&self, c: &ExpExpr) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul_laurent(&self, p: &LaurentPoly) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|x| x.mul_laurent(p)).collect())
    }

    /// Multiplies by `t` (shifting coefficients up, dropping the top one).
    pub fn mul_t(&self) -> TruncatedSeries {
        let mut coeffs = vec![ExpExpr::zero()];
        coeffs.extend(self.coeffs[..self.coeffs.len() - 1].iter().cloned());
        TruncatedSeries::new(coeffs)
    }

    /// `exp` of the series. The constant coefficient must be a plain Laurent
    /// polynomial `L`; its exponential enters as the formal factor `exp(L)`
    /// and the positive-order part is exponentiated by its Taylor sum.
    pub fn exp(&self) -> Result<TruncatedSeries> {
        let c0 = self.coeffs[0]
            .as_laurent()
            .ok_or(Error::BadConstantTerm)?;
        let order = self.order();
        let mut tail = self.clone();
        tail.coeffs[0] = ExpExpr::zero();
        let mut sum = TruncatedSeries::constant(ExpExpr::one(), order);
        let mut power = TruncatedSeries::constant(ExpExpr::one(), order);
        let mut factorial = Rat::one();
        for k in 1..=order {
            power = power.mul(&tail);
            factorial *= rat_int(k as i64);
            sum = sum.add(&power.scale(&factorial.recip()));
        }
        Ok(sum.mul_coeff(&ExpExpr::exp_of(c0)))
    }

    /// `log` of the series; the constant coefficient must be exactly 1.
    pub fn log(&self) -> Result<TruncatedSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm);
        }
        let order = self.order();
        let mut w = self.clone();
        w.coeffs[0] = ExpExpr::zero();
        let mut sum = TruncatedSeries::zero(order);
        let mut power = TruncatedSeries::constant(ExpExpr::one(), order);
        let mut sign = Rat::one();
        for k in 1..=order {
            power = power.mul(&w);
            let term = power.scale(&(sign.clone() / rat_int(k as i64)));
            sum = sum.add(&term);
            sign = -sign;
        }
        Ok(sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expexpr;

    fn ee(src: &str) -> ExpExpr {
        parse_expexpr(src, None).unwrap()
    }

    fn s(coeffs: &[&str]) -> TruncatedSeries {
        TruncatedSeries::new(coeffs.iter().map(|c| ee(c)).collect())
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), rat_int(10));
        assert_eq!(binomial(0, 0), rat_int(1));
        assert_eq!(binomial(3, 5), rat_int(0));
        assert_eq!(binomial(10, 5), rat_int(252));
    }

    #[test]
    fn exp_of_zero_is_one() {
        let e = TruncatedSeries::zero(4).exp().unwrap();
        assert_eq!(e, TruncatedSeries::constant(ExpExpr::one(), 4));
    }

    #[test]
    fn exp_of_t_is_the_exponential_series() {
        let t = TruncatedSeries::monomial(ExpExpr::one(), 1, 4);
        let e = t.exp().unwrap();
        let expect = s(&["1", "1", "1/2", "1/6", "1/24"]);
        assert_eq!(e, expect);
    }

    #[test]
    fn exp_splits_off_laurent_constant() {
        // exp(u^-1 + v t) = exp(u^-1) * (1 + v t + v^2 t^2/2 + ...)
        let x = s(&["u^-1", "v", "0"]);
        let e = x.exp().unwrap();
        assert_eq!(e.coeff(0), ee("exp(u^-1)"));
        assert_eq!(e.coeff(1), ee("v*exp(u^-1)"));
        assert_eq!(e.coeff(2), ee("1/2*v^2*exp(u^-1)"));
        let bad = s(&["exp(u^-1) + 1", "0"]);
        assert_eq!(bad.exp(), Err(Error::BadConstantTerm));
    }

    #[test]
    fn log_inverts_exp() {
        let x = s(&["0", "u + v^-1", "3", "1/2*z", "u*v", "7", "0"]);
        assert_eq!(x.exp().unwrap().log().unwrap(), x);
        let y = s(&["1", "2*u", "u^2 - 3"]);
        assert_eq!(y.log().unwrap().exp().unwrap(), y);
        assert_eq!(s(&["2", "1"]).log(), Err(Error::BadConstantTerm));
    }

    #[test]
    fn arithmetic_truncates_to_shorter_operand() {
        let a = s(&["1", "2", "3", "4"]);
        let b = s(&["1", "1"]);
        assert_eq!(a.mul(&b), s(&["1", "3"]));
        assert_eq!(a.add(&b), s(&["2", "3"]));
        assert_eq!(a.truncate(1), s(&["1", "2"]));
        assert_eq!(a.truncate(5).coeff(5), ExpExpr::zero());
        assert_eq!(a.mul_t(), s(&["0", "1", "2", "3"]));
    }
}
