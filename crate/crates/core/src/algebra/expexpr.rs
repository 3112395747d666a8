use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Result};

use super::{LaurentPoly, Rat, VarId};

/// A finite sum `Σ coeff · exp(arg)` with both parts Laurent polynomials.
///
/// This is the smallest ring containing the Laurent polynomials that is
/// closed under the grammar derivations used here (it houses `e^{u^-1}` and
/// friends). Terms are keyed by their exponential argument, so no two terms
/// share an argument; `arg = 0` is the purely polynomial part.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct ExpExpr {
    terms: BTreeMap<LaurentPoly, LaurentPoly>,
}

impl ExpExpr {
    pub fn zero() -> ExpExpr {
        ExpExpr::default()
    }

    pub fn one() -> ExpExpr {
        ExpExpr::from_laurent(LaurentPoly::one())
    }

    pub fn from_laurent(p: LaurentPoly) -> ExpExpr {
        ExpExpr::term(p, LaurentPoly::zero())
    }

    /// The formal exponential `exp(arg)`.
    pub fn exp_of(arg: LaurentPoly) -> ExpExpr {
        ExpExpr::term(LaurentPoly::one(), arg)
    }

    /// `coeff · exp(arg)`.
    pub fn term(coeff: LaurentPoly, arg: LaurentPoly) -> ExpExpr {
        let mut e = ExpExpr::zero();
        e.add_part(arg, coeff);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_laurent().map(|p| p.is_one()).unwrap_or(false)
    }

    /// Iterates `(arg, coeff)` pairs in canonical order.
    pub fn parts(&self) -> impl Iterator<Item = (&LaurentPoly, &LaurentPoly)> + '_ {
        self.terms.iter()
    }

    pub fn num_parts(&self) -> usize {
        self.terms.len()
    }

    /// Returns the underlying polynomial when no true exponential term is
    /// present (zero counts as polynomial).
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        match self.terms.len() {
            0 => Some(LaurentPoly::zero()),
            1 => {
                let (arg, coeff) = self.terms.iter().next().unwrap();
                if arg.is_zero() {
                    Some(coeff.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// The single `(arg, coeff)` pair if this is one term.
    pub fn as_single_term(&self) -> Option<(&LaurentPoly, &LaurentPoly)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn add_part(&mut self, arg: LaurentPoly, coeff: LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(arg.clone()).or_insert_with(LaurentPoly::zero);
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            self.terms.remove(&arg);
        }
    }

    pub fn scale(&self, c: &Rat) -> ExpExpr {
        let mut out = ExpExpr::zero();
        for (arg, coeff) in &self.terms {
            out.add_part(arg.clone(), coeff.scale(c));
        }
        out
    }

    pub fn mul_laurent(&self, p: &LaurentPoly) -> ExpExpr {
        let mut out = ExpExpr::zero();
        for (arg, coeff) in &self.terms {
            out.add_part(arg.clone(), coeff * p);
        }
        out
    }

    /// Inverse of a single term `c · exp(L)` with unit `c`.
    pub fn try_inverse(&self) -> Result<ExpExpr> {
        let (arg, coeff) = self.as_single_term().ok_or(Error::NonUnitInverse)?;
        Ok(ExpExpr::term(coeff.inverse()?, -arg))
    }

    pub fn pow(&self, k: i64) -> Result<ExpExpr> {
        if k < 0 {
            return self.try_inverse()?.pow(-k);
        }
        let mut out = ExpExpr::one();
        for _ in 0..k {
            out = &out * self;
        }
        Ok(out)
    }

    pub fn substitute(&self, bindings: &BTreeMap<VarId, LaurentPoly>) -> Result<ExpExpr> {
        let mut out = ExpExpr::zero();
        for (arg, coeff) in &self.terms {
            out = &out
                + &ExpExpr::term(coeff.substitute(bindings)?, arg.substitute(bindings)?);
        }
        Ok(out)
    }

    pub fn vars(&self) -> std::collections::BTreeSet<VarId> {
        let mut out = std::collections::BTreeSet::new();
        for (arg, coeff) in &self.terms {
            out.extend(arg.vars());
            out.extend(coeff.vars());
        }
        out
    }
}

impl Add for &ExpExpr {
    type Output = ExpExpr;
    fn add(self, rhs: &ExpExpr) -> ExpExpr {
        let mut out = self.clone();
        for (arg, coeff) in &rhs.terms {
            out.add_part(arg.clone(), coeff.clone());
        }
        out
    }
}

impl Sub for &ExpExpr {
    type Output = ExpExpr;
    fn sub(self, rhs: &ExpExpr) -> ExpExpr {
        let mut out = self.clone();
        for (arg, coeff) in &rhs.terms {
            out.add_part(arg.clone(), -coeff);
        }
        out
    }
}

impl Neg for &ExpExpr {
    type Output = ExpExpr;
    fn neg(self) -> ExpExpr {
        let mut out = ExpExpr::zero();
        for (arg, coeff) in &self.terms {
            out.add_part(arg.clone(), -coeff);
        }
        out
    }
}

impl Mul for &ExpExpr {
    /// `exp(L1) · exp(L2) = exp(L1 + L2)`.
    type Output = ExpExpr;
    fn mul(self, rhs: &ExpExpr) -> ExpExpr {
        let mut out = ExpExpr::zero();
        for (arg_a, coeff_a) in &self.terms {
            for (arg_b, coeff_b) in &rhs.terms {
                out.add_part(arg_a + arg_b, coeff_a * coeff_b);
            }
        }
        out
    }
}

impl fmt::Display for ExpExpr {
    /// `coeff*exp(arg)` terms joined by ` + `, polynomial part first,
    /// multi-term coefficients parenthesized: `(1 + u)*exp(u^-1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (arg, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if arg.is_zero() {
                write!(f, "{coeff}")?;
            } else if coeff.is_one() {
                write!(f, "exp({arg})")?;
            } else if coeff.num_terms() == 1 {
                write!(f, "{coeff}*exp({arg})")?;
            } else {
                write!(f, "({coeff})*exp({arg})")?;
            }
        }
        Ok(())
    }
}

impl From<LaurentPoly> for ExpExpr {
    fn from(p: LaurentPoly) -> ExpExpr {
        ExpExpr::from_laurent(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_args_combine_additively() {
        // (z exp(u^-1)) * (z^-1 exp(-u^-1)) = 1
        let a = ExpExpr::term(LaurentPoly::var('z'), LaurentPoly::mono(&[('u', -1)]));
        let b = ExpExpr::term(
            LaurentPoly::mono(&[('z', -1)]),
            -&LaurentPoly::mono(&[('u', -1)]),
        );
        assert!((&a * &b).is_one());
    }

    #[test]
    fn single_exp_term_construction() {
        // exp(u^-1) * (u v^-1 - v^-1) has a single exp argument u^-1
        let coeff = &LaurentPoly::mono(&[('u', 1), ('v', -1)]) - &LaurentPoly::mono(&[('v', -1)]);
        let e = &ExpExpr::exp_of(LaurentPoly::mono(&[('u', -1)])) * &ExpExpr::from_laurent(coeff);
        assert_eq!(e.num_parts(), 1);
        let (arg, _) = e.as_single_term().unwrap();
        assert_eq!(arg, &LaurentPoly::mono(&[('u', -1)]));
    }

    #[test]
    fn additive_identity() {
        let e = ExpExpr::term(LaurentPoly::var('v'), LaurentPoly::var('u'));
        assert_eq!(&e + &ExpExpr::zero(), e);
    }

    #[test]
    fn equality_is_canonical() {
        // v^2 z^2 (1+u) built two ways
        let a = &ExpExpr::from_laurent(LaurentPoly::mono(&[('v', 2), ('z', 2)]))
            * &ExpExpr::from_laurent(&LaurentPoly::one() + &LaurentPoly::var('u'));
        let b = &ExpExpr::from_laurent(&LaurentPoly::one() + &LaurentPoly::var('u'))
            * &ExpExpr::from_laurent(LaurentPoly::mono(&[('z', 2), ('v', 2)]));
        assert_eq!(a, b);
        assert_ne!(
            ExpExpr::from_laurent(LaurentPoly::var('u')),
            ExpExpr::from_laurent(LaurentPoly::var('v'))
        );
    }

    #[test]
    fn rebuilding_is_idempotent() {
        let e = &ExpExpr::term(LaurentPoly::var('z'), LaurentPoly::mono(&[('u', -1)]))
            + &ExpExpr::from_laurent(LaurentPoly::var('v'));
        let rebuilt = e
            .parts()
            .fold(ExpExpr::zero(), |acc, (arg, coeff)| {
                &acc + &ExpExpr::term(coeff.clone(), arg.clone())
            });
        assert_eq!(rebuilt, e);
    }

    #[test]
    fn inverse_of_term() {
        let e = ExpExpr::term(
            LaurentPoly::mono(&[('z', 1)]).scale(&crate::algebra::rat(2, 3)),
            LaurentPoly::mono(&[('u', -1)]),
        );
        let inv = e.try_inverse().unwrap();
        assert!((&e * &inv).is_one());
        let sum = &e + &ExpExpr::one();
        assert_eq!(sum.try_inverse(), Err(Error::NonUnitInverse));
    }

    #[test]
    fn display_terms() {
        let e = &ExpExpr::from_laurent(LaurentPoly::var('v'))
            + &ExpExpr::term(
                &LaurentPoly::one() + &LaurentPoly::var('u'),
                LaurentPoly::mono(&[('u', -1)]),
            );
        assert_eq!(e.to_string(), "v + (1 + u)*exp(u^-1)");
    }
}
