use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

use super::{Monomial, VarId};

/// Exact rational scalar.
pub type Rat = num_rational::BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// A finite sum of monomials with exact rational coefficients.
///
/// Canonical form: no zero coefficients. A `LaurentPoly` is a *unit* iff it
/// consists of exactly one term; only units are invertible.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::int(1)
    }

    pub fn int(n: i64) -> LaurentPoly {
        LaurentPoly::constant(rat_int(n))
    }

    pub fn constant(c: Rat) -> LaurentPoly {
        LaurentPoly::monomial(Monomial::one(), c)
    }

    pub fn monomial(m: Monomial, c: Rat) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_var(v: VarId) -> LaurentPoly {
        LaurentPoly::monomial(Monomial::var(v), Rat::one())
    }

    /// Convenience constructor for statically known variables: `var('u')`.
    pub fn var(name: char) -> LaurentPoly {
        LaurentPoly::from_var(VarId::new(name).expect("variable name"))
    }

    /// `mono(&[('u', -1), ('v', 2)])` is the monomial u^-1 v^2.
    pub fn mono(pairs: &[(char, i64)]) -> LaurentPoly {
        LaurentPoly::monomial(Monomial::from_pairs(pairs), Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient of `u^k` viewed as a polynomial in the single variable
    /// `v`; the rest of the monomial must be 1.
    pub fn univariate_coefficient(&self, v: VarId, k: i64) -> Rat {
        self.coefficient(&Monomial::var_pow(v, k))
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            out.extend(m.vars());
        }
        out
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    /// The single `(monomial, coefficient)` pair if this is a unit.
    pub fn as_unit(&self) -> Option<(&Monomial, &Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn inverse(&self) -> Result<LaurentPoly> {
        let (m, c) = self.as_unit().ok_or(Error::NonUnitInverse)?;
        Ok(LaurentPoly::monomial(m.inv(), c.recip()))
    }

    /// Exact integer power; negative exponents require a unit.
    pub fn pow(&self, k: i64) -> Result<LaurentPoly> {
        if k < 0 {
            let (m, c) = self.as_unit().ok_or(Error::NonUnitInverse)?;
            let inv = c.recip();
            let mut acc = Rat::one();
            for _ in 0..(-k) {
                acc *= inv.clone();
            }
            return Ok(LaurentPoly::monomial(m.pow(k), acc));
        }
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        Ok(out)
    }

    /// Replaces each bound variable by its image and recanonicalizes.
    /// Variables absent from `bindings` are left alone.
    pub fn substitute(&self, bindings: &BTreeMap<VarId, LaurentPoly>) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = LaurentPoly::constant(c.clone());
            for (v, e) in m.iter() {
                match bindings.get(&v) {
                    Some(image) => acc = &acc * &image.pow(e)?,
                    None => acc = acc.mul_monomial(&Monomial::var_pow(v, e)),
                }
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Formal partial derivative; the power rule `d(v^e) = e v^{e-1}` covers
    /// negative exponents as well.
    pub fn partial(&self, v: VarId) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let lowered = m.mul(&Monomial::var_pow(v, -1));
            out.add_term(lowered, c * rat_int(e));
        }
        out
    }

    /// Splits off the per-variable minimum exponents shared by all terms,
    /// returning `(factor, remainder)` with `self = factor * remainder`.
    /// Used for factored rendering such as `v^3*z^3*(2 + 4*u + 3*u^2)`.
    pub fn monomial_content(&self) -> (Monomial, LaurentPoly) {
        if self.is_zero() {
            return (Monomial::one(), LaurentPoly::zero());
        }
        let mut mins: BTreeMap<VarId, i64> = BTreeMap::new();
        let vars = self.vars();
        for v in &vars {
            let min = self
                .terms
                .keys()
                .map(|m| m.exponent(*v))
                .min()
                .unwrap_or(0);
            if min != 0 {
                mins.insert(*v, min);
            }
        }
        let mut factor = Monomial::one();
        for (&v, &e) in &mins {
            factor = factor.mul(&Monomial::var_pow(v, e));
        }
        (factor.clone(), self.mul_monomial(&factor.inv()))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

fn write_rat(f: &mut fmt::Formatter<'_>, c: &Rat) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical flat rendering: terms in ascending monomial order, joined
    /// by ` + ` / ` - `, e.g. `2 + 4*u + 3*u^2` or `-u^-1*x^-1 + x^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write_rat(f, &abs)?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write_rat(f, &abs)?;
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_cancels_inverses() {
        let u = LaurentPoly::var('u');
        assert!((&u + &-&u).is_zero());
    }

    #[test]
    fn negative_exponent_combination() {
        // x^-1 + (-x^-1 u^-1) = (u-1)/(xu)
        let a = LaurentPoly::mono(&[('x', -1)]);
        let b = -&LaurentPoly::mono(&[('x', -1), ('u', -1)]);
        let sum = &a + &b;
        let direct = &(&LaurentPoly::var('u') - &LaurentPoly::one())
            * &LaurentPoly::mono(&[('x', -1), ('u', -1)]);
        assert_eq!(sum, direct);
    }

    #[test]
    fn doubling() {
        let p = &LaurentPoly::one() + &LaurentPoly::var('u');
        let two_p = &p + &p;
        assert_eq!(two_p, p.scale(&rat_int(2)));
    }

    #[test]
    fn mul_constant_identities() {
        // (u^-1 v) * ((u-1) v^-1 z^-1) = z^-1 - u^-1 z^-1
        let lhs = &LaurentPoly::mono(&[('u', -1), ('v', 1)])
            * &(&(&LaurentPoly::var('u') - &LaurentPoly::one())
                * &LaurentPoly::mono(&[('v', -1), ('z', -1)]));
        let rhs = &LaurentPoly::mono(&[('z', -1)]) - &LaurentPoly::mono(&[('u', -1), ('z', -1)]);
        assert_eq!(lhs, rhs);
        let p = &LaurentPoly::var('u') + &LaurentPoly::int(3);
        assert_eq!(&p * &LaurentPoly::one(), p);
    }

    #[test]
    fn square_binomial() {
        let p = &LaurentPoly::one() + &LaurentPoly::var('u');
        let sq = &p * &p;
        let expect = &(&LaurentPoly::one() + &LaurentPoly::var('u').scale(&rat_int(2)))
            + &LaurentPoly::mono(&[('u', 2)]);
        assert_eq!(sq, expect);
    }

    #[test]
    fn pow_unit_inverse() {
        let vz = LaurentPoly::mono(&[('v', 1), ('z', 1)]);
        assert_eq!(vz.pow(-1).unwrap(), LaurentPoly::mono(&[('v', -1), ('z', -1)]));
        let p = &LaurentPoly::var('x') + &LaurentPoly::int(3);
        let sq = p.pow(2).unwrap();
        assert_eq!(sq.univariate_coefficient(VarId::new('x').unwrap(), 1), rat_int(6));
        assert_eq!(p.pow(-1), Err(Error::NonUnitInverse));
    }

    #[test]
    fn pow_unit_round_trip() {
        let m = LaurentPoly::mono(&[('u', 2), ('z', -1)]).scale(&rat(3, 2));
        for k in -3..=3i64 {
            let prod = &m.pow(k).unwrap() * &m.pow(-k).unwrap();
            assert!(prod.is_one());
        }
    }

    #[test]
    fn substitution_specializes() {
        // v^2 z^2 (1+u) at v=1, z=1 -> 1+u
        let p = &LaurentPoly::mono(&[('v', 2), ('z', 2)])
            * &(&LaurentPoly::one() + &LaurentPoly::var('u'));
        let mut b = BTreeMap::new();
        b.insert(VarId::new('v').unwrap(), LaurentPoly::one());
        b.insert(VarId::new('z').unwrap(), LaurentPoly::one());
        assert_eq!(
            p.substitute(&b).unwrap(),
            &LaurentPoly::one() + &LaurentPoly::var('u')
        );
        // empty bindings: identity
        assert_eq!(p.substitute(&BTreeMap::new()).unwrap(), p);
    }

    #[test]
    fn substitution_inflates() {
        // b c (1+u) at b=xv, c=vz -> x v^2 z (1+u)
        let p = &LaurentPoly::mono(&[('b', 1), ('c', 1)])
            * &(&LaurentPoly::one() + &LaurentPoly::var('u'));
        let mut bind = BTreeMap::new();
        bind.insert(VarId::new('b').unwrap(), LaurentPoly::mono(&[('x', 1), ('v', 1)]));
        bind.insert(VarId::new('c').unwrap(), LaurentPoly::mono(&[('v', 1), ('z', 1)]));
        let expect = &LaurentPoly::mono(&[('x', 1), ('v', 2), ('z', 1)])
            * &(&LaurentPoly::one() + &LaurentPoly::var('u'));
        assert_eq!(p.substitute(&bind).unwrap(), expect);
    }

    #[test]
    fn display_flat() {
        let p = &LaurentPoly::int(2)
            + &(&LaurentPoly::var('u').scale(&rat_int(4)) + &LaurentPoly::mono(&[('u', 2)]).scale(&rat_int(3)));
        assert_eq!(p.to_string(), "2 + 4*u + 3*u^2");
        let q = &LaurentPoly::mono(&[('z', -1)]) - &LaurentPoly::mono(&[('u', -1), ('z', -1)]);
        assert_eq!(q.to_string(), "-u^-1*z^-1 + z^-1");
    }

    #[test]
    fn monomial_content_factoring() {
        let p = &LaurentPoly::mono(&[('v', 3), ('z', 3)])
            * &(&LaurentPoly::int(2)
                + &(&LaurentPoly::var('u').scale(&rat_int(4))
                    + &LaurentPoly::mono(&[('u', 2)]).scale(&rat_int(3))));
        let (factor, rest) = p.monomial_content();
        assert_eq!(factor.to_string(), "v^3*z^3");
        assert_eq!(rest.to_string(), "2 + 4*u + 3*u^2");
    }
}
