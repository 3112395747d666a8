use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// A single-letter variable name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(char);

impl VarId {
    pub fn new(name: char) -> Result<VarId> {
        if name.is_ascii_alphabetic() {
            Ok(VarId(name))
        } else {
            Err(Error::UnknownVariable(name.to_string()))
        }
    }

    pub fn name(self) -> char {
        self.0
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A product of variable powers with integer (possibly negative) exponents.
///
/// Zero exponents are never stored, so structural equality is semantic
/// equality. The ordering is graded-lexicographic: lower total degree first,
/// and within a degree the monomial with the larger exponent on the
/// alphabetically earliest differing variable comes first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: BTreeMap<VarId, i64>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn var(v: VarId) -> Monomial {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: VarId, e: i64) -> Monomial {
        let mut exps = BTreeMap::new();
        if e != 0 {
            exps.insert(v, e);
        }
        Monomial { exps }
    }

    /// Builds a monomial from `(name, exponent)` pairs. Panics on a
    /// non-alphabetic name; intended for statically known variables.
    pub fn from_pairs(pairs: &[(char, i64)]) -> Monomial {
        let mut m = Monomial::one();
        for &(c, e) in pairs {
            let v = VarId::new(c).expect("variable name");
            m = m.mul(&Monomial::var_pow(v, e));
        }
        m
    }

    pub fn degree(&self) -> i64 {
        self.exps.values().sum()
    }

    pub fn exponent(&self, v: VarId) -> i64 {
        self.exps.get(&v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, i64)> + '_ {
        self.exps.iter().map(|(&v, &e)| (v, e))
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.exps.keys().copied()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (&v, &e) in &other.exps {
            let entry = exps.entry(v).or_insert(0);
            *entry += e;
            if *entry == 0 {
                exps.remove(&v);
            }
        }
        Monomial { exps }
    }

    pub fn inv(&self) -> Monomial {
        Monomial { exps: self.exps.iter().map(|(&v, &e)| (v, -e)).collect() }
    }

    pub fn pow(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial { exps: self.exps.iter().map(|(&v, &e)| (v, e * k)).collect() }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Same degree: walk variables alphabetically, missing = 0. The
        // monomial with the larger exponent on the first differing variable
        // sorts first.
        let mut a = self.exps.iter().peekable();
        let mut b = other.exps.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some(&(&va, &ea)), Some(&(&vb, &eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        if ea != 0 {
                            return eb_cmp(ea, 0);
                        }
                        a.next();
                    }
                    Ordering::Greater => {
                        if eb != 0 {
                            return eb_cmp(0, eb);
                        }
                        b.next();
                    }
                    Ordering::Equal => {
                        if ea != eb {
                            return eb_cmp(ea, eb);
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
    }
}

// larger exponent on the earlier variable => earlier in the order
fn eb_cmp(ea: i64, eb: i64) -> Ordering {
    eb.cmp(&ea)
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.iter() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
