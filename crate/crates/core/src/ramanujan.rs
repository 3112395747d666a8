//! Recurrence-built tables of the Ramanujan polynomials.
//!
//! `psi_k(r,x)` is computed by two independent recurrences and `Q_{n,k}(x)`
//! both by its own three-term recurrence and by the shift
//! `Q_{n,k}(x) = psi_{k+1}(n-1, x+n)`. The
//! classical summation identities are exposed as boolean checks.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::algebra::{rat_int, LaurentPoly, Rat};
use crate::trees;
use crate::{Error, Result};

/// Dense univariate polynomial in `x` over exact rationals, ascending
/// degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> UniPoly {
        UniPoly::default()
    }

    pub fn one() -> UniPoly {
        UniPoly::constant(Rat::one())
    }

    pub fn x() -> UniPoly {
        UniPoly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn constant(c: Rat) -> UniPoly {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn int(n: i64) -> UniPoly {
        UniPoly::constant(rat_int(n))
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> UniPoly {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, at: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    /// Exact composition `p(x + shift)` by Horner over polynomials.
    pub fn shift_x(&self, shift: &Rat) -> UniPoly {
        let arg = UniPoly::from_coeffs(vec![shift.clone(), Rat::one()]);
        self.eval_poly(&arg)
    }

    pub fn eval_poly(&self, at: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Horner evaluation at a Laurent polynomial argument.
    pub fn eval_laurent(&self, at: &LaurentPoly) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + &LaurentPoly::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, k: usize) -> UniPoly {
        let mut out = UniPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UniPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        UniPoly::from_coeffs(coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for UniPoly {
    /// Descending powers, matching the usual table layout:
    /// `x^2 - 3*x + 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                if abs.is_integer() {
                    write!(f, "{}", abs.numer())?;
                } else {
                    write!(f, "{}/{}", abs.numer(), abs.denom())?;
                }
            }
            match i {
                0 => {}
                1 => {
                    if show_coeff {
                        write!(f, "*x")?;
                    } else {
                        write!(f, "x")?;
                    }
                }
                _ => {
                    if show_coeff {
                        write!(f, "*x^{i}")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Table of `psi_k(r,x)` for `0 <= r <= r_max`, `1 <= k <= r+1`, with the
/// boundary conditions `psi_1(0,x) = 1`, `psi_0 = 0`, `psi_k(r,x) = 0` for
/// `k > r+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiTable {
    r_max: usize,
    // rows[r][k-1] for k in 1..=r+1
    rows: Vec<Vec<UniPoly>>,
}

impl PsiTable {
    pub fn r_max(&self) -> usize {
        self.r_max
    }

    /// `psi_k(r, x)`; zero outside the nonzero band, error past `r_max`.
    pub fn get(&self, r: usize, k: usize) -> Result<UniPoly> {
        if r > self.r_max {
            return Err(Error::TableTooSmall(r));
        }
        if k == 0 || k > r + 1 {
            return Ok(UniPoly::zero());
        }
        Ok(self.rows[r][k - 1].clone())
    }
}

/// Fills the table with Ramanujan's recurrence
/// `psi_k(r+1,x) = (x-1) psi_k(r,x-1) + psi_{k-1}(r+1,x) - psi_{k-1}(r+1,x-1)`.
///
/// Each row is filled with `k` increasing so that `psi_{k-1}(r+1, ·)` exists
/// before `psi_k(r+1, ·)` is computed.
pub fn psi_via_ramanujan(r_max: usize) -> PsiTable {
    let minus_one = rat_int(-1);
    let x_minus_1 = UniPoly::from_ints(&[-1, 1]);
    let mut rows: Vec<Vec<UniPoly>> = vec![vec![UniPoly::one()]];
    for r in 0..r_max {
        let mut row: Vec<UniPoly> = Vec::with_capacity(r + 2);
        for k in 1..=r + 2 {
            let prev = if k <= r + 1 { rows[r][k - 1].clone() } else { UniPoly::zero() };
            let mut entry = &x_minus_1 * &prev.shift_x(&minus_one);
            if k >= 2 {
                let left = &row[k - 2];
                entry = &entry + &(left - &left.shift_x(&minus_one));
            }
            row.push(entry);
        }
        rows.push(row);
    }
    PsiTable { r_max, rows }
}

/// Fills the table with the alternative two-term recurrence
/// `psi_k(r,x) = (x-r-k+1) psi_k(r-1,x) + (r+k-2) psi_{k-1}(r-1,x)`.
pub fn psi_via_bew(r_max: usize) -> PsiTable {
    let mut rows: Vec<Vec<UniPoly>> = vec![vec![UniPoly::one()]];
    for r in 1..=r_max {
        let mut row: Vec<UniPoly> = Vec::with_capacity(r + 1);
        for k in 1..=r + 1 {
            let up = if k <= r { rows[r - 1][k - 1].clone() } else { UniPoly::zero() };
            let diag = if k >= 2 { rows[r - 1][k - 2].clone() } else { UniPoly::zero() };
            let linear = &UniPoly::x() - &UniPoly::int((r + k) as i64 - 1);
            let entry = &(&linear * &up) + &diag.scale(&rat_int((r + k) as i64 - 2));
            row.push(entry);
        }
        rows.push(row);
    }
    PsiTable { r_max, rows }
}

/// Table of `Q_{n,k}(x)` for `1 <= n <= n_max`, `0 <= k <= n-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QTable {
    n_max: usize,
    // rows[n-1][k]
    rows: Vec<Vec<UniPoly>>,
}

impl QTable {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn get(&self, n: usize, k: usize) -> Result<UniPoly> {
        if n == 0 || n > self.n_max {
            return Err(Error::TableTooSmall(n));
        }
        if k > n - 1 {
            return Ok(UniPoly::zero());
        }
        Ok(self.rows[n - 1][k].clone())
    }
}

/// Builds the Q table from the three-term recurrence
/// `Q_{n,k}(x) = (x-k+1) Q_{n-1,k}(x+1) + (n+k-2) Q_{n-1,k-1}(x+1)`
/// with base `Q_{1,0}(x) = 1`.
pub fn q_via_shor(n_max: usize) -> QTable {
    assert!(n_max >= 1);
    let one = Rat::one();
    let mut rows: Vec<Vec<UniPoly>> = vec![vec![UniPoly::one()]];
    for n in 2..=n_max {
        let mut row = Vec::with_capacity(n);
        for k in 0..n {
            let same = if k <= n - 2 {
                rows[n - 2][k].shift_x(&one)
            } else {
                UniPoly::zero()
            };
            let down = if k >= 1 { rows[n - 2][k - 1].shift_x(&one) } else { UniPoly::zero() };
            let linear = &UniPoly::x() - &UniPoly::int(k as i64 - 1);
            let entry = &(&linear * &same) + &down.scale(&rat_int((n + k) as i64 - 2));
            row.push(entry);
        }
        rows.push(row);
    }
    QTable { n_max, rows }
}

/// `Q_{n,k}(x) = psi_{k+1}(n-1, x+n)`.
pub fn q_via_psi(n: usize, k: usize, psi: &PsiTable) -> Result<UniPoly> {
    assert!(n >= 1);
    let p = psi.get(n - 1, k + 1)?;
    Ok(p.shift_x(&rat_int(n as i64)))
}

/// Ramanujan's identity `Σ_{k=1}^{r+1} psi_k(r,x) = x^r` for all `r <= r_max`.
pub fn verify_psi_sum(r_max: usize) -> bool {
    let table = psi_via_ramanujan(r_max);
    for r in 0..=r_max {
        let mut sum = UniPoly::zero();
        for k in 1..=r + 1 {
            sum = &sum + &table.get(r, k).unwrap();
        }
        if sum != UniPoly::x().pow(r) {
            return false;
        }
    }
    true
}

/// The row-sum identity `Σ_{k=0}^{n-1} Q_{n,k}(x) = (x+n)^{n-1}` for all
/// `n <= n_max`.
pub fn verify_shor_sum(n_max: usize) -> bool {
    let table = q_via_shor(n_max);
    for n in 1..=n_max {
        let mut sum = UniPoly::zero();
        for k in 0..n {
            sum = &sum + &table.get(n, k).unwrap();
        }
        let expect = UniPoly::from_coeffs(vec![rat_int(n as i64), Rat::one()]).pow(n - 1);
        if sum != expect {
            return false;
        }
    }
    true
}

/// The evaluations of `Q_{n,·}` at 0, 1 and -1, indexed by `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialValues {
    pub at_zero: Vec<Rat>,
    pub at_one: Vec<Rat>,
    pub at_minus_one: Vec<Rat>,
}

/// Evaluates `Q_{n,k}` at 0, 1 and -1. With `cross_check` the values are
/// compared against the tree-enumeration oracles: `Q(0) = R(n,k)`,
/// `Q(1) = T(n,k)`, and `Q(-1)` counts rooted trees on `[n]` with `k`
/// improper edges whose vertex 1 is a leaf.
pub fn special_values(n: usize, cross_check: bool) -> Result<SpecialValues> {
    assert!(n >= 1);
    let table = q_via_shor(n);
    let mut out = SpecialValues {
        at_zero: Vec::with_capacity(n),
        at_one: Vec::with_capacity(n),
        at_minus_one: Vec::with_capacity(n),
    };
    for k in 0..n {
        let q = table.get(n, k)?;
        out.at_zero.push(q.eval(&Rat::zero()));
        out.at_one.push(q.eval(&Rat::one()));
        out.at_minus_one.push(q.eval(&rat_int(-1)));
    }
    if cross_check {
        let r_counts = trees::count_r(n)?;
        let t_counts = trees::count_t(n)?;
        let leaf_counts = trees::count_r_with_leaf_one(n)?;
        for k in 0..n {
            let matches = out.at_zero[k] == rat_int(*r_counts.get(k).unwrap_or(&0) as i64)
                && out.at_one[k] == rat_int(*t_counts.get(k).unwrap_or(&0) as i64)
                && out.at_minus_one[k] == rat_int(*leaf_counts.get(k).unwrap_or(&0) as i64);
            assert!(matches, "special value cross-check failed at n={n}, k={k}");
        }
    }
    Ok(out)
}
