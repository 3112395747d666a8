//! Cross-validation of the solved functional equations against the grammar
//! engine, the recurrence tables, and the brute-force tree counts.
//!
//! Every function here compares two independently computed objects and
//! returns whether they agree exactly; `Err` is reserved for genuinely
//! failed preconditions (bounds, degenerate parameters), not mismatches.

use num_traits::One;

use super::solve::{solve_equation, SeriesEquation};
use super::{binomial, TruncatedSeries};
use crate::algebra::{rat_int, ExpExpr, LaurentPoly, Rat, VarId};
use crate::grammar::preset;
use crate::ramanujan::{psi_via_ramanujan, q_via_shor, UniPoly};
use crate::trees::{count_r, count_t, max_n};
use crate::Result;

fn factorial(n: usize) -> Rat {
    (1..=n).fold(Rat::one(), |acc, k| acc * rat_int(k as i64))
}

fn constant(p: LaurentPoly, order: usize) -> TruncatedSeries {
    TruncatedSeries::constant(ExpExpr::from_laurent(p), order)
}

fn bind(pairs: &[(char, LaurentPoly)]) -> std::collections::BTreeMap<VarId, LaurentPoly> {
    pairs
        .iter()
        .map(|(c, p)| (VarId::new(*c).unwrap(), p.clone()))
        .collect()
}

/// Solves the two tree equations independently and checks `T = exp(R)`.
pub fn verify_t_equals_exp_r(order: usize) -> Result<bool> {
    let r = solve_equation(&SeriesEquation::R, order)?;
    let t = solve_equation(&SeriesEquation::T, order)?;
    Ok(r.exp()? == t)
}

/// Checks that the solved series reproduce the grammar-derived improper-edge
/// polynomials: the order-`n` coefficients against the `(n-1)`-st derivative
/// of `vz` and the `n`-th derivative of `z`.
pub fn verify_solver_matches_grammar(order: usize) -> Result<bool> {
    let g = preset("G_R").unwrap();
    let chain_vz = g.derive_chain(
        &ExpExpr::from_laurent(LaurentPoly::mono(&[('v', 1), ('z', 1)])),
        order.saturating_sub(1),
    )?;
    let chain_z = g.derive_chain(&ExpExpr::from_laurent(LaurentPoly::var('z')), order)?;
    let r = solve_equation(&SeriesEquation::R, order)?;
    let t = solve_equation(&SeriesEquation::T, order)?;
    for n in 1..=order {
        // D^{n-1}(vz) = v^n z^n R_n(u)
        let r_n = r.coeff(n).scale(&factorial(n));
        let expect =
            r_n.mul_laurent(&LaurentPoly::mono(&[('v', n as i64), ('z', n as i64)]));
        if chain_vz[n - 1] != expect {
            return Ok(false);
        }
        // D^n(z) = v^n z^{n+1} T_n(u)
        let t_n = t.coeff(n).scale(&factorial(n));
        let expect =
            t_n.mul_laurent(&LaurentPoly::mono(&[('v', n as i64), ('z', n as i64 + 1)]));
        if chain_z[n] != expect {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks the functional equation of `gen(z,t)`:
/// `gen(z,t) = z·exp((z^-1 - u^-1 z^-1 + u^-1 v t)·gen(z,t) + u^-1 - 1)`,
/// plus its specialization `v = z = 1`, which must coincide with the solved
/// `T` equation.
pub fn verify_gen_z(order: usize) -> Result<bool> {
    let g = preset("G_R").unwrap();
    let gen = g.gen_series(&ExpExpr::from_laurent(LaurentPoly::var('z')), order)?;
    let zinv = LaurentPoly::mono(&[('z', -1)]);
    let a = &zinv - &LaurentPoly::mono(&[('u', -1), ('z', -1)]);
    let b = LaurentPoly::mono(&[('u', -1), ('v', 1)]);
    let shift = &LaurentPoly::mono(&[('u', -1)]) - &LaurentPoly::one();
    let exponent = gen
        .mul_laurent(&a)
        .add(&gen.mul_t().mul_laurent(&b))
        .add(&constant(shift, order));
    let rhs = exponent.exp()?.mul_laurent(&LaurentPoly::var('z'));
    if rhs != gen {
        return Ok(false);
    }
    let at_one = bind(&[('v', LaurentPoly::one()), ('z', LaurentPoly::one())]);
    let specialized = TruncatedSeries::new(
        gen.coeffs()
            .iter()
            .map(|c| c.substitute(&at_one))
            .collect::<Result<_>>()?,
    );
    Ok(specialized == solve_equation(&SeriesEquation::T, order)?)
}

/// Checks the two product identities for `gen(u^-1,t)` and `gen(v^-1,t)`:
/// with `w` either `gen(u^-1,t)` or `u^-1 v·gen(v^-1,t)`,
/// `(1 - w)·e^w = e^{u^-1}·(1 - u^-1 + u^-1 v z t)`.
pub fn verify_gen_u_and_v(order: usize) -> Result<bool> {
    let g = preset("G_R").unwrap();
    let uinv = LaurentPoly::mono(&[('u', -1)]);
    let rhs = constant(&LaurentPoly::one() - &uinv, order)
        .add(&TruncatedSeries::monomial(
            ExpExpr::from_laurent(LaurentPoly::mono(&[('u', -1), ('v', 1), ('z', 1)])),
            1,
            order.max(1),
        )
        .truncate(order))
        .mul_coeff(&ExpExpr::exp_of(uinv.clone()));
    let gen_u = g.gen_series(&ExpExpr::from_laurent(uinv), order)?;
    let gen_v = g.gen_series(&ExpExpr::from_laurent(LaurentPoly::mono(&[('v', -1)])), order)?;
    let w_v = gen_v.mul_laurent(&LaurentPoly::mono(&[('u', -1), ('v', 1)]));
    for w in [gen_u, w_v] {
        let lhs = constant(LaurentPoly::one(), order).sub(&w).mul(&w.exp()?);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks the closed form of the degree-marked generating function:
/// `gen(a,t) = a·exp(x z^-1·y)` with `y` the solved auxiliary series, and
/// the expansion of its coefficients through the `Q` polynomials evaluated
/// at `x z^-1`.
pub fn verify_gen_a_closed_form(order: usize) -> Result<bool> {
    let g = preset("G_Q").unwrap();
    let gen = g.gen_series(&ExpExpr::from_laurent(LaurentPoly::var('a')), order)?;
    let y = solve_equation(&SeriesEquation::YGrammar, order)?;
    let rhs = y
        .mul_laurent(&LaurentPoly::mono(&[('x', 1), ('z', -1)]))
        .exp()?
        .mul_laurent(&LaurentPoly::var('a'));
    if rhs != gen {
        return Ok(false);
    }
    // coefficient of t^n/n!: a x v^n z^{n-1} Σ_k Q_{n,k}(x z^-1) u^k
    let q = q_via_shor(order.max(1));
    let xz = LaurentPoly::mono(&[('x', 1), ('z', -1)]);
    for n in 1..=order {
        let mut inner = LaurentPoly::zero();
        for k in 0..n {
            let val = q.get(n, k)?.eval_laurent(&xz);
            inner = &inner + &(&val * &LaurentPoly::mono(&[('u', k as i64)]));
        }
        let lead = LaurentPoly::mono(&[('a', 1), ('x', 1), ('v', n as i64), ('z', n as i64 - 1)]);
        let expect = ExpExpr::from_laurent(&lead * &inner);
        if gen.coeff(n).scale(&factorial(n)) != expect {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks, at each exact rational sample `u₀ ≠ 1`, that the solved scalar
/// equation reproduces `Σ_n (Σ_k Q_{n,k}(x)/(1-u₀)^k) t^n/n!` through
/// `(e^{x y} - 1)/x`, and that substituting `a = v = z = 1`,
/// `u = 1/(1-u₀)` into `gen(a,t)` gives the same series as `e^{x y}`.
pub fn verify_q_series(order: usize, u_samples: &[Rat]) -> Result<bool> {
    let g = preset("G_Q").unwrap();
    let gen = g.gen_series(&ExpExpr::from_laurent(LaurentPoly::var('a')), order)?;
    let q = q_via_shor(order.max(1));
    for u0 in u_samples {
        let y = solve_equation(&SeriesEquation::YZeng(u0.clone()), order)?;
        let exy = y.mul_laurent(&LaurentPoly::var('x')).exp()?;
        let big_y = exy
            .sub(&constant(LaurentPoly::one(), order))
            .mul_laurent(&LaurentPoly::mono(&[('x', -1)]));
        let scale = Rat::one() - u0;
        for n in 1..=order {
            let mut expect = UniPoly::zero();
            let mut weight = Rat::one();
            for k in 0..n {
                expect = &expect + &q.get(n, k)?.scale(&weight.recip());
                weight *= scale.clone();
            }
            // expect currently holds Σ_k Q_{n,k}(x)·(1-u₀)^{-k}
            let expect_laurent = expect.eval_laurent(&LaurentPoly::var('x'));
            if big_y.coeff(n).scale(&factorial(n))
                != ExpExpr::from_laurent(expect_laurent)
            {
                return Ok(false);
            }
        }
        let u_value = LaurentPoly::constant(scale.recip());
        let bindings = bind(&[
            ('a', LaurentPoly::one()),
            ('v', LaurentPoly::one()),
            ('z', LaurentPoly::one()),
            ('u', u_value),
        ]);
        let specialized = TruncatedSeries::new(
            gen.coeffs()
                .iter()
                .map(|c| c.substitute(&bindings))
                .collect::<Result<_>>()?,
        );
        if specialized != exy {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks the expansions obtained from the substitution `u = a`, `t = a x`:
/// `y = Σ_n (Σ_k R(n,k) a^{n+k}) x^n/n!`, `e^y = 1 + Σ_n (Σ_k T(n,k)
/// a^{n+k}) x^n/n!`, and `e^{m y} = 1 + m·Σ_n (Σ_k Q_{n,k}(m) a^{n+k})
/// x^n/n!` for sampled rationals `m`. Tree histograms bound the range.
pub fn verify_tree_count_expansions(order: usize) -> Result<bool> {
    let r = solve_equation(&SeriesEquation::R, order)?;
    let to_a = bind(&[('u', LaurentPoly::var('a'))]);
    let y = TruncatedSeries::new(
        r.coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| {
                Ok(c
                    .substitute(&to_a)?
                    .mul_laurent(&LaurentPoly::mono(&[('a', n as i64)])))
            })
            .collect::<Result<_>>()?,
    );
    let hist_poly = |hist: &[u64]| {
        let mut p = LaurentPoly::zero();
        for (k, &count) in hist.iter().enumerate() {
            p = &p
                + &LaurentPoly::mono(&[('a', k as i64)]).scale(&rat_int(count as i64));
        }
        p
    };
    let r_limit = order.min(max_n());
    for n in 1..=r_limit {
        let expect = &hist_poly(&count_r(n)?) * &LaurentPoly::mono(&[('a', n as i64)]);
        if y.coeff(n).scale(&factorial(n)) != ExpExpr::from_laurent(expect) {
            return Ok(false);
        }
    }
    let ey = y.exp()?;
    let t_limit = order.min(max_n() - 1);
    for n in 1..=t_limit {
        let expect = &hist_poly(&count_t(n)?) * &LaurentPoly::mono(&[('a', n as i64)]);
        if ey.coeff(n).scale(&factorial(n)) != ExpExpr::from_laurent(expect) {
            return Ok(false);
        }
    }
    let q = q_via_shor(order.max(1));
    for m in [rat_int(2), crate::algebra::rat(5, 2), rat_int(-1)] {
        let emy = y.scale(&m).exp()?;
        if emy.coeff(0) != ExpExpr::one() {
            return Ok(false);
        }
        for n in 1..=order {
            let mut expect = LaurentPoly::zero();
            for k in 0..n {
                let c = q.get(n, k)?.eval(&m) * &m;
                expect = &expect
                    + &LaurentPoly::mono(&[('a', (n + k) as i64)]).scale(&c);
            }
            if emy.coeff(n).scale(&factorial(n)) != ExpExpr::from_laurent(expect) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks the defining expansion of the `ψ` polynomials as formal power
/// series in `u` to order `M`, coefficientwise in `x`:
/// `Σ_{k≥0} (x+k)^{r+k} e^{-u(x+k)} u^k/k! = Σ_{k=1}^{r+1} ψ_k(r,x)/(1-u)^{k+r}`.
pub fn verify_psi_defining(r: usize, u_order: usize) -> Result<bool> {
    let psi = psi_via_ramanujan(r);
    for m in 0..=u_order {
        // left side: Σ_{k=0}^{m} (-1)^{m-k} (x+k)^{r+m} / ((m-k)! k!)
        let mut lhs = UniPoly::zero();
        for k in 0..=m {
            let base = UniPoly::from_coeffs(vec![rat_int(k as i64), Rat::one()]);
            let sign = if (m - k) % 2 == 0 { Rat::one() } else { -Rat::one() };
            let c = sign / (factorial(m - k) * factorial(k));
            lhs = &lhs + &base.pow(r + m).scale(&c);
        }
        // right side: Σ_{k=1}^{r+1} ψ_k(r,x) · C(k+r+m-1, m)
        let mut rhs = UniPoly::zero();
        for k in 1..=r + 1 {
            let c = binomial(k + r + m - 1, m);
            rhs = &rhs + &psi.get(r, k)?.scale(&c);
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn exp_r_equals_t() {
        assert!(verify_t_equals_exp_r(6).unwrap());
    }

    #[test]
    fn solver_and_grammar_agree() {
        assert!(verify_solver_matches_grammar(5).unwrap());
    }

    #[test]
    fn gen_z_functional_equation() {
        assert!(verify_gen_z(4).unwrap());
    }

    #[test]
    fn gen_u_and_v_product_identities() {
        assert!(verify_gen_u_and_v(4).unwrap());
    }

    #[test]
    fn gen_a_closed_form() {
        assert!(verify_gen_a_closed_form(3).unwrap());
    }

    #[test]
    fn q_series_at_rational_samples() {
        assert!(verify_q_series(4, &[rat_int(0), rat(1, 2)]).unwrap());
    }

    #[test]
    fn tree_count_expansions() {
        assert!(verify_tree_count_expansions(5).unwrap());
    }

    #[test]
    fn psi_defining_expansion() {
        for r in 0..=3usize {
            assert!(verify_psi_defining(r, 5).unwrap(), "r = {r}");
        }
    }
}
