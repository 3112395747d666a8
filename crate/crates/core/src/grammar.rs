//! Context-free grammars and the formal derivative they induce.
//!
//! A grammar is a finite set of substitution rules `var -> polynomial`. It
//! induces the derivation
//!
//! ```text
//! D = Σ_v rule(v) · ∂/∂v
//! ```
//!
//! extended to the exponential algebra by `D(exp(L)) = D(L)·exp(L)`. The
//! Leibniz rule and `D(m^-1) = -m^-2 D(m)` are consequences of the power
//! rule in [`LaurentPoly::partial`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::One;

use crate::algebra::{rat_int, ExpExpr, LaurentPoly, Rat, VarId};
use crate::parse::parse_expexpr_at;
use crate::series::TruncatedSeries;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    rules: BTreeMap<VarId, LaurentPoly>,
    alphabet: BTreeSet<VarId>,
}

impl Grammar {
    pub fn new(rules: BTreeMap<VarId, LaurentPoly>) -> Grammar {
        let mut alphabet: BTreeSet<VarId> = rules.keys().copied().collect();
        for rhs in rules.values() {
            alphabet.extend(rhs.vars());
        }
        Grammar { rules, alphabet }
    }

    pub fn alphabet(&self) -> &BTreeSet<VarId> {
        &self.alphabet
    }

    pub fn rules(&self) -> impl Iterator<Item = (VarId, &LaurentPoly)> + '_ {
        self.rules.iter().map(|(&v, p)| (v, p))
    }

    fn rule(&self, v: VarId) -> Result<&LaurentPoly> {
        self.rules
            .get(&v)
            .ok_or_else(|| Error::UnknownVariable(v.name().to_string()))
    }

    /// One application of the formal derivative to a Laurent polynomial.
    pub fn derive_laurent(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for v in p.vars() {
            let rule = self.rule(v)?;
            out = &out + &(&p.partial(v) * rule);
        }
        Ok(out)
    }

    /// One application of the formal derivative, with the chain rule for
    /// exponential terms.
    pub fn derive(&self, e: &ExpExpr) -> Result<ExpExpr> {
        let mut out = ExpExpr::zero();
        for (arg, coeff) in e.parts() {
            let d_coeff = self.derive_laurent(coeff)?;
            let d_arg = self.derive_laurent(arg)?;
            let total = &d_coeff + &(coeff * &d_arg);
            out = &out + &ExpExpr::term(total, arg.clone());
        }
        Ok(out)
    }

    /// `[e, D(e), D^2(e), ..., D^n(e)]`. The whole chain is returned so that
    /// callers reuse intermediates instead of recomputing.
    pub fn derive_chain(&self, e: &ExpExpr, n: usize) -> Result<Vec<ExpExpr>> {
        let mut chain = Vec::with_capacity(n + 1);
        chain.push(e.clone());
        for _ in 0..n {
            let next = self.derive(chain.last().unwrap())?;
            chain.push(next);
        }
        Ok(chain)
    }

    pub fn derive_n(&self, e: &ExpExpr, n: usize) -> Result<ExpExpr> {
        Ok(self.derive_chain(e, n)?.pop().unwrap())
    }

    /// True iff `D^order(e) = 0`.
    pub fn is_constant(&self, e: &ExpExpr, order: usize) -> Result<bool> {
        assert!(order >= 1, "order must be positive");
        Ok(self.derive_n(e, order)?.is_zero())
    }

    /// If `e` is a single term `c·exp(L)` with unit `c` and `D(e) = q·e`
    /// with `D(q) = 0`, returns the eigenvalue `q`. Detection is restricted
    /// to single terms so that the quotient is exact.
    pub fn is_eigenfunction(&self, e: &ExpExpr) -> Result<Option<ExpExpr>> {
        assert!(!e.is_zero(), "eigenfunction candidate must be nonzero");
        let inv = match e.try_inverse() {
            Ok(inv) => inv,
            Err(_) => return Ok(None),
        };
        let q = &self.derive(e)? * &inv;
        if self.derive(&q)?.is_zero() {
            Ok(Some(q))
        } else {
            Ok(None)
        }
    }

    /// The truncated generating function `gen(e,t) = Σ D^n(e) t^n / n!`.
    pub fn gen_series(&self, e: &ExpExpr, order: usize) -> Result<TruncatedSeries> {
        let chain = self.derive_chain(e, order)?;
        let mut factorial = Rat::one();
        let coeffs = chain
            .into_iter()
            .enumerate()
            .map(|(n, d)| {
                if n > 0 {
                    factorial *= rat_int(n as i64);
                }
                d.scale(&factorial.recip())
            })
            .collect();
        Ok(TruncatedSeries::new(coeffs))
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, rhs) in &self.rules {
            if !first {
                write!(f, "; ")?;
            }
            first = false;
            write!(f, "{v} -> {rhs}")?;
        }
        Ok(())
    }
}

/// Parses the `var -> expr` rule format: one rule per line or `;`-separated,
/// `#` starts a comment.
pub fn parse_grammar(src: &str) -> Result<Grammar> {
    let mut rules = BTreeMap::new();
    for (line_idx, raw_line) in src.lines().enumerate() {
        let line_no = line_idx + 1;
        let line = match raw_line.find('#') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        };
        let mut offset = 0;
        for fragment in line.split(';') {
            let trimmed = fragment.trim();
            if !trimmed.is_empty() {
                let frag_col = offset + (fragment.len() - fragment.trim_start().len());
                parse_rule(trimmed, line_no, frag_col, &mut rules)?;
            }
            offset += fragment.len() + 1;
        }
    }
    Ok(Grammar::new(rules))
}

fn parse_rule(
    rule: &str,
    line: usize,
    col_offset: usize,
    rules: &mut BTreeMap<VarId, LaurentPoly>,
) -> Result<()> {
    let arrow = rule
        .find("->")
        .ok_or_else(|| Error::syntax(line, col_offset + 1, "expected `var -> expression`"))?;
    let lhs = rule[..arrow].trim();
    let mut lhs_chars = lhs.chars();
    let var = match (lhs_chars.next(), lhs_chars.next()) {
        (Some(c), None) if c.is_ascii_alphabetic() => VarId::new(c)?,
        _ => {
            return Err(Error::syntax(
                line,
                col_offset + 1,
                format!("rule left-hand side must be a single variable, got `{lhs}`"),
            ))
        }
    };
    if rules.contains_key(&var) {
        return Err(Error::syntax(
            line,
            col_offset + 1,
            format!("duplicate rule for `{var}`"),
        ));
    }
    let rhs_src = &rule[arrow + 2..];
    let rhs_col = col_offset + arrow + 2;
    let rhs = parse_expexpr_at(rhs_src, None, line, rhs_col)?;
    let rhs = rhs.as_laurent().ok_or_else(|| {
        Error::syntax(line, rhs_col + 1, "rule right-hand sides must be polynomial")
    })?;
    rules.insert(var, rhs);
    Ok(())
}

/// The grammar `z -> vz^2, v -> uv^2z, u -> u^2vz` generating `R_n(u)` and
/// `T_n(u)`.
pub const PRESET_G_R: &str = "z -> v*z^2; v -> u*v^2*z; u -> u^2*v*z";
/// The extension with root labels `a`, `x` generating `Q_{n,k}`.
pub const PRESET_G_Q: &str =
    "a -> a*x*v; x -> x*v*z; z -> v*z^2; v -> u*v^2*z; u -> u^2*v*z";
/// The change of variables `b = xv`, `c = vz` applied to the previous one.
pub const PRESET_H: &str = "a -> a*b; b -> b*c*(1 + u); c -> c^2*(1 + u); u -> c*u^2";
/// The two-letter grammar whose derivatives of `A` count the same trees
/// with edges and improper edges marked jointly by `A`.
pub const PRESET_DR: &str = "A -> A^3*S; S -> A*S^2";

/// Looks up a built-in grammar by name (`G_R`, `G_Q`, `H`, `DR`).
pub fn preset(name: &str) -> Option<Grammar> {
    let src = match name {
        "G_R" => PRESET_G_R,
        "G_Q" => PRESET_G_Q,
        "H" => PRESET_H,
        "DR" => PRESET_DR,
        _ => return None,
    };
    Some(parse_grammar(src).expect("preset grammars parse"))
}

/// Checks that the change of variables `b = xv`, `c = vz` intertwines the
/// derivatives of the `H` and `G_Q` grammars on `a` at depth `n`:
/// `D_H^n(a)|_{b=xv, c=vz} = D_{G_Q}^n(a)`.
pub fn verify_h_consistency(n: usize) -> Result<bool> {
    let h = preset("H").unwrap();
    let g_q = preset("G_Q").unwrap();
    let a = ExpExpr::from_laurent(LaurentPoly::var('a'));
    let mut bindings = BTreeMap::new();
    bindings.insert(VarId::new('b')?, LaurentPoly::mono(&[('x', 1), ('v', 1)]));
    bindings.insert(VarId::new('c')?, LaurentPoly::mono(&[('v', 1), ('z', 1)]));
    let via_h = h.derive_n(&a, n)?.substitute(&bindings)?;
    let via_g = g_q.derive_n(&a, n)?;
    Ok(via_h == via_g)
}

fn check_all(g: &Grammar, cases: &[(&str, &str)]) -> Result<bool> {
    for (input, expect) in cases {
        let e = parse_expexpr_at(input, Some(g.alphabet()), 1, 0)?;
        let want = parse_expexpr_at(expect, Some(g.alphabet()), 1, 0)?;
        if g.derive(&e)? != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The known derivatives of the tree grammar `G_R`, including its constants
/// of first and second order:
/// `D(u^-1 v) = 0`, `D(z e^{u^-1}) = 0`, `D((u-1) v^-1 z^-1) = 1`,
/// `D(z^-1 - u^-1 z^-1) = u^-1 v`, `D(e^{u^-1}(u v^-1 - v^-1)) = z e^{u^-1}`.
pub fn verify_constants_g_r() -> Result<bool> {
    let g = preset("G_R").unwrap();
    check_all(
        &g,
        &[
            ("u^-1*v", "0"),
            ("z*exp(u^-1)", "0"),
            ("(u - 1)*v^-1*z^-1", "1"),
            ("z^-1 - u^-1*z^-1", "u^-1*v"),
            ("exp(u^-1)*(u*v^-1 - v^-1)", "z*exp(u^-1)"),
        ],
    )
}

/// The known derivatives of the transformed grammar `H`:
/// `D(u c^-1 e^{-u^-1}) = 0`, `D(b c^-1) = 0`, `D(a e^{b c^-1 u^-1}) = 0`,
/// `D((u-1) c^-1) = 1`.
pub fn verify_constants_h() -> Result<bool> {
    let g = preset("H").unwrap();
    check_all(
        &g,
        &[
            ("u*c^-1*exp(-u^-1)", "0"),
            ("b*c^-1", "0"),
            ("a*exp(b*c^-1*u^-1)", "0"),
            ("(u - 1)*c^-1", "1"),
        ],
    )
}

/// The known derivatives of the degree-marked grammar `G_Q`:
/// `D(v u^-1) = 0`, `D(z x^-1) = 0`,
/// `D(x^-1 - x^-1 u^-1) = v z x^-1 u^-1`.
pub fn verify_constants_g_q() -> Result<bool> {
    let g = preset("G_Q").unwrap();
    check_all(
        &g,
        &[
            ("v*u^-1", "0"),
            ("z*x^-1", "0"),
            ("x^-1 - x^-1*u^-1", "v*z*x^-1*u^-1"),
        ],
    )
}

/// The two-term recurrence expressing `D^{n-2}(av)` through derivatives of
/// `a` under `G_Q`, for `2 ≤ n ≤ n_max`:
/// `D^{n-2}(av) = (x^-1 - x^-1 u^-1)·D^{n-1}(a)
///              + (v u^-1)(1 + (n-2) z x^-1)·D^{n-2}(a)`.
pub fn verify_av_identity(n_max: usize) -> Result<bool> {
    assert!(n_max >= 2);
    let g = preset("G_Q").unwrap();
    let a = ExpExpr::from_laurent(LaurentPoly::var('a'));
    let av = ExpExpr::from_laurent(LaurentPoly::mono(&[('a', 1), ('v', 1)]));
    let chain_a = g.derive_chain(&a, n_max - 1)?;
    let chain_av = g.derive_chain(&av, n_max - 2)?;
    let c1 = &LaurentPoly::mono(&[('x', -1)]) - &LaurentPoly::mono(&[('x', -1), ('u', -1)]);
    for n in 2..=n_max {
        let vu = LaurentPoly::mono(&[('v', 1), ('u', -1)]);
        let zx = LaurentPoly::mono(&[('z', 1), ('x', -1)]).scale(&rat_int(n as i64 - 2));
        let c2 = &vu * &(&LaurentPoly::one() + &zx);
        let rhs = &chain_a[n - 1].mul_laurent(&c1) + &chain_a[n - 2].mul_laurent(&c2);
        if chain_av[n - 2] != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(src: &str) -> LaurentPoly {
        crate::parse::parse_laurent(src, None).unwrap()
    }

    fn ee(src: &str) -> ExpExpr {
        crate::parse::parse_expexpr(src, None).unwrap()
    }

    #[test]
    fn parses_the_tree_grammar() {
        let g = parse_grammar("z -> v*z^2; v -> u*v^2*z; u -> u^2*v*z").unwrap();
        assert_eq!(g.alphabet().len(), 3);
        assert_eq!(g, preset("G_R").unwrap());
    }

    #[test]
    fn parses_the_two_letter_tree_grammar() {
        let g = parse_grammar("A -> A^3*S; S -> A*S^2").unwrap();
        let a = ExpExpr::from_laurent(LaurentPoly::var('A'));
        let d = g.derive(&a).unwrap();
        assert_eq!(d, ee("A^3*S"));
    }

    #[test]
    fn parses_comments_and_lines() {
        let g = parse_grammar("# tree grammar\nz -> v*z^2\nv -> u*v^2*z # splice\nu -> u^2*v*z\n").unwrap();
        assert_eq!(g, preset("G_R").unwrap());
    }

    #[test]
    fn rejects_malformed_rules() {
        match parse_grammar("z -> v*") {
            Err(Error::Syntax { line: 1, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        assert!(parse_grammar("zz -> v").is_err());
        assert!(parse_grammar("z -> v; z -> u").is_err());
    }

    #[test]
    fn derive_examples() {
        let g = preset("G_R").unwrap();
        assert_eq!(g.derive(&ee("v*z")).unwrap(), ee("v^2*z^2*(1 + u)"));
        assert!(g.derive(&ee("u^-1*v")).unwrap().is_zero());
        assert!(g.derive(&ee("z*exp(u^-1)")).unwrap().is_zero());
    }

    #[test]
    fn derive_unknown_variable() {
        let g = preset("G_R").unwrap();
        assert_eq!(
            g.derive(&ee("w")),
            Err(Error::UnknownVariable("w".into()))
        );
    }

    #[test]
    fn derive_n_matches_listed_expansions() {
        let g = preset("G_R").unwrap();
        assert_eq!(
            g.derive_n(&ee("v*z"), 4).unwrap(),
            ee("v^5*z^5*(24 + 96*u + 190*u^2 + 210*u^3 + 105*u^4)")
        );
        assert_eq!(
            g.derive_n(&ee("z"), 4).unwrap(),
            ee("v^4*z^5*(24 + 46*u + 40*u^2 + 15*u^3)")
        );
        assert_eq!(g.derive_n(&ee("z"), 0).unwrap(), ee("z"));
    }

    #[test]
    fn known_constant_suites_hold() {
        assert!(verify_constants_g_r().unwrap());
        assert!(verify_constants_h().unwrap());
        assert!(verify_constants_g_q().unwrap());
    }

    #[test]
    fn av_derivative_recurrence_holds() {
        assert!(verify_av_identity(6).unwrap());
    }

    #[test]
    fn constants_of_various_orders() {
        let g = preset("G_R").unwrap();
        assert!(g.is_constant(&ee("z*exp(u^-1)"), 1).unwrap());
        let second_order = ee("(u - 1)*v^-1*z^-1");
        assert!(!g.is_constant(&second_order, 1).unwrap());
        assert!(g.is_constant(&second_order, 2).unwrap());
        assert!(g.derive(&second_order).unwrap().is_one());
        assert!(!g.is_constant(&ee("z"), 1).unwrap());
    }

    #[test]
    fn eigenfunction_detection() {
        let g = preset("G_R").unwrap();
        // constants are eigenfunctions with eigenvalue 0
        assert_eq!(
            g.is_eigenfunction(&ee("u^-1*v")).unwrap(),
            Some(ExpExpr::zero())
        );
        // D(z) = z·(vz) but vz is not a constant
        assert_eq!(g.is_eigenfunction(&ee("z")).unwrap(), None);
        let h = preset("H").unwrap();
        assert_eq!(
            h.is_eigenfunction(&ee("b*c^-1")).unwrap(),
            Some(ExpExpr::zero())
        );
    }

    #[test]
    fn gen_series_examples() {
        let g = preset("G_R").unwrap();
        // constants have constant generating functions
        let s = g.gen_series(&ee("u^-1*v"), 5).unwrap();
        for n in 0..=5 {
            let expect = if n == 0 { ee("u^-1*v") } else { ExpExpr::zero() };
            assert_eq!(s.coeff(n), expect);
        }
        // gen(z^-1 - u^-1 z^-1, t) = z^-1 - u^-1 z^-1 + u^-1 v t
        let s = g.gen_series(&ee("z^-1 - u^-1*z^-1"), 3).unwrap();
        assert_eq!(s.coeff(0), ee("-u^-1*z^-1 + z^-1"));
        assert_eq!(s.coeff(1), ee("u^-1*v"));
        assert!(s.coeff(2).is_zero());
        assert!(s.coeff(3).is_zero());
        let s = g.gen_series(&ee("z"), 0).unwrap();
        assert_eq!(s.coeff(0), ee("z"));
        assert_eq!(s.order(), 0);
    }

    #[test]
    fn h_consistency_small_orders() {
        for n in 0..=5 {
            assert!(verify_h_consistency(n).unwrap(), "depth {n}");
        }
        let lhs = preset("H").unwrap().derive(&ee("a")).unwrap();
        assert_eq!(lhs, ee("a*b"));
    }

    #[test]
    fn leibniz_small_cases() {
        let g = preset("G_R").unwrap();
        let f = ee("z*exp(u^-1) + v");
        let h = ee("u^-1*v + z^2");
        for n in 0..=4usize {
            let lhs = g.derive_n(&(&f * &h), n).unwrap();
            let mut rhs = ExpExpr::zero();
            for k in 0..=n {
                let binom = crate::series::binomial(n, k);
                let part = &g.derive_n(&f, k).unwrap() * &g.derive_n(&h, n - k).unwrap();
                rhs = &rhs + &part.scale(&binom);
            }
            assert_eq!(lhs, rhs, "Leibniz at n = {n}");
        }
    }

    #[test]
    fn display_round_trip() {
        let g = preset("G_R").unwrap();
        assert_eq!(parse_grammar(&g.to_string()).unwrap(), g);
        let _ = lp("v*z^2");
    }
}
