//! The end-to-end acceptance gate: one test per criterion, each printing a
//! single pass/fail line (visible with `--nocapture`).

use std::process::Command;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use ramagram::algebra::{rat, rat_int, ExpExpr, LaurentPoly, VarId};
use ramagram::grammar::{
    preset, verify_av_identity, verify_constants_g_q, verify_constants_g_r, verify_constants_h,
};
use ramagram::parse::parse_expexpr;
use ramagram::ramanujan::{psi_via_bew, psi_via_ramanujan, q_via_psi, q_via_shor, verify_psi_sum,
    verify_shor_sum};
use ramagram::series::{
    binomial, verify_gen_a_closed_form, verify_gen_u_and_v, verify_gen_z, verify_psi_defining,
    verify_q_series, verify_solver_matches_grammar, verify_t_equals_exp_r,
    verify_tree_count_expansions,
};

fn criterion(number: usize, name: &str, ok: bool) {
    println!("criterion {number} ({name}): {}", if ok { "pass" } else { "fail" });
    assert!(ok, "criterion {number} ({name}) failed");
}

fn run_binary(args: &[&str]) -> (String, String, bool) {
    let out = Command::new(env!("CARGO_BIN_EXE_ramagram"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.success(),
    )
}

fn suite_passes(suite: &str, extra: &[&str]) -> bool {
    let mut args = vec!["verify", "--suite", suite];
    args.extend_from_slice(extra);
    let (stdout, _, ok) = run_binary(&args);
    ok && stdout.contains("\"status\": \"pass\"")
}

#[test]
fn criterion_01_psi_table_reproduction() {
    let (stdout, _, ok) = run_binary(&["table", "psi", "--r-max", "3"]);
    let cells = [
        "1",
        "x - 1",
        "x^2 - 3*x + 2",
        "3*x - 5",
        "3",
        "x^3 - 6*x^2 + 11*x - 6",
        "6*x^2 - 26*x + 26",
        "15*x - 35",
        "15",
    ];
    let sums = ["1", "x", "x^2", "x^3"];
    let all_present = cells.iter().chain(sums.iter()).all(|s| stdout.contains(s));
    criterion(1, "psi table rows 0..=3 with sum column", ok && all_present);
}

#[test]
fn criterion_02_listed_grammar_expansions() {
    let g = preset("G_R").unwrap();
    let cases: &[(&str, usize, &str)] = &[
        ("v*z", 0, "v*z"),
        ("v*z", 1, "v^2*z^2*(1 + u)"),
        ("v*z", 2, "v^3*z^3*(2 + 4*u + 3*u^2)"),
        ("v*z", 3, "v^4*z^4*(6 + 18*u + 25*u^2 + 15*u^3)"),
        ("v*z", 4, "v^5*z^5*(24 + 96*u + 190*u^2 + 210*u^3 + 105*u^4)"),
        ("z", 0, "z"),
        ("z", 1, "v*z^2"),
        ("z", 2, "v^2*z^3*(2 + u)"),
        ("z", 3, "v^3*z^4*(6 + 7*u + 3*u^2)"),
        ("z", 4, "v^4*z^5*(24 + 46*u + 40*u^2 + 15*u^3)"),
    ];
    let ok = cases.iter().all(|(expr, n, expect)| {
        let e = parse_expexpr(expr, Some(g.alphabet())).unwrap();
        let want = parse_expexpr(expect, Some(g.alphabet())).unwrap();
        g.derive_n(&e, *n).unwrap() == want
    });
    criterion(2, "derivative expansions up to order 4", ok);
}

#[test]
fn criterion_03_three_way_agreement() {
    criterion(
        3,
        "grammar = tree enumeration = Q evaluations, n <= 7",
        suite_passes("three-way", &["--n-max", "7"]),
    );
}

#[test]
fn criterion_04_identity_suite() {
    let r_max = 12;
    let a = psi_via_ramanujan(r_max);
    let b = psi_via_bew(r_max);
    let psi_tables_agree = (0..=r_max)
        .all(|r| (1..=r + 1).all(|k| a.get(r, k).unwrap() == b.get(r, k).unwrap()));
    let q = q_via_shor(r_max);
    let q_tables_agree =
        (1..=r_max).all(|n| (0..n).all(|k| q.get(n, k).unwrap() == q_via_psi(n, k, &a).unwrap()));
    criterion(
        4,
        "power sums and recurrence equivalences, r/n <= 12",
        verify_psi_sum(r_max) && verify_shor_sum(r_max) && psi_tables_agree && q_tables_agree,
    );
}

#[test]
fn criterion_05_constant_suites() {
    criterion(
        5,
        "known derivative constants of G_R, H and G_Q",
        verify_constants_g_r().unwrap()
            && verify_constants_h().unwrap()
            && verify_constants_g_q().unwrap(),
    );
}

#[test]
fn criterion_06_av_derivative_identity() {
    criterion(
        6,
        "two-term recurrence for D^(n-2)(av), 2 <= n <= 8",
        verify_av_identity(8).unwrap(),
    );
}

#[test]
fn criterion_07_degree_bijection_cardinalities() {
    criterion(
        7,
        "degree-conditioned cardinality tables, n <= 7",
        suite_passes("bijection", &["--n-max", "7"]),
    );
}

#[test]
fn criterion_08_series_suite() {
    let ok = verify_solver_matches_grammar(8).unwrap()
        && verify_t_equals_exp_r(8).unwrap()
        && verify_gen_z(5).unwrap()
        && verify_gen_u_and_v(5).unwrap()
        && verify_gen_a_closed_form(4).unwrap()
        && verify_q_series(5, &[rat_int(0), rat(1, 2), rat(-1, 3)]).unwrap()
        && verify_tree_count_expansions(7).unwrap()
        && (0..=5).all(|r| verify_psi_defining(r, 8).unwrap());
    criterion(8, "functional-equation series suite", ok);
}

#[test]
fn criterion_09_insertion_algorithm() {
    criterion(
        9,
        "insertion completeness (n <= 7) and deletion round-trips (n <= 6)",
        suite_passes("insertion", &["--n-max", "7"]),
    );
}

// ------------------------------------------------------------ criterion 10

const PROP_CASES: u32 = 1000;

fn arb_laurent(vars: &'static [char], exps: std::ops::RangeInclusive<i64>) -> BoxedStrategy<LaurentPoly> {
    let term = (
        proptest::collection::vec((0..vars.len(), exps), 0..3),
        -4i64..=4,
    );
    proptest::collection::vec(term, 0..4)
        .prop_map(move |terms| {
            let mut p = LaurentPoly::zero();
            for (pairs, c) in terms {
                let mono: Vec<(char, i64)> =
                    pairs.into_iter().map(|(i, e)| (vars[i], e)).collect();
                p = &p + &LaurentPoly::mono(&mono).scale(&rat_int(c));
            }
            p
        })
        .boxed()
}

fn arb_expexpr() -> BoxedStrategy<ExpExpr> {
    // coefficients over the grammar alphabet, exp arguments restricted to
    // multiples of u^-1 (the shape the derivation actually encounters)
    (arb_laurent(&['u', 'v', 'z'], -2..=2), -1i64..=1)
        .prop_map(|(coeff, e)| {
            ExpExpr::term(coeff, LaurentPoly::mono(&[('u', -1)]).scale(&rat_int(e)))
        })
        .boxed()
}

fn check_property<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> bool,
) -> bool {
    let mut runner = TestRunner::new(Config { cases: PROP_CASES, ..Config::default() });
    runner
        .run(&strategy, |value| {
            prop_assert!(test(value));
            Ok(())
        })
        .is_ok()
}

#[test]
fn criterion_10_property_tests() {
    let lp = || arb_laurent(&['u', 'v', 'x', 'z'], -2..=3);

    let ring_axioms = check_property((lp(), lp(), lp()), |(a, b, c)| {
        &(&a + &b) + &c == &a + &(&b + &c)
            && &a + &b == &b + &a
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &b == &b * &a
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && &a + &LaurentPoly::zero() == a
            && &a * &LaurentPoly::one() == a
            && &a - &a == LaurentPoly::zero()
    });

    let g = preset("G_R").unwrap();
    let leibniz = check_property((arb_expexpr(), arb_expexpr(), 0usize..=5), |(f, h, n)| {
        let lhs = g.derive_n(&(&f * &h), n).unwrap();
        let mut rhs = ExpExpr::zero();
        for k in 0..=n {
            let part = &g.derive_n(&f, k).unwrap() * &g.derive_n(&h, n - k).unwrap();
            rhs = &rhs + &part.scale(&binomial(n, k));
        }
        lhs == rhs
    });

    let gen_multiplicative = check_property((arb_expexpr(), arb_expexpr()), |(f, h)| {
        let order = 3;
        let gen_f = g.gen_series(&f, order).unwrap();
        let gen_h = g.gen_series(&h, order).unwrap();
        let gen_fh = g.gen_series(&(&f * &h), order).unwrap();
        gen_f.mul(&gen_h) == gen_fh
    });

    // polynomial (nonnegative-exponent) inputs so that any polynomial
    // binding is admissible
    let poly = || arb_laurent(&['u', 'v', 'x', 'z'], 0..=3);
    let substitution_homomorphism =
        check_property((poly(), poly(), poly(), poly()), |(a, b, s_u, s_v)| {
            let mut bindings = std::collections::BTreeMap::new();
            bindings.insert(VarId::new('u').unwrap(), s_u);
            bindings.insert(VarId::new('v').unwrap(), s_v);
            let sub = |p: &LaurentPoly| p.substitute(&bindings).unwrap();
            sub(&(&a + &b)) == &sub(&a) + &sub(&b) && sub(&(&a * &b)) == &sub(&a) * &sub(&b)
        });

    let ok = ring_axioms && leibniz && gen_multiplicative && substitution_homomorphism;
    criterion(10, "property tests, 1000 cases each", ok);
}
