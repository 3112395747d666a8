//! Batch command-line front end: tables, derivations, series solutions,
//! tree enumeration, and the full verification suite.
//!
//! Output goes to stdout (deterministic; machine formats carry `schema: 1`),
//! diagnostics to stderr. The exit code is 0 exactly when every requested
//! check passed.

mod suites;

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ramagram::algebra::{ExpExpr, Monomial, Rat};
use ramagram::grammar::{parse_grammar, preset, Grammar};
use ramagram::parse::parse_expexpr;
use ramagram::ramanujan::{psi_via_bew, psi_via_ramanujan, q_via_shor, UniPoly};
use ramagram::series::{solve_equation, SeriesEquation};
use ramagram::trees::{count_r, count_t, enumerate_rooted, enumerate_rooted_at_1};

#[derive(Parser)]
#[command(name = "ramagram", version, about = "Improper-edge tree statistics toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Print a polynomial or histogram table (kinds: psi, Q, R, T).
    Table {
        /// Table kind: psi | Q | R | T
        kind: String,
        /// Largest row of the psi table (default 3)
        #[arg(long)]
        r_max: Option<usize>,
        /// Row index for Q (polynomials) or R/T (tree histograms)
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
        /// Recompute the table through an independent second code path
        #[arg(long)]
        cross_check: bool,
    },
    /// Apply a grammar's derivative repeatedly to an expression.
    Derive {
        /// Preset name (G_R, G_Q, H, DR) or a grammar file path
        #[arg(long)]
        grammar: String,
        #[arg(long)]
        expr: String,
        /// Number of derivative applications
        #[arg(long)]
        n: usize,
    },
    /// Run verification suites and print a JSON report.
    Verify {
        /// Suite name or `all`
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        r_max: Option<usize>,
        /// Bound for tree-enumeration suites
        #[arg(long)]
        n_max: Option<usize>,
        /// Truncation order for series suites
        #[arg(long)]
        order: Option<usize>,
    },
    /// Solve a functional equation as a truncated series.
    Series {
        /// Equation name: R-eq | T-eq | Y-grammar-eq | Y-zeng-eq
        #[arg(long)]
        equation: String,
        #[arg(long)]
        order: usize,
        /// Exact rational sample for Y-zeng-eq (e.g. 1/2, -1/3)
        #[arg(long)]
        u: Option<String>,
    },
    /// Enumerate rooted trees: improper-edge histogram or full listing.
    Trees {
        #[arg(long)]
        n: usize,
        /// Print each tree in parent-array notation instead of the histogram
        #[arg(long)]
        list: bool,
        /// Restrict to trees rooted at vertex 1
        #[arg(long)]
        rooted_at_1: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Table { kind, r_max, n, format, cross_check } => {
            cmd_table(&kind, r_max, n, format, cross_check)
        }
        Command::Derive { grammar, expr, n } => cmd_derive(&grammar, &expr, n),
        Command::Verify { suite, r_max, n_max, order } => {
            return cmd_verify(&suite, r_max, n_max, order);
        }
        Command::Series { equation, order, u } => cmd_series(&equation, order, u.as_deref()),
        Command::Trees { n, list, rooted_at_1 } => cmd_trees(n, list, rooted_at_1),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

// ---------------------------------------------------------------- tables

fn poly_string(p: &UniPoly) -> String {
    p.to_string()
}

fn coeff_list(p: &UniPoly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

fn cmd_table(
    kind: &str,
    r_max: Option<usize>,
    n: Option<usize>,
    format: Format,
    cross_check: bool,
) -> Result<(), String> {
    match kind {
        "psi" => table_psi(r_max.unwrap_or(3), format, cross_check),
        "Q" => {
            let n = n.ok_or("table Q requires --n")?;
            table_q(n, format, cross_check)
        }
        "R" | "T" => {
            let n = n.ok_or_else(|| format!("table {kind} requires --n"))?;
            table_histogram(kind, n, format, cross_check)
        }
        other => Err(format!("unknown table kind `{other}` (expected psi, Q, R or T)")),
    }
}

fn table_psi(r_max: usize, format: Format, cross_check: bool) -> Result<(), String> {
    let table = psi_via_ramanujan(r_max);
    if cross_check {
        let other = psi_via_bew(r_max);
        for r in 0..=r_max {
            for k in 1..=r + 1 {
                let a = table.get(r, k).map_err(|e| e.to_string())?;
                let b = other.get(r, k).map_err(|e| e.to_string())?;
                if a != b {
                    return Err(format!("cross-check mismatch at psi({r},{k})"));
                }
            }
        }
    }
    let sums: Vec<UniPoly> = (0..=r_max)
        .map(|r| {
            (1..=r + 1).fold(UniPoly::zero(), |acc, k| &acc + &table.get(r, k).unwrap())
        })
        .collect();
    match format {
        Format::Csv => {
            for r in 0..=r_max {
                for k in 1..=r + 1 {
                    let p = table.get(r, k).unwrap();
                    println!("{r},{k},{}", coeff_list(&p).join(";"));
                }
            }
        }
        Format::Json => {
            let rows: Vec<_> = (0..=r_max)
                .flat_map(|r| {
                    let table = &table;
                    (1..=r + 1).map(move |k| {
                        json!({"r": r, "k": k, "coeffs": coeff_list(&table.get(r, k).unwrap())})
                    })
                })
                .collect();
            let sums: Vec<String> = sums.iter().map(poly_string).collect();
            println!(
                "{}",
                serde_json::to_string_pretty(
                    &json!({"schema": 1, "kind": "psi", "r_max": r_max, "rows": rows, "sums": sums})
                )
                .unwrap()
            );
        }
        Format::Pretty => {
            let mut grid: Vec<Vec<String>> = Vec::new();
            let mut header = vec!["r\\k".to_string()];
            for k in 1..=r_max + 1 {
                header.push(k.to_string());
            }
            header.push("sum".to_string());
            grid.push(header);
            for r in 0..=r_max {
                let mut row = vec![r.to_string()];
                for k in 1..=r_max + 1 {
                    let p = table.get(r, k).unwrap();
                    row.push(if p.is_zero() { String::new() } else { poly_string(&p) });
                }
                row.push(poly_string(&sums[r]));
                grid.push(row);
            }
            print_grid(&grid);
        }
    }
    Ok(())
}

fn table_q(n: usize, format: Format, cross_check: bool) -> Result<(), String> {
    if n == 0 {
        return Err("table Q requires --n >= 1".into());
    }
    let table = q_via_shor(n);
    if cross_check {
        let psi = psi_via_ramanujan(n.saturating_sub(1));
        for k in 0..n {
            let a = table.get(n, k).map_err(|e| e.to_string())?;
            let b = ramagram::ramanujan::q_via_psi(n, k, &psi).map_err(|e| e.to_string())?;
            if a != b {
                return Err(format!("cross-check mismatch at Q({n},{k})"));
            }
        }
    }
    match format {
        Format::Csv => {
            for k in 0..n {
                println!("{n},{k},{}", coeff_list(&table.get(n, k).unwrap()).join(";"));
            }
        }
        Format::Json => {
            let rows: Vec<_> = (0..n)
                .map(|k| json!({"n": n, "k": k, "coeffs": coeff_list(&table.get(n, k).unwrap())}))
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({"schema": 1, "kind": "Q", "n": n, "rows": rows}))
                    .unwrap()
            );
        }
        Format::Pretty => {
            let mut grid = vec![vec!["k".to_string(), format!("Q_{{{n},k}}(x)")]];
            for k in 0..n {
                grid.push(vec![k.to_string(), poly_string(&table.get(n, k).unwrap())]);
            }
            print_grid(&grid);
        }
    }
    Ok(())
}

fn table_histogram(kind: &str, n: usize, format: Format, cross_check: bool) -> Result<(), String> {
    if n == 0 {
        return Err(format!("table {kind} requires --n >= 1"));
    }
    let hist = match kind {
        "R" => count_r(n),
        _ => count_t(n),
    }
    .map_err(|e| e.to_string())?;
    if cross_check {
        let (derivations, expr, inv) = if kind == "R" {
            (n - 1, "v*z", Monomial::from_pairs(&[('v', -(n as i64)), ('z', -(n as i64))]))
        } else {
            (n, "z", Monomial::from_pairs(&[('v', -(n as i64)), ('z', -(n as i64 + 1))]))
        };
        let g = preset("G_R").unwrap();
        let e = parse_expexpr(expr, Some(g.alphabet())).map_err(|e| e.to_string())?;
        let d = g.derive_n(&e, derivations).map_err(|e| e.to_string())?;
        let reduced = d
            .as_laurent()
            .ok_or("derivative unexpectedly exponential")?
            .mul_monomial(&inv);
        for (k, &count) in hist.iter().enumerate() {
            let c = reduced
                .univariate_coefficient(ramagram::algebra::VarId::new('u').unwrap(), k as i64);
            if c != ramagram::algebra::rat_int(count as i64) {
                return Err(format!("cross-check mismatch for {kind}({n},{k})"));
            }
        }
    }
    match format {
        Format::Csv => {
            for (k, count) in hist.iter().enumerate() {
                println!("{n},{k},{count}");
            }
        }
        Format::Json => {
            let rows: Vec<_> = hist
                .iter()
                .enumerate()
                .map(|(k, count)| json!({"n": n, "k": k, "count": count}))
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(
                    &json!({"schema": 1, "kind": kind, "n": n, "rows": rows})
                )
                .unwrap()
            );
        }
        Format::Pretty => {
            let mut grid = vec![vec!["k".to_string(), format!("{kind}({n},k)")]];
            for (k, count) in hist.iter().enumerate() {
                grid.push(vec![k.to_string(), count.to_string()]);
            }
            print_grid(&grid);
        }
    }
    Ok(())
}

fn print_grid(grid: &[Vec<String>]) {
    let cols = grid.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; cols];
    for row in grid {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    for row in grid {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < row.len() {
                line.push_str(&" ".repeat(widths[i] - cell.len()));
            }
        }
        println!("{}", line.trim_end());
    }
}

// ---------------------------------------------------------------- derive

fn load_grammar(name: &str) -> Result<Grammar, String> {
    if let Some(g) = preset(name) {
        return Ok(g);
    }
    let src = std::fs::read_to_string(name)
        .map_err(|e| format!("`{name}` is not a preset and could not be read: {e}"))?;
    parse_grammar(&src).map_err(|e| e.to_string())
}

/// Renders with the common monomial factored out of each coefficient, e.g.
/// `v^3*z^3*(2 + 4*u + 3*u^2)` instead of the expanded sum.
fn render_factored(e: &ExpExpr) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = e
        .parts()
        .map(|(arg, coeff)| {
            let mut pieces = Vec::new();
            let (mono, rest) = coeff.monomial_content();
            if rest.num_terms() <= 1 {
                pieces.push(coeff.to_string());
            } else {
                if mono.vars().next().is_some() {
                    pieces.push(mono.to_string());
                }
                pieces.push(format!("({rest})"));
            }
            if !arg.is_zero() {
                pieces.push(format!("exp({arg})"));
            }
            pieces.join("*")
        })
        .collect();
    parts.join(" + ")
}

fn cmd_derive(grammar: &str, expr: &str, n: usize) -> Result<(), String> {
    let g = load_grammar(grammar)?;
    let e = parse_expexpr(expr, Some(g.alphabet())).map_err(|e| e.to_string())?;
    let d = g.derive_n(&e, n).map_err(|e| e.to_string())?;
    println!("{}", render_factored(&d));
    Ok(())
}

// ---------------------------------------------------------------- verify

fn cmd_verify(
    suite: &str,
    r_max: Option<usize>,
    n_max: Option<usize>,
    order: Option<usize>,
) -> ExitCode {
    let mut bounds = suites::Bounds::default();
    if let Some(r) = r_max {
        bounds.r_max = r;
    }
    if let Some(n) = n_max {
        bounds.n_trees = n;
    }
    if let Some(o) = order {
        bounds.order = o;
        bounds.order_heavy = o.min(bounds.order_heavy);
    }
    let selected: Vec<&str> = if suite == "all" {
        suites::SUITE_NAMES.to_vec()
    } else if suites::SUITE_NAMES.contains(&suite) {
        vec![suite]
    } else {
        eprintln!(
            "error: unknown suite `{suite}` (available: all, {})",
            suites::SUITE_NAMES.join(", ")
        );
        return ExitCode::from(2);
    };
    let reports: Vec<suites::SuiteReport> =
        selected.iter().map(|name| suites::run_suite(name, &bounds)).collect();
    let all_passed = reports.iter().all(|r| r.status == "pass");
    let entries: Vec<_> = reports
        .iter()
        .map(|r| {
            json!({
                "suite": r.suite,
                "status": r.status,
                "details": r.details,
                "elapsed_ms": r.elapsed_ms,
            })
        })
        .collect();
    println!(
        "{}",
        serde_json::to_string_pretty(&json!({"schema": 1, "suites": entries})).unwrap()
    );
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

// ---------------------------------------------------------------- series

fn parse_equation(name: &str, u: Option<&str>) -> Result<SeriesEquation, String> {
    match name {
        "R-eq" => Ok(SeriesEquation::R),
        "T-eq" => Ok(SeriesEquation::T),
        "Y-grammar-eq" => Ok(SeriesEquation::YGrammar),
        "Y-zeng-eq" => {
            let u = u.ok_or("Y-zeng-eq requires --u <rational>")?;
            let value = Rat::from_str(u).map_err(|e| format!("bad rational `{u}`: {e}"))?;
            Ok(SeriesEquation::YZeng(value))
        }
        other => Err(format!(
            "unknown equation `{other}` (expected R-eq, T-eq, Y-grammar-eq or Y-zeng-eq)"
        )),
    }
}

fn cmd_series(equation: &str, order: usize, u: Option<&str>) -> Result<(), String> {
    let eq = parse_equation(equation, u)?;
    let s = solve_equation(&eq, order).map_err(|e| e.to_string())?;
    let coefficients: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
    println!(
        "{}",
        serde_json::to_string_pretty(&json!({
            "schema": 1,
            "equation": equation,
            "order": order,
            "coefficients": coefficients,
        }))
        .unwrap()
    );
    Ok(())
}

// ---------------------------------------------------------------- trees

fn cmd_trees(n: usize, list: bool, rooted_at_1: bool) -> Result<(), String> {
    if n == 0 {
        return Err("trees requires --n >= 1".into());
    }
    let iter: Box<dyn Iterator<Item = ramagram::trees::RootedTree>> = if rooted_at_1 {
        Box::new(enumerate_rooted_at_1(n).map_err(|e| e.to_string())?)
    } else {
        Box::new(enumerate_rooted(n).map_err(|e| e.to_string())?)
    };
    if list {
        for t in iter {
            println!("{t}");
        }
    } else {
        let mut hist = vec![0u64; n];
        for t in iter {
            hist[t.improper_count()] += 1;
        }
        while hist.len() > 1 && *hist.last().unwrap() == 0 {
            hist.pop();
        }
        for (k, count) in hist.iter().enumerate() {
            println!("{k},{count}");
        }
    }
    Ok(())
}
