//! `qverify`: batch verification of `.qid` identity catalogs.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qverify::dsl::{
    as_constant_term, expand, parse_catalog, parse_expr, verify, Expr, RingHint, Status,
    VerificationReport, DEFAULT_ORDER,
};
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "qverify", version, about = "Exact verification of q-series identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the entries of a catalog.
    Check(CheckArgs),
    /// Print the nonzero coefficients of an expression.
    Expand(ExprArgs),
    /// Print the constant term in z of an expression.
    Ct(ExprArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Catalog file; the bundled catalog when omitted.
    catalog: Option<PathBuf>,
    /// Truncation order for every entry, overriding the orders in the catalog.
    #[arg(long)]
    order: Option<i64>,
    /// Only check the named entries.
    #[arg(long, num_args = 1..)]
    only: Vec<String>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write the reports as a JSON array to this file.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ExprArgs {
    expr: String,
    #[arg(long)]
    order: Option<i64>,
    /// Coefficient ring: rational, eisenstein, poly-a or laurent-z.
    #[arg(long)]
    ring: Option<String>,
}

/// Fallback order from `QVERIFY_DEFAULT_ORDER`, else the built-in default.
fn default_order() -> Result<i64, String> {
    match std::env::var("QVERIFY_DEFAULT_ORDER") {
        Ok(v) => v
            .trim()
            .parse()
            .ok()
            .filter(|n: &i64| *n > 0)
            .ok_or_else(|| format!("QVERIFY_DEFAULT_ORDER must be a positive integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_ORDER),
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn report_line(r: &VerificationReport) -> String {
    let head = format!("{:<5} {} (order {}, {} ms)", status_word(r.status), r.name, r.order, r.ms);
    match r.status {
        Status::Pass => head,
        Status::Fail => format!(
            "{head}: first_diff_exp={} lhs={} rhs={}",
            r.first_diff_exp.unwrap_or_default(),
            r.lhs_coeff.as_deref().unwrap_or(""),
            r.rhs_coeff.as_deref().unwrap_or("")
        ),
        Status::Error => format!("{head}: {}", r.error.as_deref().unwrap_or("")),
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Error => "ERROR",
    }
}

fn cmd_check(args: CheckArgs) -> ExitCode {
    let src = match &args.catalog {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(s) => s,
            Err(e) => return usage_error(format!("{}: {e}", path.display())),
        },
        None => qverify::BUNDLED_CATALOG.to_string(),
    };
    let entries = match parse_catalog(&src) {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };
    for name in &args.only {
        if !entries.iter().any(|e| &e.name == name) {
            return usage_error(format!("no entry named `{name}`"));
        }
    }
    let fallback = match default_order() {
        Ok(n) => n,
        Err(e) => return usage_error(e),
    };
    if matches!(args.order, Some(n) if n < 1) {
        return usage_error("--order must be positive");
    }
    let selected: Vec<_> = entries
        .into_iter()
        .filter(|e| args.only.is_empty() || args.only.contains(&e.name))
        .map(|mut e| {
            e.order = Some(args.order.or(e.order).unwrap_or(fallback));
            e
        })
        .collect();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
    {
        Ok(p) => p,
        Err(e) => return usage_error(e),
    };
    let reports: Vec<VerificationReport> =
        pool.install(|| selected.par_iter().map(|e| verify(e, None)).collect());
    for r in &reports {
        println!("{}", report_line(r));
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    println!("{passed}/{} passed", reports.len());
    if let Some(path) = &args.json {
        let text = serde_json::to_string_pretty(&reports).expect("reports serialize");
        if let Err(e) = std::fs::write(path, text + "\n") {
            return usage_error(format!("{}: {e}", path.display()));
        }
    }
    if passed == reports.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_expand(args: ExprArgs, constant_term: bool) -> ExitCode {
    let order = match args.order.map(Ok).unwrap_or_else(default_order) {
        Ok(n) => n,
        Err(e) => return usage_error(e),
    };
    let hint = match args.ring.as_deref().map(|r| RingHint::from_keyword(r).ok_or(r)) {
        None => None,
        Some(Ok(h)) => Some(h),
        Some(Err(r)) => return usage_error(format!("unknown ring `{r}`")),
    };
    let expr: Expr = match parse_expr(&args.expr) {
        Ok(e) if constant_term => as_constant_term(e),
        Ok(e) => e,
        Err(e) => return usage_error(e),
    };
    match expand(&expr, hint, order) {
        Ok(x) => {
            let pairs: Vec<String> = x.terms.iter().map(|(e, c)| format!("{e}:{c}")).collect();
            println!("{}", pairs.join(" "));
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(e),
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Check(a) => cmd_check(a),
        Command::Expand(a) => cmd_expand(a, false),
        Command::Ct(a) => cmd_expand(a, true),
    }
}
