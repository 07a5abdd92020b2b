//! `mhs5`: verification suites, isoparametric models, the moment-system
//! solver, and the seeded numeric crosscheck behind one binary.
//!
//! Exit status: 0 when every check passes (and for successful model/solve
//! queries), 1 when a check fails, 2 for usage errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use mhs5_cli::parse;
use mhs5_cli::report::Report;
use mhs5_core::coframe::theta_pairs;
use mhs5_core::models::{
    classify, invariants, minimal_isoparametric, solve_curvatures, Classification, InvariantSet,
    PrincipalCurvatures,
};
use mhs5_core::reduction::ReductionContext;
use mhs5_core::verifier::crosscheck::numeric_crosscheck;
use mhs5_core::verifier::latex::ratfunc_latex;
use mhs5_core::verifier::{compute_x, run_suite, Fixtures, Suite};

#[derive(Parser)]
#[command(
    name = "mhs5",
    version,
    about = "Exact verification engine and model lab for minimal hypersurfaces of the 5-sphere"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and report one line per check.
    Verify {
        /// Suite to run: all, dphi, x, partial_fractions, traces, sos,
        /// con3, newton.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Write the JSON report to this path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also print the engine-computed volume coefficients in LaTeX.
        #[arg(long)]
        emit_latex: bool,
    },
    /// Print a minimal isoparametric model with its invariants.
    Models {
        /// Number of distinct principal curvatures.
        #[arg(long)]
        g: u32,
        /// Comma-separated multiplicities, e.g. 1,1,1,1.
        #[arg(long)]
        pattern: String,
    },
    /// Solve the moment system sum m_i x_i^k = f_k (k = 1, 2, 3) for a
    /// multiplicity pattern with at most three parts.
    Solve {
        /// Comma-separated multiplicities, e.g. 2,1,1.
        #[arg(long)]
        pattern: String,
        /// Exact rational: integer, ratio (8/3), or decimal (1.25).
        #[arg(long)]
        f1: String,
        /// Exact rational: integer, ratio (8/3), or decimal (1.25).
        #[arg(long)]
        f2: String,
        /// Exact rational: integer, ratio (8/3), or decimal (1.25).
        #[arg(long)]
        f3: String,
    },
    /// Evaluate the reference expressions against the engine objects at
    /// seeded random points; exact arithmetic, deterministic per seed.
    Crosscheck {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
        trials: u32,
        /// Write the JSON report to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify {
            suite,
            out,
            emit_latex,
        } => cmd_verify(&suite, out.as_deref(), emit_latex),
        Command::Models { g, pattern } => cmd_models(g, &pattern),
        Command::Solve {
            pattern,
            f1,
            f2,
            f3,
        } => cmd_solve(&pattern, &f1, &f2, &f3),
        Command::Crosscheck { seed, trials, out } => cmd_crosscheck(seed, trials, out.as_deref()),
    }
}

fn cmd_verify(suite_name: &str, out: Option<&std::path::Path>, emit_latex: bool) -> ExitCode {
    let Some(suite) = Suite::parse(suite_name) else {
        eprintln!(
            "error: unknown suite '{suite_name}' (expected one of: {})",
            Suite::names().join(", ")
        );
        return ExitCode::from(2);
    };
    let ctx = ReductionContext::new();
    let fixtures = Fixtures::builtin();
    if emit_latex {
        println!("% engine-computed volume coefficients");
        for (i, j) in theta_pairs() {
            println!("X_{{{i}{j}}} = {}", ratfunc_latex(&compute_x(&ctx, i, j)));
        }
        println!();
    }
    let report = Report::new(suite.name(), run_suite(&ctx, fixtures, suite));
    emit_report(&report, out)
}

fn cmd_models(g: u32, pattern_text: &str) -> ExitCode {
    let Some(pattern) = parse::pattern(pattern_text) else {
        eprintln!("error: cannot parse multiplicity pattern '{pattern_text}'");
        return ExitCode::from(2);
    };
    let pc = match minimal_isoparametric(g, &pattern) {
        Ok(pc) => pc,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    #[derive(Serialize)]
    struct ModelOutput<'a> {
        model: &'a PrincipalCurvatures,
        invariants: &'a InvariantSet,
        classification: Classification,
    }
    let inv = invariants(&pc);
    let classification = classify(&inv).expect("models are minimal");
    let output = ModelOutput {
        model: &pc,
        invariants: &inv,
        classification,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&output).expect("model serializes")
    );
    ExitCode::SUCCESS
}

fn cmd_solve(pattern_text: &str, f1: &str, f2: &str, f3: &str) -> ExitCode {
    let Some(pattern) = parse::pattern(pattern_text) else {
        eprintln!("error: cannot parse multiplicity pattern '{pattern_text}'");
        return ExitCode::from(2);
    };
    let mut moments = Vec::new();
    for (flag, text) in [("--f1", f1), ("--f2", f2), ("--f3", f3)] {
        match parse::rational(text) {
            Some(r) => moments.push(r),
            None => {
                eprintln!(
                    "error: {flag} expects an exact rational (integer, ratio like 8/3, or \
                     decimal), got '{text}'"
                );
                return ExitCode::from(2);
            }
        }
    }
    let solutions = match solve_curvatures(&pattern, &moments[0], &moments[1], &moments[2]) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    #[derive(Serialize)]
    struct SolveOutput<'a> {
        pattern: &'a [u32],
        f1: String,
        f2: String,
        f3: String,
        count: usize,
        solutions: &'a [PrincipalCurvatures],
    }
    let output = SolveOutput {
        pattern: &pattern,
        f1: moments[0].to_string(),
        f2: moments[1].to_string(),
        f3: moments[2].to_string(),
        count: solutions.len(),
        solutions: &solutions,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&output).expect("solutions serialize")
    );
    ExitCode::SUCCESS
}

fn cmd_crosscheck(seed: u64, trials: u32, out: Option<&std::path::Path>) -> ExitCode {
    let ctx = ReductionContext::new();
    let fixtures = Fixtures::builtin();
    let check = numeric_crosscheck(&ctx, fixtures, seed, trials).expect("clap enforces trials >= 1");
    let report = Report::new("crosscheck", vec![check]);
    emit_report(&report, out)
}

/// Print the human summary, write the JSON report when requested, and map
/// the pass/fail tally to the exit status.
fn emit_report(report: &Report, out: Option<&std::path::Path>) -> ExitCode {
    for c in &report.checks {
        if c.passed() {
            println!("{}: pass ({} ms)", c.name, c.elapsed_ms);
        } else {
            println!("{}: FAIL ({} ms)", c.name, c.elapsed_ms);
            println!("    residual: {}", c.residual);
        }
    }
    println!(
        "suite {}: {} checks, {} passed, {} failed",
        report.suite, report.summary.total, report.summary.passed, report.summary.failed
    );
    if let Some(path) = out {
        if let Err(e) = fs::write(path, report.to_json()) {
            eprintln!("error: cannot write report to {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
