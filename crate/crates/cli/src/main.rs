//! `qgauss`: run single checks, grid sweeps, lemma suites and negative
//! controls from the command line.
//!
//! Exit codes: 0 when everything verified, 1 when any check failed or a
//! negative control unexpectedly passed, 2 on usage errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use qgauss::sweep::{self, render_rows_csv, render_rows_human};
use qgauss::theorems::{self, StatementId, VerificationReport};
use qgauss::{ReportFormat, SweepConfig};

const EXIT_OK: u8 = 0;
const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "qgauss", version, about = "Verify the q-analogue of Gauss' divisibility theorem")]
struct Cli {
    #[command(flatten)]
    common: Common,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Also write the report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<PathBuf>,

    /// Output format: json, csv or human.
    #[arg(long, global = true, default_value = "human", value_parser = parse_format)]
    format: ReportFormat,

    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,

    /// Zero all timing fields so reports are reproducible byte for byte.
    #[arg(long, global = true)]
    no_timing: bool,

    /// Suppress progress output on standard error.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check F(q) = 0 (mod [n]_{q^b}) for one pair (n, a).
    Check {
        #[arg(long, value_parser = positive)]
        n: u64,
        #[arg(long, value_parser = positive)]
        a: u64,
        /// Print the full quotient polynomial.
        #[arg(long)]
        show_quotient: bool,
        /// Also check that F vanishes at every root of the modulus.
        #[arg(long)]
        roots: bool,
    },
    /// Run statement engines over a parameter grid.
    Sweep {
        #[arg(long, default_value_t = 48, value_parser = positive)]
        n_max: u64,
        #[arg(long, default_value_t = 24, value_parser = positive)]
        a_max: u64,
        /// Comma-separated statement ids, e.g. Q_GAUSS,LEMMA2.
        #[arg(long, value_delimiter = ',', default_value = "Q_GAUSS", value_parser = parse_statement)]
        statements: Vec<StatementId>,
    },
    /// Run one lemma's suite.
    Lemma {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        id: u8,
        /// Bound on m and t (on n and t for lemma 3). Defaults: 200, 48, 60.
        #[arg(long, value_parser = positive)]
        max: Option<u64>,
        /// Bound on a (lemma 3 only).
        #[arg(long, default_value_t = 20, value_parser = positive)]
        a_max: u64,
    },
    /// Confirm that catalogued wrong moduli fail to divide F(q).
    NegativeControls,
}

fn positive(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be a positive integer".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(format!("not a decimal integer: {e}")),
    }
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    s.parse().map_err(|e: qgauss::Error| e.to_string())
}

fn parse_statement(s: &str) -> Result<StatementId, String> {
    s.parse().map_err(|e: qgauss::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<u8, qgauss::Error> {
    let common = &cli.common;
    match cli.command {
        Command::Check { n, a, show_quotient, roots } => check(common, n, a, show_quotient, roots),
        Command::Sweep { n_max, a_max, statements } => sweep_grid(common, n_max, a_max, statements),
        Command::Lemma { id, max, a_max } => {
            let (statement, default_max) = match id {
                1 => (StatementId::Lemma1, 200),
                2 => (StatementId::Lemma2, 48),
                _ => (StatementId::Lemma3, 60),
            };
            let max = max.unwrap_or(default_max);
            let a_max = if statement == StatementId::Lemma3 { a_max } else { max };
            sweep_grid(common, max, a_max, vec![statement])
        }
        Command::NegativeControls => negative_controls(common),
    }
}

fn emit(common: &Common, text: &str) -> Result<(), qgauss::Error> {
    print!("{text}");
    let _ = std::io::stdout().flush();
    if let Some(path) = &common.report {
        fs::write(path, text)
            .map_err(|e| qgauss::Error::Precondition(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn strip(rows: &mut [VerificationReport], common: &Common) {
    if common.no_timing {
        rows.iter_mut().for_each(|r| r.elapsed_micros = 0);
    }
}

fn check(common: &Common, n: u64, a: u64, show_quotient: bool, roots: bool) -> Result<u8, qgauss::Error> {
    let result = theorems::check_q_gauss(n, a)?;
    let mut rows = vec![result.report.clone()];
    if roots {
        rows.extend(theorems::verify_root_vanishing_all(n, a)?);
    }
    strip(&mut rows, common);
    let quotient = show_quotient.then(|| result.division.quotient.to_string());
    let text = match common.format {
        ReportFormat::Json => {
            let mut value = serde_json::json!({
                "modulus": result.modulus.to_string(),
                "rows": rows,
            });
            if let Some(q) = &quotient {
                value["quotient"] = serde_json::Value::String(q.clone());
            }
            serde_json::to_string_pretty(&value).map_err(|e| qgauss::Error::Internal(e.to_string()))? + "\n"
        }
        ReportFormat::Csv => render_rows_csv(&rows)?,
        ReportFormat::Human => {
            let mut out = render_rows_human(&rows);
            out.push_str(&format!("modulus: {}\n", result.modulus));
            if let Some(q) = &quotient {
                out.push_str(&format!("quotient: {q}\n"));
            }
            out
        }
    };
    emit(common, &text)?;
    Ok(if rows.iter().all(|r| r.holds) { EXIT_OK } else { EXIT_FAILED })
}

fn sweep_grid(common: &Common, n_max: u64, a_max: u64, statements: Vec<StatementId>) -> Result<u8, qgauss::Error> {
    let config = SweepConfig {
        n_max,
        a_max,
        statements: statements.into_iter().collect(),
        parallelism: common.jobs as usize,
        output_path: common.report.clone(),
        format: common.format,
    };
    config.validate()?;
    let step = AtomicUsize::new(0);
    let progress = |done: usize, total: usize| {
        // Report roughly every 5%.
        let bucket = done * 20 / total.max(1);
        if step.fetch_max(bucket, Ordering::Relaxed) < bucket || done == total && bucket == 0 {
            eprintln!("progress: {done}/{total} cells");
        }
    };
    let mut report = if common.quiet {
        sweep::run_sweep(&config)?
    } else {
        sweep::run_sweep_with_progress(&config, Some(&progress))?
    };
    if common.no_timing {
        report.strip_timing();
    }
    emit(common, &report.render(common.format)?)?;
    if !common.quiet {
        let s = report.summary;
        eprintln!("done: {} rows, {} passed, {} failed", s.total, s.passed, s.failed);
    }
    Ok(if report.all_passed() { EXIT_OK } else { EXIT_FAILED })
}

fn negative_controls(common: &Common) -> Result<u8, qgauss::Error> {
    let outcomes = theorems::run_negative_controls()?;
    let minus_one = BigInt::from(-1);
    let text = match common.format {
        ReportFormat::Json => {
            let items: Vec<_> = outcomes
                .iter()
                .map(|o| {
                    serde_json::json!({
                        "n": o.control.n,
                        "a": o.control.a,
                        "modulus_exponent": o.control.exponent,
                        "divides": o.report.holds,
                        "remainder": o.remainder.to_string(),
                        "remainder_at_minus_one": o.remainder.eval_int(&minus_one).to_string(),
                        "control_satisfied": o.satisfied,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&items).map_err(|e| qgauss::Error::Internal(e.to_string()))? + "\n"
        }
        ReportFormat::Csv => {
            let mut rows: Vec<_> = outcomes.iter().map(|o| o.report.clone()).collect();
            strip(&mut rows, common);
            render_rows_csv(&rows)?
        }
        ReportFormat::Human => outcomes
            .iter()
            .map(|o| {
                format!(
                    "control n={} a={} modulus=[{}]_{{q^{}}} divides={} remainder=\"{}\" remainder(-1)={} {}\n",
                    o.control.n,
                    o.control.a,
                    o.control.n,
                    o.control.exponent,
                    o.report.holds,
                    o.remainder.display_truncated(theorems::WITNESS_TERMS),
                    o.remainder.eval_int(&minus_one),
                    if o.satisfied { "ok" } else { "UNEXPECTED PASS" },
                )
            })
            .collect(),
    };
    emit(common, &text)?;
    Ok(if outcomes.iter().all(|o| o.satisfied) { EXIT_OK } else { EXIT_FAILED })
}
