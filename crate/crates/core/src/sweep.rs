//! Batch verification over parameter grids.
//!
//! A sweep expands a [`SweepConfig`] into independent cells, runs them on a
//! worker pool, and sorts the resulting rows, so the row list does not depend
//! on the number of workers or their scheduling.
//!
//! Grid per statement (`N = n_max`, `A = a_max`):
//!
//! | statement         | cells                                                  |
//! |-------------------|--------------------------------------------------------|
//! | `Q_GAUSS`         | `1 <= n <= N`, `1 <= a <= A`                           |
//! | `GAUSS_CLASSICAL` | same                                                   |
//! | `ROOT_VANISH`     | same, every `1 <= s <= nb` with `n` not dividing `s`   |
//! | `REDUCED_SUM`     | same, every `1 <= t <= n`                              |
//! | `EULER`           | same, restricted to `gcd(n, a) = 1`                    |
//! | `Q_SHIFT`         | `n <= N`, `a1 <= A`, `b1` the least positive residue   |
//! | `Q_FERMAT`        | primes `p <= N`, `a <= A`, `p` not dividing `a`         |
//! | `LEMMA1`, `LEMMA2`| `1 <= m <= N`, `1 <= t <= A`                           |
//! | `LEMMA3`          | `n, t <= N`, `a <= A`, `n` not dividing `t*gcd(n, a)`   |

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numth::{gcd_unchecked, is_prime};
use crate::theorems::{self, Params, StatementId, VerificationReport};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
    Human,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "human" => Ok(ReportFormat::Human),
            _ => Err(Error::Precondition(format!("unknown report format {s:?}"))),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
            ReportFormat::Human => "human",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub n_max: u64,
    pub a_max: u64,
    pub statements: BTreeSet<StatementId>,
    pub parallelism: usize,
    pub output_path: Option<PathBuf>,
    pub format: ReportFormat,
}

impl SweepConfig {
    pub fn new(n_max: u64, a_max: u64, statements: impl IntoIterator<Item = StatementId>) -> Self {
        SweepConfig {
            n_max,
            a_max,
            statements: statements.into_iter().collect(),
            parallelism: 1,
            output_path: None,
            format: ReportFormat::Json,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max == 0 || self.a_max == 0 {
            return Err(Error::Precondition("n_max and a_max must be at least 1".into()));
        }
        if self.parallelism == 0 {
            return Err(Error::Precondition("parallelism must be at least 1".into()));
        }
        if self.statements.is_empty() {
            return Err(Error::Precondition("no statements selected".into()));
        }
        Ok(())
    }
}

/// One unit of work. Cells yielding several rows share one construction
/// of `F(q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    QGauss { n: u64, a: u64 },
    GaussClassical { n: u64, a: u64 },
    QFermat { p: u64, a: u64 },
    QShift { n: u64, a1: u64, b1: u64 },
    Euler { n: u64, a: u64 },
    RootVanish { n: u64, a: u64 },
    Lemma1 { m: u64, t: u64 },
    Lemma2 { m: u64, t: u64 },
    Lemma3 { n: u64, t: u64, a: u64 },
    ReducedSum { n: u64, a: u64 },
}

impl Cell {
    pub fn statement(&self) -> StatementId {
        match self {
            Cell::QGauss { .. } => StatementId::QGauss,
            Cell::GaussClassical { .. } => StatementId::GaussClassical,
            Cell::QFermat { .. } => StatementId::QFermat,
            Cell::QShift { .. } => StatementId::QShift,
            Cell::Euler { .. } => StatementId::Euler,
            Cell::RootVanish { .. } => StatementId::RootVanish,
            Cell::Lemma1 { .. } => StatementId::Lemma1,
            Cell::Lemma2 { .. } => StatementId::Lemma2,
            Cell::Lemma3 { .. } => StatementId::Lemma3,
            Cell::ReducedSum { .. } => StatementId::ReducedSum,
        }
    }

    fn params(&self) -> Params {
        let na = |n: u64, a: u64| Params { n: Some(n), a: Some(a), b: Some(gcd_unchecked(n, a)), ..Default::default() };
        match *self {
            Cell::QGauss { n, a }
            | Cell::GaussClassical { n, a }
            | Cell::Euler { n, a }
            | Cell::RootVanish { n, a }
            | Cell::ReducedSum { n, a } => na(n, a),
            Cell::QFermat { p, a } => Params { p: Some(p), a: Some(a), ..Default::default() },
            Cell::QShift { n, a1, b1 } => Params { n: Some(n), a1: Some(a1), b1: Some(b1), ..Default::default() },
            Cell::Lemma1 { m, t } | Cell::Lemma2 { m, t } => Params { m: Some(m), t: Some(t), ..Default::default() },
            Cell::Lemma3 { n, t, a } => Params { t: Some(t), ..na(n, a) },
        }
    }

    pub fn run(&self) -> Result<Vec<VerificationReport>> {
        let one = |r: Result<VerificationReport>| r.map(|r| vec![r]);
        match *self {
            Cell::QGauss { n, a } => one(theorems::verify_q_gauss(n, a)),
            Cell::GaussClassical { n, a } => one(theorems::verify_gauss_classical(n, a)),
            Cell::QFermat { p, a } => one(theorems::verify_q_fermat(p, a)),
            Cell::QShift { n, a1, b1 } => one(theorems::verify_q_shift(n, a1, b1)),
            Cell::Euler { n, a } => one(theorems::verify_euler(n, a)),
            Cell::RootVanish { n, a } => theorems::verify_root_vanishing_all(n, a),
            Cell::Lemma1 { m, t } => one(theorems::verify_lemma1(m, t)),
            Cell::Lemma2 { m, t } => one(theorems::verify_lemma2(m, t)),
            Cell::Lemma3 { n, t, a } => one(theorems::verify_lemma3(n, t, a)),
            Cell::ReducedSum { n, a } => theorems::reduced_sum_identity_all(n, a),
        }
    }

    /// Like [`Cell::run`], but an engine error becomes a failing row.
    pub fn run_to_rows(&self) -> Vec<VerificationReport> {
        self.run().unwrap_or_else(|e| {
            vec![VerificationReport {
                statement_id: self.statement(),
                params: self.params(),
                holds: false,
                witness: Some(format!("error: {e}")),
                degree_f: None,
                quotient_terms: None,
                quotient_degree: None,
                elapsed_micros: 0,
            }]
        })
    }
}

pub fn cells_for(statement: StatementId, n_max: u64, a_max: u64) -> Vec<Cell> {
    let grid = || (1..=n_max).flat_map(move |n| (1..=a_max).map(move |a| (n, a)));
    match statement {
        StatementId::QGauss => grid().map(|(n, a)| Cell::QGauss { n, a }).collect(),
        StatementId::GaussClassical => grid().map(|(n, a)| Cell::GaussClassical { n, a }).collect(),
        StatementId::RootVanish => grid().map(|(n, a)| Cell::RootVanish { n, a }).collect(),
        StatementId::ReducedSum => grid().map(|(n, a)| Cell::ReducedSum { n, a }).collect(),
        StatementId::Euler => grid()
            .filter(|&(n, a)| gcd_unchecked(n, a) == 1)
            .map(|(n, a)| Cell::Euler { n, a })
            .collect(),
        StatementId::QShift => grid()
            .map(|(n, a1)| Cell::QShift { n, a1, b1: (a1 - 1) % n + 1 })
            .collect(),
        StatementId::QFermat => grid()
            .filter(|&(p, a)| is_prime(p) && a % p != 0)
            .map(|(p, a)| Cell::QFermat { p, a })
            .collect(),
        StatementId::Lemma1 => grid().map(|(m, t)| Cell::Lemma1 { m, t }).collect(),
        StatementId::Lemma2 => grid().map(|(m, t)| Cell::Lemma2 { m, t }).collect(),
        StatementId::Lemma3 => (1..=n_max)
            .flat_map(|n| (1..=n_max).flat_map(move |t| (1..=a_max).map(move |a| (n, t, a))))
            .filter(|&(n, t, a)| (t * gcd_unchecked(n, a)) % n != 0)
            .map(|(n, t, a)| Cell::Lemma3 { n, t, a })
            .collect(),
    }
}

pub fn cells(config: &SweepConfig) -> Vec<Cell> {
    config
        .statements
        .iter()
        .flat_map(|&s| cells_for(s, config.n_max, config.a_max))
        .collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub version: u32,
    pub config: SweepConfig,
    pub rows: Vec<VerificationReport>,
    pub summary: Summary,
}

/// Runs cells on a pool of `parallelism` workers and returns the rows sorted.
pub fn run_cells(
    cells: &[Cell],
    parallelism: usize,
    progress: Option<&(dyn Fn(usize, usize) + Sync)>,
) -> Result<Vec<VerificationReport>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("cannot start worker pool: {e}")))?;
    let done = AtomicUsize::new(0);
    let total = cells.len();
    let mut rows: Vec<VerificationReport> = pool.install(|| {
        cells
            .par_iter()
            .flat_map_iter(|cell| {
                let rows = cell.run_to_rows();
                let finished = done.fetch_add(1, Ordering::Relaxed) + 1;
                if let Some(report) = progress {
                    report(finished, total);
                }
                rows
            })
            .collect()
    });
    rows.sort_by_key(|r| r.sort_key());
    Ok(rows)
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    run_sweep_with_progress(config, None)
}

pub fn run_sweep_with_progress(
    config: &SweepConfig,
    progress: Option<&(dyn Fn(usize, usize) + Sync)>,
) -> Result<SweepReport> {
    config.validate()?;
    let started = Instant::now();
    let rows = run_cells(&cells(config), config.parallelism, progress)?;
    let passed = rows.iter().filter(|r| r.holds).count();
    let summary = Summary {
        total: rows.len(),
        passed,
        failed: rows.len() - passed,
        elapsed_ms: started.elapsed().as_millis() as u64,
    };
    Ok(SweepReport { version: REPORT_VERSION, config: config.clone(), rows, summary })
}

const CSV_HEADER: [&str; 17] = [
    "statement_id", "n", "a", "b", "s", "t", "m", "p", "a1", "b1", "e", "holds", "witness",
    "degree_f", "quotient_terms", "quotient_degree", "elapsed_micros",
];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub fn render_rows_csv(rows: &[VerificationReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Internal(format!("csv: {e}"));
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        let mut record = vec![r.statement_id.to_string()];
        record.extend(r.params.values().into_iter().map(opt));
        record.push(r.holds.to_string());
        record.push(r.witness.clone().unwrap_or_default());
        record.push(opt(r.degree_f));
        record.push(opt(r.quotient_terms));
        record.push(opt(r.quotient_degree));
        record.push(r.elapsed_micros.to_string());
        w.write_record(&record).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

pub fn render_rows_human(rows: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in rows {
        let _ = writeln!(out, "{r}");
    }
    out
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Zeroes every timing field, leaving only deterministic content.
    pub fn strip_timing(&mut self) {
        self.summary.elapsed_ms = 0;
        for r in &mut self.rows {
            r.elapsed_micros = 0;
        }
    }

    pub fn render(&self, format: ReportFormat) -> Result<String> {
        match format {
            ReportFormat::Json => serde_json::to_string_pretty(self)
                .map(|mut s| {
                    s.push('\n');
                    s
                })
                .map_err(|e| Error::Internal(format!("json: {e}"))),
            ReportFormat::Csv => render_rows_csv(&self.rows),
            ReportFormat::Human => {
                let mut out = render_rows_human(&self.rows);
                let s = &self.summary;
                let _ = writeln!(
                    out,
                    "summary: total={} passed={} failed={} elapsed_ms={}",
                    s.total, s.passed, s.failed, s.elapsed_ms
                );
                Ok(out)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(SweepConfig::new(1, 1, [StatementId::QGauss]).validate().is_ok());
        assert!(SweepConfig::new(0, 1, [StatementId::QGauss]).validate().is_err());
        assert!(SweepConfig::new(1, 0, [StatementId::QGauss]).validate().is_err());
        assert!(SweepConfig::new(1, 1, []).validate().is_err());
        let mut c = SweepConfig::new(1, 1, [StatementId::QGauss]);
        c.parallelism = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn trivial_sweep_has_one_row() {
        let report = run_sweep(&SweepConfig::new(1, 1, [StatementId::QGauss])).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert!(report.all_passed());
        assert_eq!(report.summary, Summary { total: 1, passed: 1, failed: 0, elapsed_ms: report.summary.elapsed_ms });
    }

    #[test]
    fn cell_counts() {
        assert_eq!(cells_for(StatementId::QGauss, 48, 24).len(), 1152);
        assert_eq!(cells_for(StatementId::Lemma1, 200, 200).len(), 40_000);
        // primes up to 61 times a in 1..=20 minus multiples of p
        let fermat = cells_for(StatementId::QFermat, 61, 20).len();
        let expected: usize = (2..=61u64)
            .filter(|&p| is_prime(p))
            .map(|p| (1..=20u64).filter(|a| a % p != 0).count())
            .sum();
        assert_eq!(fermat, expected);
        assert!(cells_for(StatementId::Lemma3, 6, 3)
            .iter()
            .all(|c| matches!(*c, Cell::Lemma3 { n, t, a } if (t * gcd_unchecked(n, a)) % n != 0)));
    }

    #[test]
    fn rows_are_sorted_and_worker_independent() {
        let mut config = SweepConfig::new(6, 4, StatementId::ALL);
        let mut serial = run_sweep(&config).unwrap();
        config.parallelism = 4;
        let mut parallel = run_sweep(&config).unwrap();
        serial.strip_timing();
        parallel.strip_timing();
        assert_eq!(serial.rows, parallel.rows);
        assert!(serial.rows.windows(2).all(|w| w[0].sort_key() <= w[1].sort_key()));
        assert!(serial.all_passed());
    }

    #[test]
    fn engine_errors_become_failing_rows() {
        let rows = Cell::QFermat { p: 4, a: 1 }.run_to_rows();
        assert_eq!(rows.len(), 1);
        assert!(!rows[0].holds);
        assert!(rows[0].witness.as_deref().unwrap().starts_with("error:"));
    }

    #[test]
    fn json_schema_fields() {
        let report = run_sweep(&SweepConfig::new(2, 2, [StatementId::QGauss])).unwrap();
        let v: serde_json::Value = serde_json::from_str(&report.render(ReportFormat::Json).unwrap()).unwrap();
        assert_eq!(v["version"], 1);
        assert_eq!(v["config"]["n_max"], 2);
        assert_eq!(v["config"]["statements"][0], "Q_GAUSS");
        assert_eq!(v["config"]["format"], "json");
        assert_eq!(v["summary"]["total"], 4);
        let row = &v["rows"][3];
        assert_eq!(row["statement_id"], "Q_GAUSS");
        assert_eq!((row["n"].as_u64(), row["a"].as_u64(), row["b"].as_u64()), (Some(2), Some(2), Some(2)));
        assert_eq!(row["holds"], true);
        assert!(row["witness"].is_null());
        assert!(row.get("s").is_none());
    }

    #[test]
    fn csv_has_fixed_columns() {
        let report = run_sweep(&SweepConfig::new(2, 1, [StatementId::Lemma1])).unwrap();
        let csv = report.render(ReportFormat::Csv).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first.len(), CSV_HEADER.len());
        assert_eq!(first[0], "LEMMA1");
        assert_eq!(first[6], "1");
    }
}
