//! Empirical approximation-ratio harness.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::profit::{BipartiteInstance, ProfitOracle};
use crate::rng::{RngStream, StreamLabel};
use crate::solvers::{
    bsdg_solve_observed, exhaustive_scan, unit_double_greedy_observed, Algorithm, SolveResult,
};

use super::audit::query_audit;
use super::monitor::{InvariantMonitor, InvariantTally};

/// Sampling allowance, in standard errors, before a low mean ratio is flagged.
pub const SIGMA_ALLOWANCE: f64 = 3.0;
pub const TARGET_RATIO: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct HarnessCase {
    pub id: usize,
    pub instance: BipartiteInstance,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunStats {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    pub std_error: f64,
    pub max_queries: u64,
}

impl RunStats {
    fn from_runs(runs: &[SolveResult]) -> RunStats {
        let n = runs.len() as f64;
        let values: Vec<f64> = runs.iter().map(|r| r.value).collect();
        let mean = values.iter().sum::<f64>() / n;
        let var = if runs.len() > 1 {
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        RunStats {
            mean,
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            std_error: (var / n).sqrt(),
            max_queries: runs.iter().map(|r| r.raw_queries).max().unwrap_or(0),
        }
    }

    /// `None` when `opt` is zero and the ratio is undefined.
    pub fn ratio(&self, opt: f64) -> Option<f64> {
        (opt > 0.0).then(|| self.mean / opt)
    }

    /// Mean below half of `opt` by more than the sampling allowance, or a
    /// negative value when `opt` is zero.
    pub fn falls_short(&self, opt: f64) -> bool {
        if opt > 0.0 {
            self.mean + SIGMA_ALLOWANCE * self.std_error < TARGET_RATIO * opt - 1e-9
        } else {
            self.min < -1e-12
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarnessRow {
    pub instance_id: usize,
    pub n: usize,
    pub max_b: u64,
    pub opt: f64,
    pub bsdg: RunStats,
    pub unit: RunStats,
    pub negativity_seen: bool,
    pub flag: bool,
    pub audit_failures: u64,
}

#[derive(Debug, Clone, Default)]
pub struct HarnessReport {
    pub rows: Vec<HarnessRow>,
    pub skipped: Vec<(usize, String)>,
    pub invariants: InvariantTally,
    pub audit_failures: u64,
    pub runs: u64,
}

impl HarnessReport {
    pub fn flags(&self) -> usize {
        self.rows.iter().filter(|r| r.flag).count()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.rows {
            w.serialize(CsvRow::from(r))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}

#[derive(Serialize)]
struct CsvRow {
    instance_id: usize,
    n: usize,
    #[serde(rename = "max_B")]
    max_b: u64,
    opt: f64,
    mean_bsdg: f64,
    min_bsdg: f64,
    mean_unit: f64,
    ratio_bsdg: String,
    ratio_unit: String,
    queries_bsdg: u64,
    queries_unit: u64,
    negativity_seen: bool,
    flag: bool,
}

fn ratio_cell(r: Option<f64>) -> String {
    r.map_or_else(|| "undefined".to_string(), |v| v.to_string())
}

impl From<&HarnessRow> for CsvRow {
    fn from(r: &HarnessRow) -> Self {
        CsvRow {
            instance_id: r.instance_id,
            n: r.n,
            max_b: r.max_b,
            opt: r.opt,
            mean_bsdg: r.bsdg.mean,
            min_bsdg: r.bsdg.min,
            mean_unit: r.unit.mean,
            ratio_bsdg: ratio_cell(r.bsdg.ratio(r.opt)),
            ratio_unit: ratio_cell(r.unit.ratio(r.opt)),
            queries_bsdg: r.bsdg.max_queries,
            queries_unit: r.unit.max_queries,
            negativity_seen: r.negativity_seen,
            flag: r.flag,
        }
    }
}

struct CaseOutcome {
    row: HarnessRow,
    tally: InvariantTally,
}

fn run_case(case: &HarnessCase, runs: u64, seed: u64) -> Result<CaseOutcome> {
    let oracle = ProfitOracle::new(case.instance.clone());
    let bound = case.instance.capacities();
    let scan = exhaustive_scan(&oracle)?;

    let mut tally = InvariantTally::default();
    let mut audit_failures = 0;
    let mut bsdg_runs = Vec::with_capacity(runs as usize);
    let mut unit_runs = Vec::with_capacity(runs as usize);
    for r in 0..runs {
        let run_seed =
            RngStream::derive_seed(seed, StreamLabel::Solver, ((case.id as u64) << 24) | r);

        let mut monitor = InvariantMonitor::new(bound.clone(), Algorithm::Bsdg);
        let b = bsdg_solve_observed(&oracle, run_seed, &mut monitor)?;
        tally += monitor.tally;
        audit_failures += (!query_audit(&b, &bound).passed) as u64;
        bsdg_runs.push(b);

        let mut monitor = InvariantMonitor::new(bound.clone(), Algorithm::Unit);
        unit_runs.push(unit_double_greedy_observed(
            &oracle,
            run_seed,
            &mut monitor,
        )?);
        tally += monitor.tally;
    }

    let bsdg = RunStats::from_runs(&bsdg_runs);
    let unit = RunStats::from_runs(&unit_runs);
    let opt = scan.max;
    Ok(CaseOutcome {
        row: HarnessRow {
            instance_id: case.id,
            n: case.instance.n_sources(),
            max_b: bound.max_cap(),
            opt,
            bsdg,
            unit,
            negativity_seen: scan.min < 0.0,
            flag: bsdg.falls_short(opt) || unit.falls_short(opt),
            audit_failures,
        },
        tally,
    })
}

/// Runs both double greedy variants `runs` times on every case and compares
/// their sample means with the exhaustive optimum.
///
/// Cases run in parallel; rows come back in input order. Cases whose box is too
/// large to enumerate are skipped with the reason recorded.
pub fn ratio_harness(cases: &[HarnessCase], runs: u64, seed: u64) -> Result<HarnessReport> {
    if runs == 0 {
        return Err(Error::Config(
            "harness needs at least one run per instance".into(),
        ));
    }
    let outcomes: Vec<(usize, Result<CaseOutcome>)> = cases
        .par_iter()
        .map(|c| (c.id, run_case(c, runs, seed)))
        .collect();

    let mut report = HarnessReport {
        runs: runs * cases.len() as u64,
        ..HarnessReport::default()
    };
    for (id, outcome) in outcomes {
        match outcome {
            Ok(o) => {
                report.invariants += o.tally;
                report.audit_failures += o.row.audit_failures;
                report.rows.push(o.row);
            }
            Err(e @ Error::BoxTooLarge { .. }) => report.skipped.push((id, e.to_string())),
            Err(e) => return Err(e),
        }
    }
    report.runs = report.rows.len() as u64 * runs;
    Ok(report)
}
