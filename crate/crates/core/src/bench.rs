//! Seeded benchmark suites: the approximation-ratio suite and the query-count sweep over `B`.

use std::io::Write;

use crate::error::{Error, Result};
use crate::lattice::ceil_log2;
use crate::profit::{GeneratorParams, ProfitOracle};
use crate::rng::{RngStream, StreamLabel};
use crate::solvers::{bsdg_solve, unit_double_greedy};
use crate::verification::{ratio_harness, HarnessCase, HarnessReport};

/// Family of small instances whose boxes fit exhaustive enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteParams {
    pub instances: usize,
    pub runs: u64,
    pub max_sources: usize,
    pub max_targets: usize,
    /// Template for everything but the source and target counts.
    pub generator: GeneratorParams,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            instances: 100,
            runs: 200,
            max_sources: 4,
            max_targets: 8,
            generator: GeneratorParams::default(),
        }
    }
}

impl SuiteParams {
    /// Instance `i` comes from its own sub-stream, so the suite is stable under resizing.
    pub fn cases(&self, seed: u64) -> Result<Vec<HarnessCase>> {
        if self.max_sources == 0 || self.max_targets == 0 {
            return Err(Error::Config(
                "suite needs at least one source and one target".into(),
            ));
        }
        let root = RngStream::new(seed);
        (0..self.instances)
            .map(|id| {
                let mut rng = root.child(StreamLabel::Suite, id as u64);
                let params = GeneratorParams {
                    n_sources: rng.int_in(1, self.max_sources as u64) as usize,
                    n_targets: rng.int_in(1, self.max_targets as u64) as usize,
                    ..self.generator.clone()
                };
                Ok(HarnessCase {
                    id,
                    instance: params.generate(&mut rng)?,
                })
            })
            .collect()
    }

    pub fn run(&self, seed: u64) -> Result<HarnessReport> {
        ratio_harness(&self.cases(seed)?, self.runs, seed)
    }
}

/// Uniform-capacity instances of fixed size, one per `B = 2^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepParams {
    pub n_sources: usize,
    pub n_targets: usize,
    pub min_exp: u32,
    pub max_exp: u32,
}

impl Default for SweepParams {
    fn default() -> Self {
        SweepParams {
            n_sources: 8,
            n_targets: 8,
            min_exp: 4,
            max_exp: 14,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepRow {
    pub cap: u64,
    pub log2_cap: u32,
    pub bsdg_queries: u64,
    pub unit_queries: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuerySweep {
    pub n_sources: usize,
    pub rows: Vec<SweepRow>,
}

/// Least-squares line `y = intercept + slope * x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineFit {
    pub intercept: f64,
    pub slope: f64,
    pub max_residual: f64,
    pub mean: f64,
}

impl AffineFit {
    pub fn fit(xs: &[f64], ys: &[f64]) -> Result<AffineFit> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(Error::Config(
                "affine fit needs at least two paired points".into(),
            ));
        }
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        if sxx == 0.0 {
            return Err(Error::Config("affine fit needs distinct x values".into()));
        }
        let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let slope = sxy / sxx;
        let intercept = my - slope * mx;
        let max_residual = xs
            .iter()
            .zip(ys)
            .map(|(x, y)| (y - intercept - slope * x).abs())
            .fold(0.0, f64::max);
        Ok(AffineFit {
            intercept,
            slope,
            max_residual,
            mean: my,
        })
    }

    pub fn relative_residual(&self) -> f64 {
        self.max_residual / self.mean
    }
}

impl SweepParams {
    /// Every point of the sweep uses the same generator and solver seeds; only `B` changes.
    pub fn run(&self, seed: u64) -> Result<QuerySweep> {
        if self.min_exp > self.max_exp || self.max_exp > 32 {
            return Err(Error::Config(format!(
                "sweep exponents {}..={} must be ordered and at most 32",
                self.min_exp, self.max_exp
            )));
        }
        let solver_seed = RngStream::derive_seed(seed, StreamLabel::Solver, 0);
        let mut rows = Vec::new();
        for k in self.min_exp..=self.max_exp {
            let cap = 1u64 << k;
            let params = GeneratorParams {
                n_sources: self.n_sources,
                n_targets: self.n_targets,
                cap_range: (cap, cap),
                ..GeneratorParams::default()
            };
            let mut rng = RngStream::new(seed).child(StreamLabel::Generator, 0);
            let oracle = ProfitOracle::new(params.generate(&mut rng)?);
            rows.push(SweepRow {
                cap,
                log2_cap: ceil_log2(cap),
                bsdg_queries: bsdg_solve(&oracle, solver_seed)?.raw_queries,
                unit_queries: unit_double_greedy(&oracle, solver_seed)?.raw_queries,
            });
        }
        Ok(QuerySweep {
            n_sources: self.n_sources,
            rows,
        })
    }
}

impl QuerySweep {
    pub fn bsdg_fit(&self) -> Result<AffineFit> {
        let xs: Vec<f64> = self.rows.iter().map(|r| r.log2_cap as f64).collect();
        let ys: Vec<f64> = self.rows.iter().map(|r| r.bsdg_queries as f64).collect();
        AffineFit::fit(&xs, &ys)
    }

    /// bsdg over unit queries at the largest `B`.
    pub fn final_ratio(&self) -> Option<f64> {
        self.rows
            .last()
            .map(|r| r.bsdg_queries as f64 / r.unit_queries as f64)
    }

    /// Whitespace-separated table with `#` comment headers, readable by gnuplot.
    pub fn write_table<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(
            out,
            "# raw-equivalent queries vs log2 B, n = {}",
            self.n_sources
        )?;
        writeln!(out, "# B log2_B bsdg unit")?;
        for r in &self.rows {
            writeln!(
                out,
                "{} {} {} {}",
                r.cap, r.log2_cap, r.bsdg_queries, r.unit_queries
            )?;
        }
        Ok(())
    }

    pub fn to_table(&self) -> String {
        let mut buf = Vec::new();
        self.write_table(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("table is utf-8")
    }
}
