//! Executable checks of structural properties on small boxes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{BoundVector, BoxPoints, CoordinateId, LatticePoint};
use crate::oracle::Objective;
use crate::rng::{RngStream, StreamLabel};
use crate::solvers::EXHAUSTIVE_LIMIT;

pub const DEFAULT_TOL: f64 = 1e-9;
pub const NONMONOTONE_MARGIN: f64 = 1e-12;
/// Pair budget above which checks stop being exhaustive.
pub const PAIR_LIMIT: u128 = 1_000_000;
pub const SAMPLE_COUNT: usize = 100_000;
/// Violations kept verbatim in a report; the rest are only counted.
const KEEP: usize = 1000;
/// Boxes up to this size get their values cached in a table.
const TABLE_LIMIT: u128 = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckConfig {
    pub tol: f64,
    pub pair_limit: u128,
    pub samples: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            tol: DEFAULT_TOL,
            pair_limit: PAIR_LIMIT,
            samples: SAMPLE_COUNT,
            seed: 0,
        }
    }
}

impl CheckConfig {
    pub fn with_tol(tol: f64) -> Self {
        CheckConfig {
            tol,
            ..CheckConfig::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    /// Every pair in the box.
    Exhaustive,
    /// Every point against each of its unit successors, plus sampled pairs.
    /// Equivalent to the full pairwise check up to accumulated tolerance.
    Neighborhood,
    /// Sampled pairs only.
    Sampled,
}

/// DR failure: the gain of `chi_e` at `x` is below the gain at `y >= x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DrViolation {
    pub x: LatticePoint,
    pub y: LatticePoint,
    pub coordinate: usize,
    pub gain_at_x: f64,
    pub gain_at_y: f64,
}

/// Lattice-submodularity failure: `f(x) + f(y) < f(x join y) + f(x meet y)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeViolation {
    pub x: LatticePoint,
    pub y: LatticePoint,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport<V> {
    pub mode: CheckMode,
    pub checked: u64,
    pub violation_count: u64,
    pub violations: Vec<V>,
}

impl<V> CheckReport<V> {
    fn new(mode: CheckMode) -> Self {
        CheckReport {
            mode,
            checked: 0,
            violation_count: 0,
            violations: Vec::new(),
        }
    }

    fn record(&mut self, v: V) {
        self.violation_count += 1;
        if self.violations.len() < KEEP {
            self.violations.push(v);
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

/// Cached or on-demand objective values.
struct Values<'a, O: ?Sized> {
    objective: &'a O,
    table: Option<Vec<f64>>,
}

impl<'a, O: Objective + ?Sized> Values<'a, O> {
    fn new(objective: &'a O) -> Result<Self> {
        let bound = objective.bound();
        let table = if bound.box_size() <= TABLE_LIMIT {
            Some(
                bound
                    .points()
                    .map(|x| objective.evaluate(&x))
                    .collect::<Result<Vec<_>>>()?,
            )
        } else {
            None
        };
        Ok(Values { objective, table })
    }

    fn get(&self, x: &LatticePoint) -> Result<f64> {
        match &self.table {
            Some(t) => Ok(t[self.objective.bound().rank(x)]),
            None => self.objective.evaluate(x),
        }
    }

    fn gain(&self, x: &LatticePoint, e: usize) -> Result<f64> {
        let next = x.add_units(CoordinateId(e), 1, None)?;
        Ok(self.get(&next)? - self.get(x)?)
    }
}

fn random_point_below(upper: &[u64], rng: &mut RngStream) -> LatticePoint {
    LatticePoint::new(upper.iter().map(|&c| rng.int_in(0, c)).collect())
}

/// Reports every `x <= y`, `e` with `f(x + chi_e) - f(x) < f(y + chi_e) - f(y) - tol`.
pub fn check_dr<O: Objective + ?Sized>(
    objective: &O,
    config: &CheckConfig,
) -> Result<CheckReport<DrViolation>> {
    let bound = objective.bound();
    let n = bound.dim();
    let values = Values::new(objective)?;
    let pairs = bound.comparable_pairs();
    let neighborhood = bound.box_size().saturating_mul((n * n) as u128);

    let mode = if pairs <= config.pair_limit {
        CheckMode::Exhaustive
    } else if neighborhood <= config.pair_limit * 10 {
        CheckMode::Neighborhood
    } else {
        CheckMode::Sampled
    };
    let mut report = CheckReport::new(mode);
    let compare = |x: &LatticePoint,
                   y: &LatticePoint,
                   e: usize,
                   report: &mut CheckReport<DrViolation>|
     -> Result<()> {
        let gx = values.gain(x, e)?;
        let gy = values.gain(y, e)?;
        report.checked += 1;
        if gx < gy - config.tol {
            report.record(DrViolation {
                x: x.clone(),
                y: y.clone(),
                coordinate: e,
                gain_at_x: gx,
                gain_at_y: gy,
            });
        }
        Ok(())
    };

    match mode {
        CheckMode::Exhaustive => {
            for y in bound.points() {
                for x in BoxPoints::below(&y) {
                    for e in 0..n {
                        if y.levels()[e] < bound.caps()[e] {
                            compare(&x, &y, e, &mut report)?;
                        }
                    }
                }
            }
        }
        CheckMode::Neighborhood | CheckMode::Sampled => {
            if mode == CheckMode::Neighborhood {
                for x in bound.points() {
                    for step in 0..n {
                        let Ok(y) = x.add_units(CoordinateId(step), 1, Some(bound)) else {
                            continue;
                        };
                        for e in 0..n {
                            if y.levels()[e] < bound.caps()[e] {
                                compare(&x, &y, e, &mut report)?;
                            }
                        }
                    }
                }
            }
            let mut rng = RngStream::new(config.seed).child(StreamLabel::Sampling, 0);
            let mut drawn = 0;
            while drawn < config.samples && n > 0 {
                let y = random_point_below(bound.caps(), &mut rng);
                let open: Vec<usize> = (0..n)
                    .filter(|&e| y.levels()[e] < bound.caps()[e])
                    .collect();
                if open.is_empty() {
                    continue;
                }
                let x = random_point_below(y.levels(), &mut rng);
                let e = open[rng.int_in(0, open.len() as u64 - 1) as usize];
                compare(&x, &y, e, &mut report)?;
                drawn += 1;
            }
        }
    }
    Ok(report)
}

/// Reports every pair with `f(x) + f(y) < f(x join y) + f(x meet y) - tol`.
pub fn check_lattice_submodular<O: Objective + ?Sized>(
    objective: &O,
    config: &CheckConfig,
) -> Result<CheckReport<LatticeViolation>> {
    let bound = objective.bound();
    let values = Values::new(objective)?;
    let size = bound.box_size();
    let pairs = size.saturating_mul(size.saturating_add(1)) / 2;
    let mode = if pairs <= config.pair_limit {
        CheckMode::Exhaustive
    } else {
        CheckMode::Sampled
    };
    let mut report = CheckReport::new(mode);
    let compare = |x: &LatticePoint,
                   y: &LatticePoint,
                   report: &mut CheckReport<LatticeViolation>|
     -> Result<()> {
        let lhs = values.get(x)? + values.get(y)?;
        let rhs = values.get(&x.join(y)?)? + values.get(&x.meet(y)?)?;
        report.checked += 1;
        if lhs < rhs - config.tol {
            report.record(LatticeViolation {
                x: x.clone(),
                y: y.clone(),
                lhs,
                rhs,
            });
        }
        Ok(())
    };

    match mode {
        CheckMode::Exhaustive => {
            let points: Vec<LatticePoint> = bound.points().collect();
            for (i, x) in points.iter().enumerate() {
                for y in &points[i..] {
                    compare(x, y, &mut report)?;
                }
            }
        }
        _ => {
            let mut rng = RngStream::new(config.seed).child(StreamLabel::Sampling, 1);
            for _ in 0..config.samples {
                let x = random_point_below(bound.caps(), &mut rng);
                let y = random_point_below(bound.caps(), &mut rng);
                compare(&x, &y, &mut report)?;
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonMonotoneWitness {
    pub x: LatticePoint,
    pub y: LatticePoint,
    pub fx: f64,
    pub fy: f64,
}

/// Finds `x <= y` with `f(x) > f(y) + 1e-12`, scanning unit steps in lexicographic order.
///
/// Any decreasing pair implies a decreasing unit step on a chain between them,
/// so the scan is complete.
pub fn check_nonmonotone<O: Objective + ?Sized>(
    objective: &O,
) -> Result<Option<NonMonotoneWitness>> {
    let bound = objective.bound();
    if bound.box_size() > EXHAUSTIVE_LIMIT {
        return Err(Error::BoxTooLarge {
            points: bound.box_size(),
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let values = Values::new(objective)?;
    for x in bound.points() {
        let fx = values.get(&x)?;
        for e in 0..bound.dim() {
            if let Ok(y) = x.add_units(CoordinateId(e), 1, Some(bound)) {
                let fy = values.get(&y)?;
                if fx > fy + NONMONOTONE_MARGIN {
                    return Ok(Some(NonMonotoneWitness { x, y, fx, fy }));
                }
            }
        }
    }
    Ok(None)
}

/// Whether `bound` is small enough for every check to run exhaustively.
pub fn exhaustive_checks_fit(bound: &BoundVector) -> bool {
    bound.comparable_pairs() <= PAIR_LIMIT
}
