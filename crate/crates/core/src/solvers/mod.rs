//! Double greedy solvers on the bounded integer lattice and an exhaustive optimum finder.

mod caps;
mod double_greedy;
mod exhaustive;

use serde::{Deserialize, Serialize};

use crate::lattice::{CoordinateId, LatticePoint};

pub use caps::{find_cap_u, find_cap_v, CapPair};
pub use double_greedy::{
    bsdg_solve, bsdg_solve_observed, unit_double_greedy, unit_double_greedy_observed,
};
pub use exhaustive::{exhaustive_opt, exhaustive_scan, BoxSummary, EXHAUSTIVE_LIMIT};

/// `alpha + beta` below this is treated as a witnessed DR violation.
pub const DR_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Bsdg,
    Unit,
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Clamp {
    None,
    U,
    V,
}

/// What happened on one coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoordinateTrace {
    pub coordinate: usize,
    pub iterations: u32,
    pub u_cap: Option<u64>,
    pub v_cap: Option<u64>,
    pub clamp_applied: Clamp,
    /// Raw-equivalent oracle queries spent on this coordinate.
    pub queries: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub algorithm: Algorithm,
    pub solution: LatticePoint,
    pub value: f64,
    /// Raw-equivalent evaluations: plain evaluations plus two per fused marginal.
    pub raw_queries: u64,
    pub trace: Vec<CoordinateTrace>,
    pub seed: u64,
}

/// Which end of the sandwich moved in one iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `x(e) += step`
    Lower,
    /// `y(e) -= step`
    Upper,
}

/// State after one iteration of the inner loop.
#[derive(Debug)]
pub struct StepEvent<'a> {
    pub coordinate: CoordinateId,
    pub iteration: u32,
    pub step: u64,
    pub alpha: f64,
    pub beta: f64,
    pub moved: Side,
    pub x: &'a LatticePoint,
    pub y: &'a LatticePoint,
}

/// Hooks into a running solve. All methods default to no-ops.
pub trait SolveObserver {
    /// Called with every `(alpha, beta)` pair before the solver acts on it.
    fn on_marginals(&mut self, _coordinate: CoordinateId, _alpha: f64, _beta: f64) {}

    fn on_step(&mut self, _event: &StepEvent<'_>) {}

    /// Called once a coordinate is finished and clamped.
    fn on_coordinate_done(
        &mut self,
        _coordinate: CoordinateId,
        _x: &LatticePoint,
        _y: &LatticePoint,
    ) {
    }
}

impl SolveObserver for () {}
