use crate::lattice::{ceil_log2, BoundVector, CoordinateId, LatticePoint};
use crate::solvers::{Algorithm, SolveObserver, StepEvent, DR_SLACK};

/// Tallies of runtime invariant failures seen by an [`InvariantMonitor`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct InvariantTally {
    pub steps: u64,
    /// `alpha + beta < -1e-9`
    pub negative_pair_sums: u64,
    /// `0 <= x <= y <= B` broken, or a finished coordinate left with `x != y`.
    pub sandwich_violations: u64,
    pub iteration_overruns: u64,
    /// Gap `y(e) - x(e)` failed to shrink on a step.
    pub stalled_steps: u64,
}

impl InvariantTally {
    pub fn is_clean(&self) -> bool {
        self.negative_pair_sums == 0
            && self.sandwich_violations == 0
            && self.iteration_overruns == 0
            && self.stalled_steps == 0
    }
}

impl std::ops::AddAssign for InvariantTally {
    fn add_assign(&mut self, o: Self) {
        self.steps += o.steps;
        self.negative_pair_sums += o.negative_pair_sums;
        self.sandwich_violations += o.sandwich_violations;
        self.iteration_overruns += o.iteration_overruns;
        self.stalled_steps += o.stalled_steps;
    }
}

/// Observer that re-checks the solver invariants from the outside.
pub struct InvariantMonitor {
    bound: BoundVector,
    algorithm: Algorithm,
    last_gap: Option<u64>,
    pub tally: InvariantTally,
}

impl InvariantMonitor {
    pub fn new(bound: BoundVector, algorithm: Algorithm) -> Self {
        InvariantMonitor {
            bound,
            algorithm,
            last_gap: None,
            tally: InvariantTally::default(),
        }
    }

    fn iteration_limit(&self, cap: u64) -> u64 {
        match self.algorithm {
            Algorithm::Bsdg => ceil_log2(cap) as u64 + 1,
            _ => cap,
        }
    }

    fn sandwiched(&self, e: usize, x: &LatticePoint, y: &LatticePoint) -> bool {
        if !(x.componentwise_le(y) && self.bound.contains(y)) {
            return false;
        }
        x.levels()[..e] == y.levels()[..e]
    }
}

impl SolveObserver for InvariantMonitor {
    fn on_marginals(&mut self, _e: CoordinateId, alpha: f64, beta: f64) {
        if alpha + beta < -DR_SLACK {
            self.tally.negative_pair_sums += 1;
        }
    }

    fn on_step(&mut self, ev: &StepEvent<'_>) {
        let e = ev.coordinate.index();
        self.tally.steps += 1;
        if !self.sandwiched(e, ev.x, ev.y) {
            self.tally.sandwich_violations += 1;
            return;
        }
        let gap = ev.y.levels()[e] - ev.x.levels()[e];
        let before = if ev.iteration == 1 {
            self.bound.caps()[e]
        } else {
            self.last_gap.unwrap_or(u64::MAX)
        };
        if gap >= before {
            self.tally.stalled_steps += 1;
        }
        self.last_gap = Some(gap);
        if ev.iteration as u64 > self.iteration_limit(self.bound.caps()[e]) {
            self.tally.iteration_overruns += 1;
        }
    }

    fn on_coordinate_done(&mut self, e: CoordinateId, x: &LatticePoint, y: &LatticePoint) {
        if !self.sandwiched(e.index() + 1, x, y) {
            self.tally.sandwich_violations += 1;
        }
        self.last_gap = None;
    }
}
