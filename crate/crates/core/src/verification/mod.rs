//! Property checks, runtime invariant monitoring, query audits and the ratio harness.

mod audit;
mod checks;
mod harness;
mod monitor;

pub use audit::{coordinate_budget, query_audit, query_budget, AuditReport, CoordinateBudget};
pub use checks::{
    check_dr, check_lattice_submodular, check_nonmonotone, exhaustive_checks_fit, CheckConfig,
    CheckMode, CheckReport, DrViolation, LatticeViolation, NonMonotoneWitness, DEFAULT_TOL,
    NONMONOTONE_MARGIN, PAIR_LIMIT, SAMPLE_COUNT,
};
pub use harness::{
    ratio_harness, HarnessCase, HarnessReport, HarnessRow, RunStats, SIGMA_ALLOWANCE, TARGET_RATIO,
};
pub use monitor::{InvariantMonitor, InvariantTally};
