use serde::Serialize;

use crate::lattice::{ceil_log2, BoundVector};
use crate::solvers::SolveResult;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoordinateBudget {
    pub coordinate: usize,
    pub budget: u64,
    pub observed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub budget: u64,
    pub observed: u64,
    pub passed: bool,
    pub per_coordinate: Vec<CoordinateBudget>,
}

/// Raw-equivalent query allowance for one coordinate of capacity `cap`:
/// two cap searches of `ceil(log2(cap + 1))` probes and at most
/// `ceil(log2(cap)) + 1` halving iterations, each probe or iteration costing
/// two or four evaluations.
pub fn coordinate_budget(cap: u64) -> u64 {
    4 * ceil_log2(cap + 1) as u64 + 4 * (ceil_log2(cap) as u64 + 1)
}

/// Whole-run allowance: per-coordinate budgets plus two for the final evaluation.
pub fn query_budget(bound: &BoundVector) -> u64 {
    bound
        .caps()
        .iter()
        .map(|&c| coordinate_budget(c))
        .sum::<u64>()
        + 2
}

/// Checks a solve against the `O(n log B)` query budget.
pub fn query_audit(result: &SolveResult, bound: &BoundVector) -> AuditReport {
    let per_coordinate = result
        .trace
        .iter()
        .map(|t| CoordinateBudget {
            coordinate: t.coordinate,
            budget: coordinate_budget(bound.caps()[t.coordinate]),
            observed: t.queries,
        })
        .collect();
    let budget = query_budget(bound);
    AuditReport {
        budget,
        observed: result.raw_queries,
        passed: result.raw_queries <= budget,
        per_coordinate,
    }
}
