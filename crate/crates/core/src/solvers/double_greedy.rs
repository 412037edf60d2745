use crate::error::{Error, Result};
use crate::lattice::{CoordinateId, LatticePoint};
use crate::oracle::{CountingOracle, Objective};
use crate::rng::RngStream;

use super::caps::{find_cap_u, find_cap_v, CapPair};
use super::{
    Algorithm, Clamp, CoordinateTrace, Side, SolveObserver, SolveResult, StepEvent, DR_SLACK,
};

/// Binary-search double greedy: per coordinate, close the gap between the
/// lower solution `x` and the upper solution `y` by halving steps, then clamp
/// the meeting point into `[v, u]`.
pub fn bsdg_solve<O: Objective + ?Sized>(objective: &O, seed: u64) -> Result<SolveResult> {
    bsdg_solve_observed(objective, seed, &mut ())
}

pub fn bsdg_solve_observed<O: Objective + ?Sized>(
    objective: &O,
    seed: u64,
    observer: &mut dyn SolveObserver,
) -> Result<SolveResult> {
    run(objective, seed, observer, Algorithm::Bsdg)
}

/// Classic double greedy with unit steps and no caps; `B(e)` iterations per coordinate.
pub fn unit_double_greedy<O: Objective + ?Sized>(objective: &O, seed: u64) -> Result<SolveResult> {
    unit_double_greedy_observed(objective, seed, &mut ())
}

pub fn unit_double_greedy_observed<O: Objective + ?Sized>(
    objective: &O,
    seed: u64,
    observer: &mut dyn SolveObserver,
) -> Result<SolveResult> {
    run(objective, seed, observer, Algorithm::Unit)
}

fn run<O: Objective + ?Sized>(
    objective: &O,
    seed: u64,
    observer: &mut dyn SolveObserver,
    algorithm: Algorithm,
) -> Result<SolveResult> {
    let oracle = CountingOracle::new(objective);
    let bound = oracle.bound().clone();
    let mut rng = RngStream::new(seed);
    let mut x = LatticePoint::zeros(bound.dim());
    let mut y = bound.top();
    let mut trace = Vec::with_capacity(bound.dim());

    for i in 0..bound.dim() {
        let e = CoordinateId(i);
        let before = oracle.ledger();

        let caps = match algorithm {
            Algorithm::Bsdg => {
                let u = find_cap_u(&oracle, &x, e)?;
                let v = find_cap_v(&oracle, &y, e)?;
                if u < v {
                    return Err(Error::DrViolation {
                        coordinate: i,
                        detail: format!("cap inversion u = {u} < v = {v}"),
                    });
                }
                Some(CapPair { u, v })
            }
            _ => None,
        };

        let mut iterations = 0u32;
        while x.get(e) < y.get(e) {
            let gap = y.get(e) - x.get(e);
            let step = match algorithm {
                Algorithm::Bsdg => (gap / 2).max(1),
                _ => 1,
            };
            let alpha = oracle.marginal(&x, e, step as i64)?;
            let beta = oracle.marginal(&y, e, -(step as i64))?;
            observer.on_marginals(e, alpha, beta);
            if alpha + beta < -DR_SLACK {
                return Err(Error::DrViolation {
                    coordinate: i,
                    detail: format!("alpha + beta = {} at x = {x}, y = {y}", alpha + beta),
                });
            }

            let moved = if beta <= 0.0 {
                Side::Lower
            } else if alpha <= 0.0 {
                Side::Upper
            } else if rng.uniform() * (alpha + beta) < alpha {
                Side::Lower
            } else {
                Side::Upper
            };
            match moved {
                Side::Lower => x.set(e, x.get(e) + step),
                Side::Upper => y.set(e, y.get(e) - step),
            }
            iterations += 1;
            observer.on_step(&StepEvent {
                coordinate: e,
                iteration: iterations,
                step,
                alpha,
                beta,
                moved,
                x: &x,
                y: &y,
            });
        }

        let mut clamp_applied = Clamp::None;
        if let Some(CapPair { u, v }) = caps {
            // u >= v here, so at most one of these changes the level
            if x.get(e) >= u {
                x.set(e, u);
                y.set(e, u);
                clamp_applied = Clamp::U;
            } else if y.get(e) <= v {
                x.set(e, v);
                y.set(e, v);
                clamp_applied = Clamp::V;
            }
        }
        observer.on_coordinate_done(e, &x, &y);

        trace.push(CoordinateTrace {
            coordinate: i,
            iterations,
            u_cap: caps.map(|c| c.u),
            v_cap: caps.map(|c| c.v),
            clamp_applied,
            queries: (oracle.ledger() - before).raw_equivalent(),
        });
    }

    let value = oracle.evaluate(&x)?;
    Ok(SolveResult {
        algorithm,
        solution: x,
        value,
        raw_queries: oracle.ledger().raw_equivalent(),
        trace,
        seed,
    })
}
