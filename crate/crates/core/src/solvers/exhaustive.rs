use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::oracle::Objective;

/// Largest box `exhaustive_opt` will enumerate.
pub const EXHAUSTIVE_LIMIT: u128 = 10_000_000;

/// Extremes of an objective over its whole box.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxSummary {
    /// Lexicographically smallest maximizer.
    pub argmax: LatticePoint,
    pub max: f64,
    pub min: f64,
    pub points: u128,
}

pub fn exhaustive_scan<O: Objective + ?Sized>(objective: &O) -> Result<BoxSummary> {
    let bound = objective.bound();
    let points = bound.box_size();
    if points > EXHAUSTIVE_LIMIT {
        return Err(Error::BoxTooLarge {
            points,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let mut best: Option<(LatticePoint, f64)> = None;
    let mut min = f64::INFINITY;
    for x in bound.points() {
        let v = objective.evaluate(&x)?;
        min = min.min(v);
        if best.as_ref().is_none_or(|(_, b)| v > *b) {
            best = Some((x, v));
        }
    }
    let (argmax, max) = best.expect("a box always contains the origin");
    Ok(BoxSummary {
        argmax,
        max,
        min,
        points,
    })
}

/// Maximizer by full enumeration; ties go to the lexicographically smallest point.
pub fn exhaustive_opt<O: Objective + ?Sized>(objective: &O) -> Result<(LatticePoint, f64)> {
    let s = exhaustive_scan(objective)?;
    Ok((s.argmax, s.max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::BoundVector;
    use crate::oracle::FnObjective;
    use crate::profit::fixtures::instance_a;
    use crate::profit::ProfitOracle;

    #[test]
    fn instance_a_optimum() {
        let (x, v) = exhaustive_opt(&ProfitOracle::new(instance_a())).unwrap();
        assert_eq!(x, LatticePoint::new(vec![2]));
        assert!((v - 0.425).abs() < 1e-12);
    }

    #[test]
    fn constant_objective_ties_to_origin() {
        let obj = FnObjective::new(
            BoundVector::new(vec![3, 2, 4]).unwrap(),
            |_: &LatticePoint| 7.0,
        );
        assert_eq!(exhaustive_opt(&obj).unwrap(), (LatticePoint::zeros(3), 7.0));
    }

    #[test]
    fn modular_objective_is_separable() {
        let w = [1.5, -2.0, 0.0, 0.25];
        let obj = FnObjective::new(
            BoundVector::new(vec![2, 3, 4, 5]).unwrap(),
            move |x: &LatticePoint| x.levels().iter().zip(w).map(|(&v, w)| v as f64 * w).sum(),
        );
        let (x, _) = exhaustive_opt(&obj).unwrap();
        assert_eq!(x, LatticePoint::new(vec![2, 0, 0, 5]));
    }

    #[test]
    fn oversized_box_refused() {
        let obj = FnObjective::new(
            BoundVector::new(vec![99; 4]).unwrap(),
            |_: &LatticePoint| 0.0,
        );
        match exhaustive_opt(&obj) {
            Err(Error::BoxTooLarge { points, .. }) => assert_eq!(points, 100_000_000),
            other => panic!("expected refusal, got {other:?}"),
        }
    }
}
