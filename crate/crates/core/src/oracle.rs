//! Objective evaluation oracles and query accounting.

use std::cell::Cell;

use crate::error::Result;
use crate::lattice::{BoundVector, CoordinateId, LatticePoint};

/// A real-valued function on the box `[0, bound]`, accessed as an evaluation oracle.
///
/// Implementations must be deterministic. `fused_marginal` is an optional fast
/// path for `f(base + k * chi_e) - f(base)`; callers only use it through
/// [`CountingOracle::marginal`], which has already validated both points.
pub trait Objective {
    fn bound(&self) -> &BoundVector;

    fn evaluate(&self, x: &LatticePoint) -> Result<f64>;

    fn fused_marginal(
        &self,
        _base: &LatticePoint,
        _e: CoordinateId,
        _k: i64,
    ) -> Option<Result<f64>> {
        None
    }
}

impl<T: Objective + ?Sized> Objective for &T {
    fn bound(&self) -> &BoundVector {
        (**self).bound()
    }

    fn evaluate(&self, x: &LatticePoint) -> Result<f64> {
        (**self).evaluate(x)
    }

    fn fused_marginal(&self, base: &LatticePoint, e: CoordinateId, k: i64) -> Option<Result<f64>> {
        (**self).fused_marginal(base, e, k)
    }
}

/// Wraps a plain closure as an [`Objective`].
pub struct FnObjective<F> {
    bound: BoundVector,
    f: F,
}

impl<F> FnObjective<F>
where
    F: Fn(&LatticePoint) -> f64,
{
    pub fn new(bound: BoundVector, f: F) -> Self {
        FnObjective { bound, f }
    }
}

impl<F> Objective for FnObjective<F>
where
    F: Fn(&LatticePoint) -> f64,
{
    fn bound(&self) -> &BoundVector {
        &self.bound
    }

    fn evaluate(&self, x: &LatticePoint) -> Result<f64> {
        Ok((self.f)(x))
    }
}

/// Oracle call counts. A fused marginal is worth two plain evaluations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryLedger {
    pub raw: u64,
    pub fused: u64,
}

impl QueryLedger {
    pub fn raw_equivalent(&self) -> u64 {
        self.raw + 2 * self.fused
    }
}

impl std::ops::Sub for QueryLedger {
    type Output = QueryLedger;

    fn sub(self, rhs: QueryLedger) -> QueryLedger {
        QueryLedger {
            raw: self.raw - rhs.raw,
            fused: self.fused - rhs.fused,
        }
    }
}

impl std::ops::Add for QueryLedger {
    type Output = QueryLedger;

    fn add(self, rhs: QueryLedger) -> QueryLedger {
        QueryLedger {
            raw: self.raw + rhs.raw,
            fused: self.fused + rhs.fused,
        }
    }
}

/// Counts every access to the wrapped objective.
///
/// Not `Sync`: each worker owns its own wrapper and ledgers are summed afterwards.
pub struct CountingOracle<'a, O: ?Sized> {
    inner: &'a O,
    raw: Cell<u64>,
    fused: Cell<u64>,
}

impl<'a, O: Objective + ?Sized> CountingOracle<'a, O> {
    pub fn new(inner: &'a O) -> Self {
        CountingOracle {
            inner,
            raw: Cell::new(0),
            fused: Cell::new(0),
        }
    }

    pub fn bound(&self) -> &BoundVector {
        self.inner.bound()
    }

    pub fn ledger(&self) -> QueryLedger {
        QueryLedger {
            raw: self.raw.get(),
            fused: self.fused.get(),
        }
    }

    pub fn evaluate(&self, x: &LatticePoint) -> Result<f64> {
        self.bound().check(x)?;
        self.raw.set(self.raw.get() + 1);
        self.inner.evaluate(x)
    }

    /// `f(base + k * chi_e) - f(base)`. Both points must lie in the box.
    pub fn marginal(&self, base: &LatticePoint, e: CoordinateId, k: i64) -> Result<f64> {
        let bound = self.bound();
        bound.check(base)?;
        let moved = base.add_units(e, k, Some(bound))?;
        if k == 0 {
            return Ok(0.0);
        }
        if let Some(gain) = self.inner.fused_marginal(base, e, k) {
            self.fused.set(self.fused.get() + 1);
            return gain;
        }
        let after = self.evaluate(&moved)?;
        let before = self.evaluate(base)?;
        Ok(after - before)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn square() -> FnObjective<impl Fn(&LatticePoint) -> f64> {
        FnObjective::new(BoundVector::new(vec![3, 2]).unwrap(), |x: &LatticePoint| {
            let a = x.levels()[0] as f64;
            let b = x.levels()[1] as f64;
            a * a - b
        })
    }

    #[test]
    fn evaluate_counts_exactly_once() {
        let obj = square();
        let oracle = CountingOracle::new(&obj);
        for i in 1..=5u64 {
            oracle.evaluate(&LatticePoint::new(vec![1, 1])).unwrap();
            assert_eq!(oracle.ledger().raw, i);
        }
        assert_eq!(oracle.ledger().fused, 0);
    }

    #[test]
    fn black_box_marginal_costs_two_evaluations() {
        let obj = square();
        let oracle = CountingOracle::new(&obj);
        let base = LatticePoint::new(vec![1, 0]);
        let gain = oracle.marginal(&base, CoordinateId(0), 2).unwrap();
        assert_eq!(gain, 8.0);
        assert_eq!(oracle.ledger().raw_equivalent(), 2);
        let gain = oracle.marginal(&base, CoordinateId(0), -1).unwrap();
        assert_eq!(gain, -1.0);
        assert_eq!(oracle.ledger().raw, 4);
    }

    #[test]
    fn zero_delta_is_free() {
        let obj = square();
        let oracle = CountingOracle::new(&obj);
        let base = LatticePoint::new(vec![2, 2]);
        assert_eq!(oracle.marginal(&base, CoordinateId(1), 0).unwrap(), 0.0);
        assert_eq!(oracle.ledger(), QueryLedger::default());
    }

    #[test]
    fn out_of_box_marginal_is_rejected_without_queries() {
        let obj = square();
        let oracle = CountingOracle::new(&obj);
        let base = LatticePoint::new(vec![3, 0]);
        assert!(matches!(
            oracle.marginal(&base, CoordinateId(0), 1),
            Err(Error::OutOfBounds { .. })
        ));
        assert!(oracle
            .marginal(&LatticePoint::new(vec![4, 0]), CoordinateId(1), 1)
            .is_err());
        assert!(oracle.evaluate(&LatticePoint::new(vec![0])).is_err());
        assert_eq!(oracle.ledger(), QueryLedger::default());
    }
}
