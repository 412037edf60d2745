use crate::error::Result;
use crate::lattice::{CoordinateId, LatticePoint};
use crate::oracle::{CountingOracle, Objective};

/// Levels bounding the useful range of one coordinate.
///
/// Every unit added below `u` on the lower solution has a non-negative gain;
/// every unit removed above `v` on the upper solution has a non-negative gain.
/// For a DR-submodular objective `v <= u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapPair {
    pub u: u64,
    pub v: u64,
}

/// Smallest `b` in `[0, len)` with `negative(b)`, or `len` if there is none.
/// Assumes the predicate is monotone (false...false true...true).
fn first_negative(len: u64, mut negative: impl FnMut(u64) -> Result<bool>) -> Result<u64> {
    let (mut lo, mut hi) = (0, len);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if negative(mid)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// `x(e) + min{b : f(chi_e | x + b chi_e) < 0}`, or the capacity if adding never hurts.
///
/// Uses at most `ceil(log2(B(e) - x(e) + 1))` marginal probes.
pub fn find_cap_u<O: Objective + ?Sized>(
    oracle: &CountingOracle<'_, O>,
    x: &LatticePoint,
    e: CoordinateId,
) -> Result<u64> {
    let cap = oracle.bound().cap(e);
    let start = x.get(e);
    let room = cap.saturating_sub(start);
    let b = first_negative(room, |b| {
        let base = x.add_units(e, b as i64, Some(oracle.bound()))?;
        Ok(oracle.marginal(&base, e, 1)? < 0.0)
    })?;
    Ok(start + b)
}

/// `y(e) - min{b : f(-chi_e | y - b chi_e) < 0}`, or 0 if removing never hurts.
pub fn find_cap_v<O: Objective + ?Sized>(
    oracle: &CountingOracle<'_, O>,
    y: &LatticePoint,
    e: CoordinateId,
) -> Result<u64> {
    let start = y.get(e);
    let b = first_negative(start, |b| {
        let base = y.add_units(e, -(b as i64), Some(oracle.bound()))?;
        Ok(oracle.marginal(&base, e, -1)? < 0.0)
    })?;
    Ok(start - b)
}
