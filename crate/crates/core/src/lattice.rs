//! Points and boxes of the bounded integer lattice `{x : 0 <= x <= B}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense index of a coordinate of the ground set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoordinateId(pub usize);

impl CoordinateId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for CoordinateId {
    fn from(index: usize) -> Self {
        CoordinateId(index)
    }
}

impl fmt::Display for CoordinateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A non-negative integer vector, one level per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(Vec<u64>);

impl LatticePoint {
    pub fn new(levels: Vec<u64>) -> Self {
        LatticePoint(levels)
    }

    pub fn zeros(n: usize) -> Self {
        LatticePoint(vec![0; n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn levels(&self) -> &[u64] {
        &self.0
    }

    pub fn into_levels(self) -> Vec<u64> {
        self.0
    }

    pub fn get(&self, e: CoordinateId) -> u64 {
        self.0[e.0]
    }

    pub(crate) fn set(&mut self, e: CoordinateId, level: u64) {
        self.0[e.0] = level;
    }

    fn same_dim(&self, other: &LatticePoint) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// Coordinate-wise maximum.
    pub fn join(&self, other: &LatticePoint) -> Result<LatticePoint> {
        self.same_dim(other)?;
        Ok(LatticePoint(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        ))
    }

    /// Coordinate-wise minimum.
    pub fn meet(&self, other: &LatticePoint) -> Result<LatticePoint> {
        self.same_dim(other)?;
        Ok(LatticePoint(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        ))
    }

    /// Componentwise `self <= other`. Points of different dimension are incomparable.
    pub fn componentwise_le(&self, other: &LatticePoint) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Returns `self + k * chi_e`, checked against zero and, when given, the bound.
    pub fn add_units(
        &self,
        e: CoordinateId,
        k: i64,
        bound: Option<&BoundVector>,
    ) -> Result<LatticePoint> {
        if e.0 >= self.dim() {
            return Err(Error::IndexOutOfRange {
                what: "coordinate",
                index: e.0,
                len: self.dim(),
            });
        }
        let target = self.0[e.0] as i128 + k as i128;
        let cap = match bound {
            Some(b) if b.dim() != self.dim() => {
                return Err(Error::DimensionMismatch {
                    expected: b.dim(),
                    found: self.dim(),
                });
            }
            Some(b) => b.cap(e),
            None => u64::MAX,
        };
        if target < 0 || target > cap as i128 {
            return Err(Error::OutOfBounds {
                coordinate: e.0,
                level: target,
                cap,
            });
        }
        let mut out = self.clone();
        out.0[e.0] = target as u64;
        Ok(out)
    }
}

impl From<Vec<u64>> for LatticePoint {
    fn from(levels: Vec<u64>) -> Self {
        LatticePoint(levels)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Per-coordinate capacities; defines the feasible box `[0, B]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoundVector(Vec<u64>);

impl BoundVector {
    pub fn new(caps: Vec<u64>) -> Result<Self> {
        if let Some(e) = caps.iter().position(|&c| c == 0) {
            return Err(Error::ZeroCapacity(e));
        }
        Ok(BoundVector(caps))
    }

    pub fn uniform(n: usize, cap: u64) -> Result<Self> {
        Self::new(vec![cap; n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn caps(&self) -> &[u64] {
        &self.0
    }

    pub fn cap(&self, e: CoordinateId) -> u64 {
        self.0[e.0]
    }

    pub fn max_cap(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// The top of the box as a point.
    pub fn top(&self) -> LatticePoint {
        LatticePoint(self.0.clone())
    }

    pub fn contains(&self, x: &LatticePoint) -> bool {
        x.dim() == self.dim() && x.0.iter().zip(&self.0).all(|(v, c)| v <= c)
    }

    pub fn check(&self, x: &LatticePoint) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        for (e, (v, c)) in x.0.iter().zip(&self.0).enumerate() {
            if v > c {
                return Err(Error::OutOfBounds {
                    coordinate: e,
                    level: *v as i128,
                    cap: *c,
                });
            }
        }
        Ok(())
    }

    /// Number of lattice points in the box, saturating at `u128::MAX`.
    pub fn box_size(&self) -> u128 {
        self.0
            .iter()
            .try_fold(1u128, |acc, &c| acc.checked_mul(c as u128 + 1))
            .unwrap_or(u128::MAX)
    }

    /// Number of ordered pairs `x <= y` inside the box, saturating.
    pub fn comparable_pairs(&self) -> u128 {
        self.0
            .iter()
            .try_fold(1u128, |acc, &c| {
                let c = c as u128;
                acc.checked_mul((c + 1) * (c + 2) / 2)
            })
            .unwrap_or(u128::MAX)
    }

    /// Mixed-radix rank of `x`, consistent with the order of [`BoundVector::points`].
    pub fn rank(&self, x: &LatticePoint) -> usize {
        x.0.iter()
            .zip(&self.0)
            .fold(0usize, |acc, (v, c)| acc * (*c as usize + 1) + *v as usize)
    }

    /// All points of the box in lexicographic order (coordinate 0 most significant).
    pub fn points(&self) -> BoxPoints {
        BoxPoints::below(&self.top())
    }
}

/// Odometer over a box, see [`BoundVector::points`].
pub struct BoxPoints {
    upper: Vec<u64>,
    next: Option<LatticePoint>,
}

impl BoxPoints {
    /// All points `0 <= z <= upper` in lexicographic order.
    pub fn below(upper: &LatticePoint) -> Self {
        BoxPoints {
            upper: upper.0.clone(),
            next: Some(LatticePoint::zeros(upper.dim())),
        }
    }
}

impl Iterator for BoxPoints {
    type Item = LatticePoint;

    fn next(&mut self) -> Option<LatticePoint> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.dim();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if succ.0[i] < self.upper[i] {
                succ.0[i] += 1;
                self.next = Some(succ);
                break;
            }
            succ.0[i] = 0;
        }
        Some(current)
    }
}

/// `ceil(log2(n))` for `n >= 1`; zero for `n <= 1`.
pub fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}
