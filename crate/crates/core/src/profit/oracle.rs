use crate::error::{Error, Result};
use crate::lattice::{BoundVector, CoordinateId, LatticePoint};
use crate::oracle::Objective;

use super::model::BipartiteInstance;

/// Closed-form profit `f(m) = sigma(m) - delta(m)` over the capacity box.
///
/// `prefix[s][k]` holds the probability that none of the first `k` trials of
/// source `s` succeeds on a given neighbour, with `prefix[s][0] = 1`.
#[derive(Debug, Clone)]
pub struct ProfitOracle {
    instance: BipartiteInstance,
    bound: BoundVector,
    prefix: Vec<Vec<f64>>,
}

impl ProfitOracle {
    pub fn new(instance: BipartiteInstance) -> Self {
        let prefix = instance
            .sources()
            .iter()
            .map(|s| {
                let mut acc = 1.0;
                let mut p = Vec::with_capacity(s.probs.len() + 1);
                p.push(acc);
                for &q in &s.probs {
                    acc *= 1.0 - q;
                    p.push(acc);
                }
                p
            })
            .collect();
        let bound = instance.capacities();
        ProfitOracle {
            instance,
            bound,
            prefix,
        }
    }

    pub fn instance(&self) -> &BipartiteInstance {
        &self.instance
    }

    pub fn prefix_products(&self, s: usize) -> &[f64] {
        &self.prefix[s]
    }

    fn miss_probability(&self, m: &LatticePoint, t: usize) -> f64 {
        self.instance
            .gamma(t)
            .iter()
            .map(|&s| self.prefix[s][m.levels()[s] as usize])
            .product()
    }

    /// Probability that target `t` is activated under strategy `m`.
    pub fn activation_probability(&self, m: &LatticePoint, t: usize) -> Result<f64> {
        self.bound.check(m)?;
        if t >= self.instance.n_targets() {
            return Err(Error::IndexOutOfRange {
                what: "target",
                index: t,
                len: self.instance.n_targets(),
            });
        }
        Ok(1.0 - self.miss_probability(m, t))
    }

    /// Expected number of activated targets.
    pub fn influence_spread(&self, m: &LatticePoint) -> Result<f64> {
        self.bound.check(m)?;
        Ok(self.spread_unchecked(m))
    }

    /// Variance of the activated-target count; targets activate independently.
    pub fn spread_variance(&self, m: &LatticePoint) -> Result<f64> {
        self.bound.check(m)?;
        Ok((0..self.instance.n_targets())
            .map(|t| {
                let q = self.miss_probability(m, t);
                q * (1.0 - q)
            })
            .sum())
    }

    fn spread_unchecked(&self, m: &LatticePoint) -> f64 {
        (0..self.instance.n_targets())
            .map(|t| 1.0 - self.miss_probability(m, t))
            .sum()
    }

    pub fn marketing_cost(&self, m: &LatticePoint) -> Result<f64> {
        self.bound.check(m)?;
        Ok(self.cost_unchecked(m))
    }

    fn cost_unchecked(&self, m: &LatticePoint) -> f64 {
        self.instance
            .sources()
            .iter()
            .zip(m.levels())
            .map(|(s, &k)| k as f64 * s.unit_cost)
            .sum()
    }

    pub fn profit(&self, m: &LatticePoint) -> Result<f64> {
        self.bound.check(m)?;
        Ok(self.spread_unchecked(m) - self.cost_unchecked(m))
    }

    /// `f(base + k * chi_e) - f(base)` computed from the targets adjacent to `e` only.
    pub fn profit_marginal(&self, e: usize, k: i64, base: &LatticePoint) -> Result<f64> {
        self.bound.check(base)?;
        if e >= self.instance.n_sources() {
            return Err(Error::IndexOutOfRange {
                what: "source",
                index: e,
                len: self.instance.n_sources(),
            });
        }
        base.add_units(CoordinateId(e), k, Some(&self.bound))?;
        Ok(self.marginal_unchecked(e, k, base))
    }

    fn marginal_unchecked(&self, e: usize, k: i64, base: &LatticePoint) -> f64 {
        if k == 0 {
            return 0.0;
        }
        let from = base.levels()[e] as usize;
        let to = (from as i64 + k) as usize;
        // Miss probability of each neighbour with e's own factor left out, so no
        // division by a possibly-zero prefix product is needed.
        let others: f64 = self
            .instance
            .neighbors(e)
            .iter()
            .map(|&t| {
                self.instance
                    .gamma(t)
                    .iter()
                    .filter(|&&s| s != e)
                    .map(|&s| self.prefix[s][base.levels()[s] as usize])
                    .product::<f64>()
            })
            .sum();
        let spread_gain = (self.prefix[e][from] - self.prefix[e][to]) * others;
        spread_gain - k as f64 * self.instance.sources()[e].unit_cost
    }
}

impl Objective for ProfitOracle {
    fn bound(&self) -> &BoundVector {
        &self.bound
    }

    fn evaluate(&self, x: &LatticePoint) -> Result<f64> {
        self.profit(x)
    }

    fn fused_marginal(&self, base: &LatticePoint, e: CoordinateId, k: i64) -> Option<Result<f64>> {
        Some(Ok(self.marginal_unchecked(e.index(), k, base)))
    }
}
