use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::rng::RngStream;

use super::model::BipartiteInstance;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpreadEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: u64,
}

impl SpreadEstimate {
    /// Whether `value` lies within `k` standard errors of the mean.
    pub fn covers(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.std_error + 1e-12
    }

    /// Like [`SpreadEstimate::covers`], but the standard error is at least the
    /// one implied by `variance`, the per-trial variance under the hypothesis.
    /// Keeps near-deterministic strategies, whose samples can all coincide,
    /// from failing on a zero sample error.
    pub fn agrees_with(&self, value: f64, variance: f64, k: f64) -> bool {
        let se = self.std_error.max((variance / self.trials as f64).sqrt());
        (self.mean - value).abs() <= k * se + 1e-12
    }
}

/// Simulates the trials of strategy `m` and counts activated targets.
///
/// A target is activated in a run iff at least one of the independent trials
/// reaching it succeeds.
pub fn monte_carlo_spread(
    instance: &BipartiteInstance,
    m: &LatticePoint,
    trials: u64,
    rng: &mut RngStream,
) -> Result<SpreadEstimate> {
    if trials == 0 {
        return Err(Error::Config("monte carlo needs at least one trial".into()));
    }
    instance.capacities().check(m)?;
    let mut sum = 0u64;
    let mut sum_sq = 0u64;
    for _ in 0..trials {
        let mut activated = 0u64;
        for t in 0..instance.n_targets() {
            let hit = instance.gamma(t).iter().any(|&s| {
                let probs = &instance.sources()[s].probs;
                probs[..m.levels()[s] as usize]
                    .iter()
                    .any(|&p| rng.bernoulli(p))
            });
            activated += hit as u64;
        }
        sum += activated;
        sum_sq += activated * activated;
    }
    let n = trials as f64;
    let mean = sum as f64 / n;
    let std_error = if trials > 1 {
        let var = (sum_sq as f64 - sum as f64 * sum as f64 / n) / (n - 1.0);
        (var.max(0.0) / n).sqrt()
    } else {
        0.0
    };
    Ok(SpreadEstimate {
        mean,
        std_error,
        trials,
    })
}
