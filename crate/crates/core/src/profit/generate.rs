use crate::error::{Error, Result};
use crate::rng::RngStream;

use super::model::{BipartiteInstance, SourceNode};

/// Random instance family.
///
/// Each source draws a capacity, a first-trial probability `p1`, a decay
/// `gamma` (so `p_i = p1 * gamma^(i-1)` is non-increasing) and a cost fraction;
/// its unit cost is `cost_fraction * p1 * degree`, which ties the price of a
/// trial to its best-case first-trial gain and keeps optima off the boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorParams {
    pub n_sources: usize,
    pub n_targets: usize,
    pub edge_prob: f64,
    pub cap_range: (u64, u64),
    pub p1_range: (f64, f64),
    pub decay_range: (f64, f64),
    pub cost_fraction_range: (f64, f64),
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            n_sources: 4,
            n_targets: 8,
            edge_prob: 0.5,
            cap_range: (1, 6),
            p1_range: (0.1, 0.9),
            decay_range: (0.5, 0.95),
            cost_fraction_range: (0.3, 0.9),
        }
    }
}

fn check_range(name: &str, (lo, hi): (f64, f64), min: f64, max: f64, open_min: bool) -> Result<()> {
    let lo_ok = if open_min { lo > min } else { lo >= min };
    if !(lo.is_finite() && hi.is_finite()) || lo > hi || !lo_ok || hi > max {
        let bracket = if open_min { '(' } else { '[' };
        return Err(Error::Config(format!(
            "{name} range [{lo}, {hi}] must be non-empty and inside {bracket}{min}, {max}]"
        )));
    }
    Ok(())
}

impl GeneratorParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.edge_prob) {
            return Err(Error::Config(format!(
                "edge_prob {} outside [0, 1]",
                self.edge_prob
            )));
        }
        let (cmin, cmax) = self.cap_range;
        if cmin == 0 || cmin > cmax {
            return Err(Error::Config(format!(
                "capacity range [{cmin}, {cmax}] must be non-empty with minimum at least 1"
            )));
        }
        check_range("p1", self.p1_range, 0.0, 1.0, false)?;
        check_range("decay", self.decay_range, 0.0, 1.0, true)?;
        check_range(
            "cost fraction",
            self.cost_fraction_range,
            0.0,
            f64::MAX,
            false,
        )?;
        Ok(())
    }

    pub fn generate(&self, rng: &mut RngStream) -> Result<BipartiteInstance> {
        self.validate()?;
        let sw = digits(self.n_sources);
        let tw = digits(self.n_targets);

        let mut drafts = Vec::with_capacity(self.n_sources);
        for s in 0..self.n_sources {
            let capacity = rng.int_in(self.cap_range.0, self.cap_range.1);
            let p1 = rng.uniform_in(self.p1_range.0, self.p1_range.1);
            let decay = rng.uniform_in(self.decay_range.0, self.decay_range.1);
            let cost_fraction =
                rng.uniform_in(self.cost_fraction_range.0, self.cost_fraction_range.1);
            let mut probs = Vec::with_capacity(capacity as usize);
            let mut p = p1;
            for _ in 0..capacity {
                probs.push(p);
                p *= decay;
            }
            drafts.push((
                SourceNode {
                    name: format!("s{s:0sw$}"),
                    capacity,
                    probs,
                    unit_cost: 0.0,
                },
                p1 * cost_fraction,
            ));
        }

        let mut edges = Vec::new();
        let mut degree = vec![0usize; self.n_sources];
        for (s, deg) in degree.iter_mut().enumerate() {
            for t in 0..self.n_targets {
                if rng.bernoulli(self.edge_prob) {
                    edges.push((s, t));
                    *deg += 1;
                }
            }
        }

        let sources = drafts
            .into_iter()
            .zip(&degree)
            .map(|((mut node, per_edge), &deg)| {
                node.unit_cost = per_edge * deg as f64;
                node
            })
            .collect();
        let targets = (0..self.n_targets).map(|t| format!("t{t:0tw$}")).collect();
        BipartiteInstance::new(sources, targets, &edges)
    }
}

fn digits(n: usize) -> usize {
    n.saturating_sub(1).to_string().len()
}
