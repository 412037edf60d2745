#![allow(dead_code)]

use lattice_greedy::profit::BipartiteInstance;
use lattice_greedy::LatticePoint;

/// Profit straight from the definition: each target misses every trial that
/// reaches it, trials of one source being the first `m(s)` entries of its list.
pub fn direct_profit(inst: &BipartiteInstance, m: &LatticePoint) -> f64 {
    let mut spread = 0.0;
    for t in 0..inst.n_targets() {
        let mut miss = 1.0;
        for &s in inst.gamma(t) {
            for i in 0..m.levels()[s] as usize {
                miss *= 1.0 - inst.sources()[s].probs[i];
            }
        }
        spread += 1.0 - miss;
    }
    let cost: f64 = inst
        .sources()
        .iter()
        .zip(m.levels())
        .map(|(s, &k)| s.unit_cost * k as f64)
        .sum();
    spread - cost
}

/// Every point of `[0, caps]`, built by repeated extension rather than an odometer.
pub fn all_points(caps: &[u64]) -> Vec<LatticePoint> {
    let mut pts = vec![Vec::new()];
    for &c in caps {
        pts = pts
            .into_iter()
            .flat_map(|p: Vec<u64>| {
                (0..=c).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    pts.into_iter().map(LatticePoint::new).collect()
}

/// Brute-force optimum using [`direct_profit`].
pub fn direct_opt(inst: &BipartiteInstance) -> f64 {
    let caps: Vec<u64> = inst.sources().iter().map(|s| s.capacity).collect();
    all_points(&caps)
        .iter()
        .map(|m| direct_profit(inst, m))
        .fold(f64::NEG_INFINITY, f64::max)
}
