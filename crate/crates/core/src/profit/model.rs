use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{BoundVector, LatticePoint};

/// A marketing channel: up to `capacity` trials, the `i`-th succeeding on each
/// neighbour independently with probability `probs[i - 1]`, each costing `unit_cost`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceNode {
    pub name: String,
    pub capacity: u64,
    pub probs: Vec<f64>,
    pub unit_cost: f64,
}

impl SourceNode {
    fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Parse(format!("source {}: {msg}", self.name)));
        if self.capacity == 0 {
            return fail("capacity must be at least 1".into());
        }
        if self.probs.len() as u64 != self.capacity {
            return fail(format!(
                "probs length {} does not match capacity {}",
                self.probs.len(),
                self.capacity
            ));
        }
        for (i, &p) in self.probs.iter().enumerate() {
            if !(0.0..=1.0).contains(&p) {
                return fail(format!("prob {p} at i={} outside [0, 1]", i + 1));
            }
            if i > 0 && p > self.probs[i - 1] {
                return fail(format!("probs not non-increasing at i={}", i + 1));
            }
        }
        if !self.unit_cost.is_finite() || self.unit_cost < 0.0 {
            return fail(format!(
                "unit_cost {} must be finite and non-negative",
                self.unit_cost
            ));
        }
        Ok(())
    }
}

/// Bipartite sources/targets graph with per-source trial probabilities and costs.
///
/// Always held in canonical form: sources and targets sorted by name, so the
/// dense coordinate order is reproducible across files and runs.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteInstance {
    sources: Vec<SourceNode>,
    targets: Vec<String>,
    // per target: sorted source indices
    adjacency: Vec<Vec<usize>>,
    // per source: sorted target indices
    neighbors: Vec<Vec<usize>>,
}

impl BipartiteInstance {
    /// Builds and validates an instance. `edges` are `(source index, target index)`
    /// pairs into the given vectors; indices are remapped after sorting by name.
    pub fn new(
        sources: Vec<SourceNode>,
        targets: Vec<String>,
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        for s in &sources {
            s.validate()?;
        }
        check_unique(sources.iter().map(|s| s.name.as_str()), "source")?;
        check_unique(targets.iter().map(String::as_str), "target")?;

        let mut source_order: Vec<usize> = (0..sources.len()).collect();
        source_order.sort_by(|&a, &b| sources[a].name.cmp(&sources[b].name));
        let mut target_order: Vec<usize> = (0..targets.len()).collect();
        target_order.sort_by(|&a, &b| targets[a].cmp(&targets[b]));
        let mut source_pos = vec![0; sources.len()];
        for (new, &old) in source_order.iter().enumerate() {
            source_pos[old] = new;
        }
        let mut target_pos = vec![0; targets.len()];
        for (new, &old) in target_order.iter().enumerate() {
            target_pos[old] = new;
        }

        let mut adjacency = vec![Vec::new(); targets.len()];
        let mut neighbors = vec![Vec::new(); sources.len()];
        let mut seen = HashSet::new();
        for &(s, t) in edges {
            if s >= sources.len() {
                return Err(Error::Parse(format!(
                    "edge references source index {s} but there are {} sources",
                    sources.len()
                )));
            }
            if t >= targets.len() {
                return Err(Error::Parse(format!(
                    "edge references target index {t} but there are {} targets",
                    targets.len()
                )));
            }
            if !seen.insert((s, t)) {
                return Err(Error::Parse(format!(
                    "duplicate edge ({}, {})",
                    sources[s].name, targets[t]
                )));
            }
            adjacency[target_pos[t]].push(source_pos[s]);
            neighbors[source_pos[s]].push(target_pos[t]);
        }
        adjacency.iter_mut().for_each(|a| a.sort_unstable());
        neighbors.iter_mut().for_each(|n| n.sort_unstable());

        let mut sources = sources.into_iter().map(Some).collect::<Vec<_>>();
        let sources = source_order
            .iter()
            .map(|&i| sources[i].take().expect("permutation"))
            .collect();
        let targets = target_order.iter().map(|&i| targets[i].clone()).collect();

        Ok(BipartiteInstance {
            sources,
            targets,
            adjacency,
            neighbors,
        })
    }

    pub fn sources(&self) -> &[SourceNode] {
        &self.sources
    }

    pub fn targets(&self) -> &[String] {
        &self.targets
    }

    pub fn n_sources(&self) -> usize {
        self.sources.len()
    }

    pub fn n_targets(&self) -> usize {
        self.targets.len()
    }

    /// Sources adjacent to target `t`.
    pub fn gamma(&self, t: usize) -> &[usize] {
        &self.adjacency[t]
    }

    /// Targets adjacent to source `s`.
    pub fn neighbors(&self, s: usize) -> &[usize] {
        &self.neighbors[s]
    }

    pub fn n_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    pub fn capacities(&self) -> BoundVector {
        BoundVector::new(self.sources.iter().map(|s| s.capacity).collect())
            .expect("capacities validated")
    }

    pub fn source_index(&self, name: &str) -> Option<usize> {
        self.sources
            .binary_search_by(|s| s.name.as_str().cmp(name))
            .ok()
    }

    /// The same graph and probabilities with every unit cost set to zero.
    pub fn without_costs(&self) -> BipartiteInstance {
        let mut out = self.clone();
        for s in &mut out.sources {
            s.unit_cost = 0.0;
        }
        out
    }

    pub fn with_unit_cost(&self, source: usize, unit_cost: f64) -> Result<BipartiteInstance> {
        let mut out = self.clone();
        let s = out.sources.get_mut(source).ok_or(Error::IndexOutOfRange {
            what: "source",
            index: source,
            len: self.sources.len(),
        })?;
        s.unit_cost = unit_cost;
        s.validate()?;
        Ok(out)
    }

    fn to_document(&self) -> InstanceDocument {
        let mut edges = Vec::with_capacity(self.n_edges());
        for (s, ts) in self.neighbors.iter().enumerate() {
            for &t in ts {
                edges.push((self.sources[s].name.clone(), self.targets[t].clone()));
            }
        }
        InstanceDocument {
            sources: self.sources.clone(),
            targets: self.targets.clone(),
            edges,
        }
    }

    fn from_document(doc: InstanceDocument) -> Result<Self> {
        check_unique(doc.sources.iter().map(|s| s.name.as_str()), "source")?;
        check_unique(doc.targets.iter().map(String::as_str), "target")?;
        let source_ids: HashMap<&str, usize> = doc
            .sources
            .iter()
            .enumerate()
            .map(|(i, s)| (s.name.as_str(), i))
            .collect();
        let target_ids: HashMap<&str, usize> = doc
            .targets
            .iter()
            .enumerate()
            .map(|(i, t)| (t.as_str(), i))
            .collect();
        let edges = doc
            .edges
            .iter()
            .map(|(s, t)| {
                let si = source_ids
                    .get(s.as_str())
                    .ok_or_else(|| Error::Parse(format!("edge ({s}, {t}): unknown source {s}")))?;
                let ti = target_ids
                    .get(t.as_str())
                    .ok_or_else(|| Error::Parse(format!("edge ({s}, {t}): unknown target {t}")))?;
                Ok((*si, *ti))
            })
            .collect::<Result<Vec<_>>>()?;
        BipartiteInstance::new(doc.sources, doc.targets, &edges)
    }
}

fn check_unique<'a>(names: impl Iterator<Item = &'a str>, what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for name in names {
        if !seen.insert(name) {
            return Err(Error::Parse(format!("duplicate {what} name {name:?}")));
        }
    }
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDocument {
    sources: Vec<SourceNode>,
    targets: Vec<String>,
    edges: Vec<(String, String)>,
}

pub fn parse_instance(text: &str) -> Result<BipartiteInstance> {
    let doc: InstanceDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    BipartiteInstance::from_document(doc)
}

pub fn serialize_instance(instance: &BipartiteInstance) -> String {
    let mut out =
        serde_json::to_string_pretty(&instance.to_document()).expect("instance is serializable");
    out.push('\n');
    out
}

/// A marketing strategy keyed by source name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyDocument {
    pub levels: BTreeMap<String, u64>,
}

impl StrategyDocument {
    pub fn from_point(instance: &BipartiteInstance, m: &LatticePoint) -> Self {
        StrategyDocument {
            levels: instance
                .sources()
                .iter()
                .zip(m.levels())
                .map(|(s, &v)| (s.name.clone(), v))
                .collect(),
        }
    }

    /// Resolves names against `instance`. Unlisted sources get level 0.
    pub fn to_point(&self, instance: &BipartiteInstance) -> Result<LatticePoint> {
        let mut levels = vec![0; instance.n_sources()];
        for (name, &v) in &self.levels {
            let i = instance
                .source_index(name)
                .ok_or_else(|| Error::Parse(format!("strategy names unknown source {name:?}")))?;
            levels[i] = v;
        }
        let m = LatticePoint::new(levels);
        instance.capacities().check(&m)?;
        Ok(m)
    }
}

pub fn parse_strategy(text: &str) -> Result<StrategyDocument> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}
