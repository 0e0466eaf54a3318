//! Minor containment with certificates.
//!
//! A [`MinorModel`] assigns one connected branch set (fragment) of the host
//! to each pattern vertex, pairwise disjoint, with a host edge between the
//! sets of every pattern edge. Every `Found` answer carries such a model and
//! is re-verified before it is returned.

mod engine;
mod structure;
mod subgraph;

pub use structure::{
    check_structure_fs, check_structure_qt, clique_closure_check, ClosureReport, StructureMode, StructureReport,
};
pub use subgraph::{fs_subgraph_witness, qt_subgraph_witness, FsWitness, QtAnswer, QtWitness};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{construct, FamilySpec};
use crate::graph::{g6_decode, g6_encode, Graph, VertexSet};

use engine::{SearchPlan, MAX_PATTERN};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorModel {
    pub host_n: usize,
    pub pattern: Graph,
    pub branch_sets: Vec<VertexSet>,
}

impl MinorModel {
    pub fn new(host_n: usize, pattern: Graph, branch_sets: Vec<VertexSet>) -> Self {
        MinorModel { host_n, pattern, branch_sets }
    }

    pub fn to_certificate(&self) -> Certificate {
        Certificate {
            pattern_g6: g6_encode(&self.pattern),
            host_n: self.host_n,
            branch_sets: self.branch_sets.iter().map(|s| s.members().to_vec()).collect(),
        }
    }
}

/// On-disk form of a [`MinorModel`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub pattern_g6: String,
    pub host_n: usize,
    pub branch_sets: Vec<Vec<usize>>,
}

impl Certificate {
    pub fn to_model(&self) -> Result<MinorModel> {
        let pattern = g6_decode(self.pattern_g6.as_bytes())?;
        let sets = self
            .branch_sets
            .iter()
            .map(|s| VertexSet::new(self.host_n, s.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Ok(MinorModel::new(self.host_n, pattern, sets))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinorAnswer {
    Found(MinorModel),
    /// The whole search space was explored.
    NotFound,
    /// The node budget ran out first; nothing is claimed.
    Exhausted { nodes_used: u64 },
}

impl MinorAnswer {
    pub fn status(&self) -> &'static str {
        match self {
            MinorAnswer::Found(_) => "Found",
            MinorAnswer::NotFound => "NotFound",
            MinorAnswer::Exhausted { .. } => "Exhausted",
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, MinorAnswer::Found(_))
    }

    pub fn is_not_found(&self) -> bool {
        matches!(self, MinorAnswer::NotFound)
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self, MinorAnswer::Exhausted { .. })
    }

    pub fn model(&self) -> Option<&MinorModel> {
        match self {
            MinorAnswer::Found(m) => Some(m),
            _ => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            MinorAnswer::Found(m) => serde_json::json!({"status": "Found", "certificate": m.to_certificate()}),
            MinorAnswer::NotFound => serde_json::json!({"status": "NotFound"}),
            MinorAnswer::Exhausted { nodes_used } => {
                serde_json::json!({"status": "Exhausted", "nodes_used": nodes_used})
            }
        }
    }
}

impl Serialize for MinorAnswer {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

/// Checks the three model conditions against `host`: disjoint nonempty
/// branch sets, each inducing a connected subgraph, and a host edge
/// between the sets of every pattern edge.
pub fn verify_model(host: &Graph, model: &MinorModel) -> Result<bool> {
    if model.host_n != host.n() {
        return Err(Error::PreconditionFailed(format!(
            "certificate is for a host on {} vertices, host has {}",
            model.host_n,
            host.n()
        )));
    }
    for set in &model.branch_sets {
        if let Some(&bad) = set.members().iter().find(|&&v| v >= host.n()) {
            return Err(Error::IndexOutOfRange { index: bad, n: host.n() });
        }
    }
    if model.branch_sets.len() != model.pattern.n() {
        return Ok(false);
    }
    let mut owner = vec![usize::MAX; host.n()];
    for (i, set) in model.branch_sets.iter().enumerate() {
        if set.is_empty() {
            return Ok(false);
        }
        for v in set.iter() {
            if owner[v] != usize::MAX {
                return Ok(false);
            }
            owner[v] = i;
        }
        if !host.induced(set.members())?.is_connected() {
            return Ok(false);
        }
    }
    for (i, j) in model.pattern.edges() {
        let touches = model.branch_sets[i].iter().any(|v| host.neighbors(v).any(|u| owner[u] == j));
        if !touches {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generic search: pattern vertices in descending-degree order, no
/// symmetry reduction.
pub fn find_minor_model(host: &Graph, pattern: &Graph, node_budget: u64) -> Result<MinorAnswer> {
    if pattern.n() > MAX_PATTERN {
        return Err(Error::PatternTooLarge(pattern.n()));
    }
    engine::search(host, pattern, &SearchPlan::by_degree(pattern), node_budget)
}

/// Searches for fragments S_0, ..., S_{2s}: S_0 touches every other
/// fragment and S_{2i−1} touches S_{2i}. The s pairs are unordered and
/// each pair is symmetric, so pairs are taken in ascending order of their
/// smallest vertex.
pub fn has_fs_minor(host: &Graph, s: usize, node_budget: u64) -> Result<MinorAnswer> {
    let (pattern, _) = construct(&FamilySpec::Friendship { s })?;
    if pattern.n() > MAX_PATTERN {
        return Err(Error::PatternTooLarge(pattern.n()));
    }
    let mut symmetry = Vec::new();
    for i in 0..s {
        let (x, y) = (2 * i + 1, 2 * i + 2);
        symmetry.push((x, y));
        if i + 1 < s {
            symmetry.push((x, x + 2));
        }
    }
    let plan = SearchPlan { order: (0..=2 * s).collect(), symmetry };
    engine::search(host, &pattern, &plan, node_budget)
}

/// Searches for fragments S_0, ..., S_{3t} shaped like `Q_t`: arm j is
/// S_0–x–y–z–S_0. Arms are unordered and each arm may be reflected, so x
/// precedes z and arms go in ascending order of x.
pub fn has_qt_minor(host: &Graph, t: usize, node_budget: u64) -> Result<MinorAnswer> {
    let (pattern, _) = construct(&FamilySpec::IntersectingC4 { t })?;
    if pattern.n() > MAX_PATTERN {
        return Err(Error::PatternTooLarge(pattern.n()));
    }
    let mut order = vec![0];
    let mut symmetry = Vec::new();
    for j in 0..t {
        let (x, y, z) = (3 * j + 1, 3 * j + 2, 3 * j + 3);
        order.extend([x, z, y]);
        symmetry.push((x, z));
        if j + 1 < t {
            symmetry.push((x, x + 3));
        }
    }
    let plan = SearchPlan { order, symmetry };
    engine::search(host, &pattern, &plan, node_budget)
}

/// A friendship or intersecting-quadrilateral pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HubPattern {
    Fs(usize),
    Qt(usize),
}

impl HubPattern {
    pub fn graph(&self) -> Result<Graph> {
        let spec = match *self {
            HubPattern::Fs(s) => FamilySpec::Friendship { s },
            HubPattern::Qt(t) => FamilySpec::IntersectingC4 { t },
        };
        Ok(construct(&spec)?.0)
    }

    pub fn param(&self) -> usize {
        match *self {
            HubPattern::Fs(k) | HubPattern::Qt(k) => k,
        }
    }

    pub fn has_minor(&self, host: &Graph, node_budget: u64) -> Result<MinorAnswer> {
        match *self {
            HubPattern::Fs(s) => has_fs_minor(host, s, node_budget),
            HubPattern::Qt(t) => has_qt_minor(host, t, node_budget),
        }
    }
}

impl fmt::Display for HubPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HubPattern::Fs(s) => write!(f, "fs:s={s}"),
            HubPattern::Qt(t) => write!(f, "qt:t={t}"),
        }
    }
}

impl FromStr for HubPattern {
    type Err = Error;

    /// Accepts `fs:s=2`, `qt:t=1`, `fs:2` or `qt:1`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(format!("expected fs:s=<k> or qt:t=<k>, got `{text}`"));
        let (kind, rest) = text.trim().split_once(':').ok_or_else(bad)?;
        let value = rest.rsplit('=').next().unwrap_or(rest);
        let k: usize = value.trim().parse().map_err(|_| bad())?;
        if k == 0 {
            return Err(bad());
        }
        match (kind, rest.split_once('=').map(|(key, _)| key)) {
            ("fs", Some("s") | None) => Ok(HubPattern::Fs(k)),
            ("qt", Some("t") | None) => Ok(HubPattern::Qt(k)),
            _ => Err(bad()),
        }
    }
}
