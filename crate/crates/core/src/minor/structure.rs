//! Checkers for the structure of H-minor-free graphs around a large
//! complete bipartite subgraph `[A, B]`, and the clique-closure test.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

use super::{HubPattern, MinorAnswer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureMode {
    /// B must be independent; outside vertices see at most one B-vertex.
    Fs,
    /// B must induce edges and isolated vertices; outside vertices see at most two.
    Qt,
}

impl StructureMode {
    fn outside_limit(self) -> usize {
        match self {
            StructureMode::Fs => 1,
            StructureMode::Qt => 2,
        }
    }

    fn d_factor(self) -> f64 {
        match self {
            StructureMode::Fs => 2.0,
            StructureMode::Qt => 3.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureReport {
    pub mode: StructureMode,
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    #[serde(rename = "B")]
    pub b: Vec<usize>,
    #[serde(rename = "R")]
    pub r: Vec<usize>,
    /// B-vertices with no neighbour in R.
    #[serde(rename = "D")]
    pub d: Vec<usize>,
    pub bipartite_complete: bool,
    pub b_path_free: bool,
    pub max_outside_b_neighbors: usize,
    pub outside_bound_ok: bool,
    pub delta: f64,
    /// `(1 − 2δ)n` in Fs mode, `(1 − 3δ)n` in Qt mode.
    pub d_threshold: f64,
    pub d_meets_threshold: bool,
}

pub fn check_structure_fs(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<StructureReport> {
    check_structure(g, a, b, StructureMode::Fs)
}

pub fn check_structure_qt(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<StructureReport> {
    check_structure(g, a, b, StructureMode::Qt)
}

fn check_structure(g: &Graph, a: &VertexSet, b: &VertexSet, mode: StructureMode) -> Result<StructureReport> {
    let n = g.n();
    for set in [a, b] {
        if set.host_n() != n {
            return Err(Error::PreconditionFailed("vertex set belongs to another host".into()));
        }
    }
    if let Some(v) = a.intersection_witness(b) {
        return Err(Error::OverlappingSets(v));
    }
    let r: Vec<usize> = (0..n).filter(|&v| !a.contains(v) && !b.contains(v)).collect();
    let bipartite_complete = a.iter().all(|u| b.iter().all(|v| g.has_edge(u, v)));
    let b_path_free = match mode {
        StructureMode::Fs => b.iter().all(|v| g.neighbors(v).all(|u| !b.contains(u))),
        // every component of G[B] is a vertex or an edge
        StructureMode::Qt => b.iter().all(|v| g.neighbors(v).filter(|&u| b.contains(u)).count() <= 1),
    };
    let max_outside_b_neighbors = r
        .iter()
        .map(|&v| g.neighbors(v).filter(|&u| b.contains(u)).count())
        .max()
        .unwrap_or(0);
    let d: Vec<usize> = b.iter().filter(|&v| g.neighbors(v).all(|u| a.contains(u) || b.contains(u))).collect();
    let nf = n as f64;
    let delta = if n == 0 { 0.0 } else { 1.0 - b.len() as f64 / nf };
    let d_threshold = (1.0 - mode.d_factor() * delta) * nf;
    Ok(StructureReport {
        mode,
        a: a.members().to_vec(),
        b: b.members().to_vec(),
        r,
        d_meets_threshold: d.len() as f64 >= d_threshold - 1e-9,
        d,
        bipartite_complete,
        b_path_free,
        outside_bound_ok: max_outside_b_neighbors <= mode.outside_limit(),
        max_outside_b_neighbors,
        delta,
        d_threshold,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosureReport {
    pub pattern: String,
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    /// Common neighbourhood of A.
    #[serde(rename = "B")]
    pub b: Vec<usize>,
    pub edges_added: usize,
    pub before: MinorAnswer,
    pub after: MinorAnswer,
    /// Size hypotheses of the closure statement: |B| ≥ 2s (resp. 2t + 1) and
    /// |D| ≥ 2s + 1 (resp. 3t + 1).
    pub hypotheses_hold: bool,
    /// Both answers are NotFound.
    pub consistent: bool,
}

/// Makes A a clique and re-runs the minor test. `g` itself must be free of
/// the pattern; a `Found` on `g` is a precondition failure.
pub fn clique_closure_check(g: &Graph, a: &VertexSet, mode: HubPattern, node_budget: u64) -> Result<ClosureReport> {
    if a.host_n() != g.n() {
        return Err(Error::PreconditionFailed("vertex set belongs to another host".into()));
    }
    if a.is_empty() {
        return Err(Error::PreconditionFailed("A is empty".into()));
    }
    let b = VertexSet::new(
        g.n(),
        (0..g.n()).filter(|&v| !a.contains(v) && a.iter().all(|u| g.has_edge(u, v))),
    )?;
    let before = mode.has_minor(g, node_budget)?;
    if before.is_found() {
        return Err(Error::PreconditionFailed(format!("host already contains a {mode} minor")));
    }
    let closed = g.complete_on(a)?;
    let after = mode.has_minor(&closed, node_budget)?;

    let k = mode.param();
    let report = match mode {
        HubPattern::Fs(_) => check_structure_fs(g, a, &b)?,
        HubPattern::Qt(_) => check_structure_qt(g, a, &b)?,
    };
    let (b_min, d_min) = match mode {
        HubPattern::Fs(s) => (2 * s, 2 * s + 1),
        HubPattern::Qt(t) => (2 * t + 1, 3 * t + 1),
    };
    let hypotheses_hold = a.len() == k && b.len() >= b_min && report.d.len() >= d_min;
    Ok(ClosureReport {
        pattern: mode.to_string(),
        a: a.members().to_vec(),
        b: b.members().to_vec(),
        edges_added: closed.edge_count() - g.edge_count(),
        consistent: before.is_not_found() && after.is_not_found(),
        before,
        after,
        hypotheses_hold,
    })
}
