use serde::Serialize;

use crate::graph::Graph;
use crate::matching::maximum_matching;

/// `F_s` as a subgraph: a centre plus s disjoint edges in its neighbourhood.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FsWitness {
    pub center: usize,
    pub matching: Vec<(usize, usize)>,
}

/// `F_s ⊆ g` iff some neighbourhood `G[N(v)]` has a matching of size s.
/// Returns the first such vertex with s of its matching edges.
pub fn fs_subgraph_witness(g: &Graph, s: usize) -> Option<FsWitness> {
    for v in 0..g.n() {
        if g.degree(v) < 2 * s {
            continue;
        }
        let nbrs: Vec<usize> = g.neighbors(v).collect();
        let mut local = vec![usize::MAX; g.n()];
        for (i, &u) in nbrs.iter().enumerate() {
            local[u] = i;
        }
        let adj: Vec<Vec<usize>> = nbrs
            .iter()
            .map(|&u| g.neighbors(u).filter(|&w| local[w] != usize::MAX).map(|w| local[w]).collect())
            .collect();
        let inner_edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
        if inner_edges < s {
            continue;
        }
        let m = maximum_matching(&adj, Some(s));
        if m.len() >= s {
            let matching = m.into_iter().take(s).map(|(a, b)| (nbrs[a], nbrs[b])).collect();
            return Some(FsWitness { center: v, matching });
        }
    }
    None
}

/// `Q_t` as a subgraph: a centre plus t paths x–y–z with x, z adjacent to
/// the centre, all 3t + 1 vertices distinct.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QtWitness {
    pub center: usize,
    pub paths: Vec<[usize; 3]>,
}

impl QtWitness {
    pub fn is_valid(&self, g: &Graph) -> bool {
        let mut seen = vec![self.center];
        for &[x, y, z] in &self.paths {
            let ok = g.has_edge(self.center, x) && g.has_edge(x, y) && g.has_edge(y, z) && g.has_edge(z, self.center);
            if !ok {
                return false;
            }
            seen.extend([x, y, z]);
        }
        let len = seen.len();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == len
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum QtAnswer {
    Found { witness: QtWitness },
    NotFound,
    Exhausted { nodes_used: u64 },
}

impl QtAnswer {
    pub fn witness(&self) -> Option<&QtWitness> {
        match self {
            QtAnswer::Found { witness } => Some(witness),
            _ => None,
        }
    }
}

/// Backtracking search for `Q_t` as a subgraph. Paths are taken in
/// ascending order of their first vertex, and x < z within each path.
pub fn qt_subgraph_witness(g: &Graph, t: usize, node_budget: u64) -> QtAnswer {
    let mut nodes = 0u64;
    if 3 * t + 1 > g.n() {
        return QtAnswer::NotFound;
    }
    for center in 0..g.n() {
        if g.degree(center) < 2 * t {
            continue;
        }
        let mut used = vec![false; g.n()];
        used[center] = true;
        let mut paths = Vec::with_capacity(t);
        match extend(g, center, t, 0, &mut used, &mut paths, &mut nodes, node_budget) {
            Some(true) => return QtAnswer::Found { witness: QtWitness { center, paths } },
            Some(false) => {}
            None => return QtAnswer::Exhausted { nodes_used: nodes },
        }
    }
    QtAnswer::NotFound
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    center: usize,
    t: usize,
    min_x: usize,
    used: &mut [bool],
    paths: &mut Vec<[usize; 3]>,
    nodes: &mut u64,
    budget: u64,
) -> Option<bool> {
    *nodes += 1;
    if *nodes > budget {
        return None;
    }
    if paths.len() == t {
        return Some(true);
    }
    let nbrs: Vec<usize> = g.neighbors(center).filter(|&u| !used[u]).collect();
    for &x in nbrs.iter().filter(|&&x| x >= min_x) {
        used[x] = true;
        for &z in nbrs.iter().filter(|&&z| z > x) {
            used[z] = true;
            let mids: Vec<usize> = g.neighbors(x).filter(|&y| !used[y] && g.has_edge(y, z)).collect();
            for y in mids {
                used[y] = true;
                paths.push([x, y, z]);
                match extend(g, center, t, x + 1, used, paths, nodes, budget) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
                paths.pop();
                used[y] = false;
            }
            used[z] = false;
        }
        used[x] = false;
    }
    Some(false)
}
