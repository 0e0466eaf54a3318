//! Connected graphs up to isomorphism by canonical augmentation.
//!
//! A graph on n vertices is generated from its canonical parent: delete a
//! distinguished non-cut vertex. The distinguished orbit is chosen among the
//! non-cut vertices of largest (degree, neighbour-degree sum), taking the
//! orbit with the smallest rooted code. A child is kept only when the new
//! vertex lies in that orbit, and children of one parent are deduplicated
//! by the rooted code of the new vertex.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::canon::{rooted_code, SmallGraph};
use crate::graph::{Graph, CANON_MAX_N};

fn invariant(g: &SmallGraph, v: usize) -> u32 {
    let mut sum = 0;
    let mut nb = g.adj[v];
    while nb != 0 {
        let u = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        sum += g.degree(u);
    }
    g.degree(v) << 8 | sum
}

/// `Some(code)` if `v` is in the canonical deletion orbit of `g`.
fn canonical_deletion(g: &SmallGraph, v: usize) -> Option<u64> {
    let all = g.all();
    let inv_v = invariant(g, v);
    let mut rivals = Vec::new();
    for w in 0..g.n {
        if w == v {
            continue;
        }
        let inv_w = invariant(g, w);
        if inv_w < inv_v || !g.connected_on(all & !(1 << w)) {
            continue;
        }
        if inv_w > inv_v {
            return None;
        }
        rivals.push(w);
    }
    let code = rooted_code(g, v);
    for w in rivals {
        if rooted_code(g, w) < code {
            return None;
        }
    }
    Some(code)
}

fn children(parent: &SmallGraph) -> Vec<SmallGraph> {
    let m = parent.n;
    let v = m;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for s in 1u16..(1 << m) {
        let mut child = *parent;
        child.n = m + 1;
        child.adj[v] = s;
        let mut bits = s;
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            child.adj[u] |= 1 << v;
        }
        if let Some(code) = canonical_deletion(&child, v) {
            if seen.insert(code) {
                out.push(child);
            }
        }
    }
    out
}

/// Representatives of all connected graphs on `n` vertices, one per class.
pub(crate) fn connected_small(n: usize) -> Result<Vec<SmallGraph>> {
    if n == 0 || n > CANON_MAX_N {
        return Err(Error::SizeLimitExceeded { what: "enumeration order", got: n, limit: CANON_MAX_N });
    }
    let mut level = vec![SmallGraph { n: 1, adj: [0; 16] }];
    for _ in 1..n {
        level = level.par_iter().flat_map_iter(children).collect();
    }
    Ok(level)
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices (1 ≤ n ≤ 10), in a fixed order. Runs on the current rayon pool.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>> {
    Ok(connected_small(n)?.into_iter().map(SmallGraph::to_graph).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| connected_small(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn representatives_are_connected_and_distinct() {
        let graphs = enumerate_connected(6).unwrap();
        let mut codes: Vec<String> = graphs
            .iter()
            .inspect(|g| assert!(g.is_connected()))
            .map(|g| crate::graph::canonical_code(g).unwrap())
            .collect();
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), 112);
    }

    #[test]
    fn out_of_range() {
        assert!(enumerate_connected(0).is_err());
        assert!(enumerate_connected(11).is_err());
    }
}
