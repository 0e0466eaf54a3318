//! Canonical labelling for small graphs (n ≤ 10).
//!
//! The search starts from an ordered vertex colouring, refines it to an
//! equitable colouring by iterated neighbour counting, then individualizes
//! each vertex of the first non-singleton cell in turn. Among all discrete
//! leaves the one with the smallest graph6 payload wins. Twins (vertices
//! with identical neighbourhoods apart from each other) yield identical
//! subtrees, so only one vertex per twin class is individualized.

use super::{g6_encode, Graph};
use crate::error::{Error, Result};

pub const CANON_MAX_N: usize = 10;

/// Adjacency bitmasks for a graph with at most 16 vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct SmallGraph {
    pub n: usize,
    pub adj: [u16; 16],
}

impl SmallGraph {
    pub fn from_graph(g: &Graph) -> Self {
        debug_assert!(g.n() <= 16);
        let mut adj = [0u16; 16];
        for (v, a) in adj.iter_mut().enumerate().take(g.n()) {
            *a = g.row(v).first().copied().unwrap_or(0) as u16;
        }
        SmallGraph { n: g.n(), adj }
    }

    pub fn to_graph(self) -> Graph {
        let edges = (0..self.n).flat_map(|v| (0..v).filter(move |&u| self.adj[v] >> u & 1 == 1).map(move |u| (u, v)));
        Graph::from_edges(self.n, edges).expect("small graph is valid")
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    pub fn all(&self) -> u16 {
        ((1u32 << self.n) - 1) as u16
    }

    /// Is the subgraph induced on `mask` connected (empty counts as connected)?
    pub fn connected_on(&self, mask: u16) -> bool {
        if mask == 0 {
            return true;
        }
        let mut seen = mask & mask.wrapping_neg();
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & mask & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == mask
    }
}

/// Canonical code of a coloured graph: the minimum payload over all leaves
/// together with the leaf colouring that achieved it (vertex → new label).
pub(crate) fn canon_colored(g: &SmallGraph, colors: &[u8]) -> (u64, Vec<u8>) {
    let mut best = None;
    let mut col = colors.to_vec();
    normalize(&mut col);
    search(g, col, &mut best);
    best.expect("search visits at least one leaf")
}

/// Code of `g` with `root` individualized; equal codes ⇔ same orbit.
pub(crate) fn rooted_code(g: &SmallGraph, root: usize) -> u64 {
    let colors: Vec<u8> = (0..g.n).map(|v| if v == root { 0 } else { 1 }).collect();
    canon_colored(g, &colors).0
}

pub(crate) fn canon_small(g: &SmallGraph) -> (u64, Vec<u8>) {
    canon_colored(g, &vec![0; g.n])
}

fn normalize(col: &mut [u8]) {
    let mut distinct: Vec<u8> = col.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for c in col.iter_mut() {
        *c = distinct.binary_search(c).unwrap() as u8;
    }
}

/// Refines `col` until every cell is equitable. Returns the number of cells.
fn refine(g: &SmallGraph, col: &mut [u8]) -> usize {
    let n = g.n;
    let mut ncells = col.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    loop {
        let mut sigs: Vec<(u8, [u8; 16], usize)> = (0..n)
            .map(|v| {
                let mut counts = [0u8; 16];
                let mut nb = g.adj[v];
                while nb != 0 {
                    let u = nb.trailing_zeros() as usize;
                    nb &= nb - 1;
                    counts[col[u] as usize] += 1;
                }
                (col[v], counts, v)
            })
            .collect();
        sigs.sort_unstable();
        let mut next = 0u8;
        for i in 0..n {
            if i > 0 && (sigs[i].0, sigs[i].1) != (sigs[i - 1].0, sigs[i - 1].1) {
                next += 1;
            }
            col[sigs[i].2] = next;
        }
        let fresh = if n == 0 { 0 } else { next as usize + 1 };
        if fresh == ncells {
            return ncells;
        }
        ncells = fresh;
    }
}

fn search(g: &SmallGraph, mut col: Vec<u8>, best: &mut Option<(u64, Vec<u8>)>) {
    let n = g.n;
    if refine(g, &mut col) == n {
        let code = leaf_code(g, &col);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, col));
        }
        return;
    }
    let mut sizes = [0u8; 16];
    for &c in &col {
        sizes[c as usize] += 1;
    }
    let target = (0..n).find(|&c| sizes[c] > 1).unwrap() as u8;
    let cell: Vec<usize> = (0..n).filter(|&v| col[v] == target).collect();
    for (i, &v) in cell.iter().enumerate() {
        let twin_seen = cell[..i].iter().any(|&w| {
            g.adj[v] & !(1 << w) == g.adj[w] & !(1 << v)
        });
        if twin_seen {
            continue;
        }
        let child = col
            .iter()
            .enumerate()
            .map(|(w, &c)| {
                if c > target || (c == target && w != v) {
                    c + 1
                } else {
                    c
                }
            })
            .collect();
        search(g, child, best);
    }
}

/// Graph6 payload bits of `g` relabelled by `label`, first bit most significant.
fn leaf_code(g: &SmallGraph, label: &[u8]) -> u64 {
    let n = g.n;
    let mut inv = [0usize; 16];
    for v in 0..n {
        inv[label[v] as usize] = v;
    }
    let mut code = 0u64;
    for j in 1..n {
        let row = g.adj[inv[j]];
        for &u in &inv[..j] {
            code = (code << 1) | (row >> u & 1) as u64;
        }
    }
    code
}

fn check_canon_size(g: &Graph) -> Result<()> {
    if g.n() > CANON_MAX_N {
        Err(Error::SizeLimitExceeded { what: "canonical form vertex count", got: g.n(), limit: CANON_MAX_N })
    } else {
        Ok(())
    }
}

/// Canonical relabelling of `g`: isomorphic inputs give identical outputs.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    check_canon_size(g)?;
    let (_, label) = canon_small(&SmallGraph::from_graph(g));
    let perm: Vec<usize> = label.iter().map(|&l| l as usize).collect();
    g.relabel(&perm)
}

/// Graph6 string of the canonical form.
pub fn canonical_code(g: &Graph) -> Result<String> {
    Ok(g6_encode(&canonical_form(g)?))
}

/// Canonical payload bits; together with `n` this identifies the class.
pub fn canonical_key(g: &Graph) -> Result<u64> {
    check_canon_size(g)?;
    Ok(canon_small(&SmallGraph::from_graph(g)).0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_c4_agree() {
        let a = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let b = Graph::from_edges(4, [(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_ne!(a, b);
        assert_eq!(canonical_code(&a).unwrap(), canonical_code(&b).unwrap());
    }

    #[test]
    fn distinguishes_k3_plus_k1_from_p4() {
        let a = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let b = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_ne!(canonical_code(&a).unwrap(), canonical_code(&b).unwrap());
    }

    #[test]
    fn rooted_codes_separate_orbits() {
        // path 0-1-2: ends form one orbit, the middle another
        let p = SmallGraph::from_graph(&Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap());
        assert_eq!(rooted_code(&p, 0), rooted_code(&p, 2));
        assert_ne!(rooted_code(&p, 0), rooted_code(&p, 1));
    }

    #[test]
    fn rejects_large() {
        let g = Graph::empty(11).unwrap();
        assert!(matches!(canonical_code(&g), Err(Error::SizeLimitExceeded { .. })));
    }

    #[test]
    fn symmetric_graphs_finish() {
        for n in 0..=10 {
            let k = Graph::complete(n).unwrap();
            assert_eq!(canonical_form(&k).unwrap(), k);
            let e = Graph::empty(n).unwrap();
            assert_eq!(canonical_form(&e).unwrap(), e);
        }
        // Petersen graph
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let pet = Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap();
        let shuffled = pet.relabel(&[3, 7, 1, 9, 0, 2, 8, 4, 6, 5]).unwrap();
        assert_eq!(canonical_form(&pet).unwrap(), canonical_form(&shuffled).unwrap());
    }
}
