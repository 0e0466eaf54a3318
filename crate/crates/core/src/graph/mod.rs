//! Simple undirected graphs stored as dense bit rows.
//!
//! A [`Graph`] is an immutable value. Every edit (deletion, contraction,
//! join, union) returns a fresh graph, so graphs can be shared freely across
//! worker threads. Vertex deletion and contraction re-pack indices by
//! shifting every index above the removed vertex down by one.

pub(crate) mod canon;
mod graph6;

pub use canon::{canonical_code, canonical_form, canonical_key, CANON_MAX_N};
pub use graph6::{g6_decode, g6_encode};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on the number of vertices of any graph.
pub const MAX_VERTICES: usize = 4096;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    edge_count: usize,
}

impl Graph {
    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        check_size(n)?;
        let words = n.div_ceil(64);
        Ok(Graph {
            n,
            words,
            rows: vec![0; n * words],
            edge_count: 0,
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n)?;
        for (u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut b = GraphBuilder::new(n)?;
        for v in 0..n {
            for u in 0..v {
                b.add_edge(u, v)?;
            }
        }
        Ok(b.build())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// The bit row of `v`: bit `u` of word `u / 64` is set iff `u ~ v`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.row(v))
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|v| self.neighbors(v).collect()).collect()
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::IndexOutOfRange { index: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Subgraph induced by `keep`, relabelled in the order given.
    pub fn induced(&self, keep: &[usize]) -> Result<Graph> {
        for &v in keep {
            self.check_vertex(v)?;
        }
        let mut b = GraphBuilder::new(keep.len())?;
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if u == v {
                    return Err(Error::PreconditionFailed(format!("vertex {u} listed twice")));
                }
                if self.has_edge(u, v) {
                    b.add_edge(i, j)?;
                }
            }
        }
        Ok(b.build())
    }

    /// Applies `perm`, sending old vertex `v` to new index `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::PreconditionFailed(format!(
                "permutation has length {}, graph has {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::PreconditionFailed("not a permutation".into()));
            }
        }
        Graph::from_edges(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    pub fn delete_vertex(&self, u: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        let keep: Vec<usize> = (0..self.n).filter(|&v| v != u).collect();
        self.induced(&keep)
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge { u, v });
        }
        let mut b = GraphBuilder::from_graph(self);
        b.remove_edge(u, v);
        Ok(b.build())
    }

    /// Adds the edge `uv`; a no-op if it is already present.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut b = GraphBuilder::from_graph(self);
        b.add_edge(u, v)?;
        Ok(b.build())
    }

    /// Contracts the edge `uv`. The merged vertex takes the slot of
    /// `min(u, v)`; indices above `max(u, v)` shift down by one.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v || !self.has_edge(u, v) {
            return Err(Error::NotAnEdge { u, v });
        }
        let (keep, gone) = (u.min(v), u.max(v));
        let shift = |w: usize| if w > gone { w - 1 } else { w };
        let mut b = GraphBuilder::new(self.n - 1)?;
        for (a, c) in self.edges() {
            let a2 = if a == gone { keep } else { a };
            let c2 = if c == gone { keep } else { c };
            if a2 != c2 {
                b.add_edge(shift(a2), shift(c2))?;
            }
        }
        Ok(b.build())
    }

    /// `self ∨ other`: the disjoint union plus every edge between the two
    /// vertex sets. `self` occupies indices `0..self.n()`.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut b = self.union_builder(other)?;
        for u in 0..self.n {
            for v in 0..other.n {
                b.add_edge(u, self.n + v)?;
            }
        }
        Ok(b.build())
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        Ok(self.union_builder(other)?.build())
    }

    fn union_builder(&self, other: &Graph) -> Result<GraphBuilder> {
        let mut b = GraphBuilder::new(self.n + other.n)?;
        for (u, v) in self.edges() {
            b.add_edge(u, v)?;
        }
        for (u, v) in other.edges() {
            b.add_edge(self.n + u, self.n + v)?;
        }
        Ok(b)
    }

    /// Adds every missing edge inside `set`.
    pub fn complete_on(&self, set: &VertexSet) -> Result<Graph> {
        if set.host_n() != self.n {
            return Err(Error::PreconditionFailed("vertex set belongs to another host".into()));
        }
        let mut b = GraphBuilder::from_graph(self);
        let m = set.members();
        for (i, &u) in m.iter().enumerate() {
            for &v in &m[i + 1..] {
                b.add_edge(u, v)?;
            }
        }
        Ok(b.build())
    }

    /// Panics if a structural invariant is broken. Cheap enough for tests.
    pub fn assert_invariants(&self) {
        let mut count = 0;
        for u in 0..self.n {
            assert!(!self.has_edge(u, u), "loop at {u}");
            for v in self.neighbors(u) {
                assert!(v < self.n, "stray bit {v} in row {u}");
                assert!(self.has_edge(v, u), "asymmetric pair {u},{v}");
                count += 1;
            }
        }
        assert_eq!(count, 2 * self.edge_count, "edge count cache is stale");
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, e={}, g6={})", self.n, self.edge_count, g6_encode(self))
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::SizeLimitExceeded { what: "vertex count", got: n, limit: MAX_VERTICES })
    } else {
        Ok(())
    }
}

fn bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            }
        })
    })
}

/// Mutable staging area for building a [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    g: Graph,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Result<Self> {
        Ok(GraphBuilder { g: Graph::empty(n)? })
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphBuilder { g: g.clone() }
    }

    pub fn n(&self) -> usize {
        self.g.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.g.has_edge(u, v)
    }

    /// Adds `uv`. Loops are rejected; repeated edges are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.g.check_vertex(u)?;
        self.g.check_vertex(v)?;
        if u == v {
            return Err(Error::PreconditionFailed(format!("loop at vertex {u}")));
        }
        if !self.g.has_edge(u, v) {
            let w = self.g.words;
            self.g.rows[u * w + v / 64] |= 1 << (v % 64);
            self.g.rows[v * w + u / 64] |= 1 << (u % 64);
            self.g.edge_count += 1;
        }
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if self.g.has_edge(u, v) {
            let w = self.g.words;
            self.g.rows[u * w + v / 64] &= !(1 << (v % 64));
            self.g.rows[v * w + u / 64] &= !(1 << (u % 64));
            self.g.edge_count -= 1;
        }
    }

    pub fn build(self) -> Graph {
        self.g
    }
}

/// A set of vertices of a host graph on `host_n` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct VertexSet {
    host_n: usize,
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new<I: IntoIterator<Item = usize>>(host_n: usize, members: I) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&v| v >= host_n) {
            return Err(Error::IndexOutOfRange { index: bad, n: host_n });
        }
        members.sort_unstable();
        members.dedup();
        Ok(VertexSet { host_n, members })
    }

    pub fn range(host_n: usize, range: std::ops::Range<usize>) -> Result<Self> {
        Self::new(host_n, range)
    }

    pub fn empty(host_n: usize) -> Self {
        VertexSet { host_n, members: Vec::new() }
    }

    pub fn host_n(&self) -> usize {
        self.host_n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    /// First shared vertex, if any.
    pub fn intersection_witness(&self, other: &VertexSet) -> Option<usize> {
        self.iter().find(|&v| other.contains(v))
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet {
            host_n: self.host_n,
            members: (0..self.host_n).filter(|&v| !self.contains(v)).collect(),
        }
    }
}
