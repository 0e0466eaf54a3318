//! Builders for the named graph families.
//!
//! Every builder uses a fixed vertex order: hub and clique vertices come
//! first, the rest follow block by block. The returned [`Layout`] names the
//! blocks, so certificates and graph6 strings are stable across runs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexSet};

/// A named construction with its integer parameters.
///
/// The canonical text form is `kind:key=value,...`, for example
/// `friendship:s=3`, `kt-join-matching:t=2,n=40` or `efgg:s=3,n=450`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Complete { n: usize },
    Independent { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Path { n: usize },
    Cycle { n: usize },
    /// `M_n`: ⌊n/2⌋ disjoint edges, plus one isolated vertex when n is odd.
    Matching { n: usize },
    /// `F_s = K_1 ∨ sK_2`.
    Friendship { s: usize },
    /// `Q_t`: t copies of `C_4` sharing one vertex.
    IntersectingC4 { t: usize },
    KsJoinIndependent { s: usize, n: usize },
    KtJoinMatching { t: usize, n: usize },
    EfggExtremal { s: usize, n: usize },
    HStar { s: usize },
    ZlxExtremal { s: usize, n: usize },
    NearRegular { s: usize },
}

impl FamilySpec {
    pub fn kind_name(&self) -> &'static str {
        match self {
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::Independent { .. } => "independent",
            FamilySpec::CompleteBipartite { .. } => "complete-bipartite",
            FamilySpec::Path { .. } => "path",
            FamilySpec::Cycle { .. } => "cycle",
            FamilySpec::Matching { .. } => "matching",
            FamilySpec::Friendship { .. } => "friendship",
            FamilySpec::IntersectingC4 { .. } => "intersecting-c4",
            FamilySpec::KsJoinIndependent { .. } => "ks-join-independent",
            FamilySpec::KtJoinMatching { .. } => "kt-join-matching",
            FamilySpec::EfggExtremal { .. } => "efgg",
            FamilySpec::HStar { .. } => "hstar",
            FamilySpec::ZlxExtremal { .. } => "zlx",
            FamilySpec::NearRegular { .. } => "near-regular",
        }
    }

    fn params(&self) -> Vec<(&'static str, usize)> {
        use FamilySpec::*;
        match *self {
            Complete { n } | Independent { n } | Path { n } | Cycle { n } | Matching { n } => vec![("n", n)],
            CompleteBipartite { a, b } => vec![("a", a), ("b", b)],
            Friendship { s } | HStar { s } | NearRegular { s } => vec![("s", s)],
            IntersectingC4 { t } => vec![("t", t)],
            KsJoinIndependent { s, n } | EfggExtremal { s, n } | ZlxExtremal { s, n } => vec![("s", s), ("n", n)],
            KtJoinMatching { t, n } => vec![("t", t), ("n", n)],
        }
    }

    /// Number of vertices of the constructed graph.
    pub fn order(&self) -> usize {
        use FamilySpec::*;
        match *self {
            Complete { n } | Independent { n } | Path { n } | Cycle { n } | Matching { n } => n,
            CompleteBipartite { a, b } => a + b,
            Friendship { s } => 2 * s + 1,
            IntersectingC4 { t } => 3 * t + 1,
            KsJoinIndependent { n, .. } | KtJoinMatching { n, .. } | EfggExtremal { n, .. } | ZlxExtremal { n, .. } => n,
            HStar { s } | NearRegular { s } => (2 * s).saturating_sub(1),
        }
    }

    pub fn validate(&self) -> Result<()> {
        use FamilySpec::*;
        let bad = |msg: String| Err(Error::InvalidSpec(format!("{self}: {msg}")));
        match *self {
            Complete { n } | Independent { n } | Path { n } | Matching { n } if n == 0 => bad("n must be at least 1".into()),
            Cycle { n } if n < 3 => bad("a cycle needs n ≥ 3".into()),
            CompleteBipartite { a, b } if a == 0 || b == 0 => bad("both parts must be nonempty".into()),
            Friendship { s: 0 } => bad("s must be at least 1".into()),
            IntersectingC4 { t: 0 } => bad("t must be at least 1".into()),
            KsJoinIndependent { s, n } if s == 0 || s >= n => bad("need 1 ≤ s < n".into()),
            KtJoinMatching { t, n } if t == 0 || t >= n => bad("need 1 ≤ t < n".into()),
            HStar { s } | NearRegular { s } if s < 2 || s % 2 == 1 => bad("s must be even and at least 2".into()),
            EfggExtremal { s, n } if s == 0 || n < 4 * s => bad("need s ≥ 1 and n ≥ 4s".into()),
            ZlxExtremal { s, n } if s == 0 || n < 4 * s || n < 2 * (2 * s - 1) => {
                bad("need s ≥ 1, n ≥ 4s and n ≥ 2(2s−1)".into())
            }
            _ => {
                let n = self.order();
                if n > crate::graph::MAX_VERTICES {
                    Err(Error::SizeLimitExceeded { what: "family order", got: n, limit: crate::graph::MAX_VERTICES })
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}:{}", self.kind_name(), params.join(","))
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (kind, rest) = text.split_once(':').unwrap_or((text, ""));
        let mut params = BTreeMap::new();
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidSpec(format!("parameter `{part}` is not key=value")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidSpec(format!("parameter `{part}` is not a nonnegative integer")))?;
            params.insert(k.trim().to_string(), v);
        }
        let mut take = |key: &str| {
            params
                .remove(key)
                .ok_or_else(|| Error::InvalidSpec(format!("`{kind}` needs parameter `{key}`")))
        };
        use FamilySpec::*;
        let spec = match kind {
            "complete" | "k" => Complete { n: take("n")? },
            "independent" | "i" => Independent { n: take("n")? },
            "complete-bipartite" | "kab" => CompleteBipartite { a: take("a")?, b: take("b")? },
            "path" => Path { n: take("n")? },
            "cycle" => Cycle { n: take("n")? },
            "matching" | "m" => Matching { n: take("n")? },
            "friendship" | "fs" => Friendship { s: take("s")? },
            "intersecting-c4" | "qt" => IntersectingC4 { t: take("t")? },
            "ks-join-independent" => KsJoinIndependent { s: take("s")?, n: take("n")? },
            "kt-join-matching" => KtJoinMatching { t: take("t")?, n: take("n")? },
            "efgg" => EfggExtremal { s: take("s")?, n: take("n")? },
            "hstar" => HStar { s: take("s")? },
            "zlx" => ZlxExtremal { s: take("s")?, n: take("n")? },
            "near-regular" => NearRegular { s: take("s")? },
            other => return Err(Error::InvalidSpec(format!("unknown family `{other}`"))),
        };
        if let Some(extra) = params.keys().next() {
            return Err(Error::InvalidSpec(format!("`{kind}` does not take parameter `{extra}`")));
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// Named vertex regions of a construction. Regions partition the vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Layout {
    pub host_n: usize,
    pub regions: BTreeMap<String, Vec<usize>>,
    /// Set when the construction is a degenerate instance of its definition
    /// (for example `H*` at s = 2, where the set A is empty).
    pub degenerate: bool,
}

impl Layout {
    fn new(host_n: usize) -> Self {
        Layout { host_n, regions: BTreeMap::new(), degenerate: false }
    }

    fn with(mut self, label: &str, range: std::ops::Range<usize>) -> Self {
        self.regions.insert(label.to_string(), range.collect());
        self
    }

    pub fn region(&self, label: &str) -> Option<VertexSet> {
        self.regions
            .get(label)
            .map(|m| VertexSet::new(self.host_n, m.iter().copied()).expect("layout regions are in range"))
    }

    /// True iff the regions are disjoint and cover every vertex.
    pub fn is_partition(&self) -> bool {
        let mut seen = vec![false; self.host_n];
        for members in self.regions.values() {
            for &v in members {
                if v >= self.host_n || std::mem::replace(&mut seen[v], true) {
                    return false;
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Builds the graph described by `spec`.
pub fn construct(spec: &FamilySpec) -> Result<(Graph, Layout)> {
    spec.validate()?;
    use FamilySpec::*;
    match *spec {
        Complete { n } => Ok((Graph::complete(n)?, Layout::new(n).with("A", 0..n))),
        Independent { n } => Ok((Graph::empty(n)?, Layout::new(n).with("B", 0..n))),
        CompleteBipartite { a, b } => {
            let g = Graph::empty(a)?.join(&Graph::empty(b)?)?;
            Ok((g, Layout::new(a + b).with("A", 0..a).with("B", a..a + b)))
        }
        Path { n } => {
            let g = Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))?;
            Ok((g, Layout::new(n).with("path", 0..n)))
        }
        Cycle { n } => {
            let g = Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))?;
            Ok((g, Layout::new(n).with("cycle", 0..n)))
        }
        Matching { n } => Ok((matching(n)?, Layout::new(n).with("matching", 0..n))),
        Friendship { s } => {
            let g = Graph::empty(1)?.join(&matching(2 * s)?)?;
            Ok((g, Layout::new(2 * s + 1).with("center", 0..1).with("B", 1..2 * s + 1)))
        }
        IntersectingC4 { t } => {
            // arm j is center–x–y–z–center with x, y, z = 3j+1, 3j+2, 3j+3
            let n = 3 * t + 1;
            let mut b = GraphBuilder::new(n)?;
            for j in 0..t {
                let (x, y, z) = (3 * j + 1, 3 * j + 2, 3 * j + 3);
                b.add_edge(0, x)?;
                b.add_edge(x, y)?;
                b.add_edge(y, z)?;
                b.add_edge(z, 0)?;
            }
            Ok((b.build(), Layout::new(n).with("center", 0..1).with("arms", 1..n)))
        }
        KsJoinIndependent { s, n } => {
            let g = Graph::complete(s)?.join(&Graph::empty(n - s)?)?;
            Ok((g, Layout::new(n).with("A", 0..s).with("B", s..n)))
        }
        KtJoinMatching { t, n } => {
            let g = Graph::complete(t)?.join(&matching(n - t)?)?;
            Ok((g, Layout::new(n).with("A", 0..t).with("B", t..n)))
        }
        EfggExtremal { s, n } => efgg_extremal(s, n),
        HStar { s } => hstar(s),
        ZlxExtremal { s, n } => zlx_extremal(s, n),
        NearRegular { s } => {
            let g = near_regular(s)?;
            let n = g.n();
            Ok((g, Layout::new(n).with("embed", 0..n)))
        }
    }
}

/// `M_n`: edges (0,1), (2,3), ...; the last vertex is isolated for odd n.
pub fn matching(n: usize) -> Result<Graph> {
    Graph::from_edges(n, (0..n / 2).map(|i| (2 * i, 2 * i + 1)))
}

/// Balanced complete bipartite graph with `embed` placed on the lowest
/// indices of the part of size ⌊n/2⌋.
fn bipartite_with_embed(n: usize, embed: &Graph) -> Result<(Graph, Layout)> {
    let half = n / 2;
    debug_assert!(embed.n() <= half);
    let mut b = GraphBuilder::from_graph(&Graph::empty(half)?.join(&Graph::empty(n - half)?)?);
    for (u, v) in embed.edges() {
        b.add_edge(u, v)?;
    }
    let h = embed.n();
    let layout = Layout::new(n).with("embed", 0..h).with("part0", h..half).with("part1", half..n);
    Ok((b.build(), layout))
}

/// The edge-extremal F_s-free graph: `K_{⌊n/2⌋,⌈n/2⌉}` with `2K_s`
/// (odd s) or the near-regular graph on 2s−1 vertices (even s) inside the
/// smaller part. The layout's `embed` and `part0` together form that part.
pub fn efgg_extremal(s: usize, n: usize) -> Result<(Graph, Layout)> {
    FamilySpec::EfggExtremal { s, n }.validate()?;
    let embed = if s % 2 == 1 {
        Graph::complete(s)?.disjoint_union(&Graph::complete(s)?)?
    } else {
        near_regular(s)?
    };
    bipartite_with_embed(n, &embed)
}

/// A graph on 2s−1 vertices with degree sequence (s−1, ..., s−1, s−2),
/// realized by Havel–Hakimi: the vertex with the largest remaining degree
/// (lowest index on ties) is joined to the next largest ones.
pub fn near_regular(s: usize) -> Result<Graph> {
    FamilySpec::NearRegular { s }.validate()?;
    let n = 2 * s - 1;
    let mut residual = vec![s - 1; n];
    residual[n - 1] = s - 2;
    let mut b = GraphBuilder::new(n)?;
    loop {
        let v = (0..n).max_by_key(|&v| (residual[v], std::cmp::Reverse(v))).unwrap();
        let need = residual[v];
        if need == 0 {
            break;
        }
        let mut others: Vec<usize> = (0..n).filter(|&u| u != v && residual[u] > 0).collect();
        others.sort_by_key(|&u| (std::cmp::Reverse(residual[u]), u));
        if others.len() < need {
            return Err(Error::InvalidSpec(format!("degree sequence for s={s} is not graphical")));
        }
        for &u in &others[..need] {
            b.add_edge(v, u)?;
            residual[u] -= 1;
        }
        residual[v] = 0;
    }
    Ok(b.build())
}

/// `H*` on 2s−1 vertices, regions in index order w_0, A_1, A_2, u_0, B_1, B_2.
pub fn hstar(s: usize) -> Result<(Graph, Layout)> {
    FamilySpec::HStar { s }.validate()?;
    let half = (s - 2) / 2;
    let w0 = 0;
    let a1 = 1..1 + half;
    let a2 = a1.end..a1.end + half;
    let u0 = a2.end;
    let b1 = u0 + 1..u0 + 1 + s / 2;
    let b2 = b1.end..b1.end + half;
    let n = b2.end;
    debug_assert_eq!(n, 2 * s - 1);

    let mut b = GraphBuilder::new(n)?;
    let a: Vec<usize> = (a1.start..a2.end).collect();
    let bb: Vec<usize> = (b1.start..b2.end).collect();
    for &v in &a {
        b.add_edge(w0, v)?;
    }
    for v in a1.clone().chain(b1.clone()) {
        b.add_edge(u0, v)?;
    }
    for (x, y) in b2.clone().zip(a2.clone()) {
        b.add_edge(x, y)?;
    }
    for clique in [&a, &bb] {
        for (i, &x) in clique.iter().enumerate() {
            for &y in &clique[i + 1..] {
                b.add_edge(x, y)?;
            }
        }
    }
    let mut layout = Layout::new(n)
        .with("w_0", 0..1)
        .with("A_1", a1)
        .with("A_2", a2)
        .with("u_0", u0..u0 + 1)
        .with("B_1", b1)
        .with("B_2", b2);
    layout.degenerate = s == 2;
    Ok((b.build(), layout))
}

/// The spectral-extremal F_s-free graph: `K_{⌊n/2⌋,⌈n/2⌉}` with
/// `K_s ∪ K_s` (odd s) or `H*` (even s) inside the part of size ⌊n/2⌋.
pub fn zlx_extremal(s: usize, n: usize) -> Result<(Graph, Layout)> {
    FamilySpec::ZlxExtremal { s, n }.validate()?;
    let embed = if s % 2 == 1 {
        Graph::complete(s)?.disjoint_union(&Graph::complete(s)?)?
    } else {
        hstar(s)?.0
    };
    bipartite_with_embed(n, &embed)
}

/// `⌊n²/4⌋ + s² − s` for odd s, `⌊n²/4⌋ + s² − 3s/2` for even s.
pub fn efgg_edge_bound(s: usize, n: usize) -> usize {
    let correction = if s % 2 == 1 { s * s - s } else { s * s - 3 * s / 2 };
    n * n / 4 + correction
}

pub(crate) fn choose2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}
