//! Branch-set search for minor models.
//!
//! Pattern vertices are placed one at a time. A newly placed vertex gets a
//! single host vertex, its root, which is required to be the smallest
//! member of its final branch set. Before the next placement every pattern
//! edge between placed vertices must be realized; an unmet edge is repaired
//! by attaching one free host vertex to either endpoint's branch set,
//! restricted to vertices that can still reach the other set through free
//! vertices. Given any model `T`, some branch keeps `S_i ⊆ T_i` throughout,
//! so the search is complete.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

use super::{MinorAnswer, MinorModel};

pub(crate) const MAX_PATTERN: usize = 12;
const MAX_SEARCH_HOST: usize = 128;
const MEMO_CAP: usize = 1 << 20;

/// Ordering constraints `(a, b)`: the smallest host vertex of branch set
/// `a` must be below that of `b`. Only valid for pattern automorphism
/// classes; callers are responsible for that.
pub(crate) struct SearchPlan {
    pub order: Vec<usize>,
    pub symmetry: Vec<(usize, usize)>,
}

impl SearchPlan {
    /// Descending degree; ties go to the vertex with more placed neighbours,
    /// then the lower index.
    pub fn by_degree(pattern: &Graph) -> Self {
        let k = pattern.n();
        let mut placed = vec![false; k];
        let mut order = Vec::with_capacity(k);
        for _ in 0..k {
            let next = (0..k)
                .filter(|&p| !placed[p])
                .max_by_key(|&p| {
                    let linked = pattern.neighbors(p).filter(|&q| placed[q]).count();
                    (pattern.degree(p), linked, std::cmp::Reverse(p))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        SearchPlan { order, symmetry: Vec::new() }
    }
}

pub(crate) fn search(host: &Graph, pattern: &Graph, plan: &SearchPlan, budget: u64) -> Result<MinorAnswer> {
    let k = pattern.n();
    if k > MAX_PATTERN {
        return Err(Error::PatternTooLarge(k));
    }
    debug_assert_eq!(plan.order.len(), k);
    if k == 0 {
        return Ok(MinorAnswer::Found(MinorModel::new(host.n(), pattern.clone(), Vec::new())));
    }
    if k > host.n() || pattern.edge_count() > host.edge_count() {
        return Ok(MinorAnswer::NotFound);
    }

    let keep = prune_host(host, pattern);
    let pieces: Vec<Vec<usize>> = if pattern.is_connected() {
        let reduced = host.induced(&keep)?;
        reduced
            .components()
            .into_iter()
            .map(|c| c.into_iter().map(|i| keep[i]).collect::<Vec<_>>())
            .filter(|c| c.len() >= k)
            .collect()
    } else {
        vec![keep]
    };

    let mut nodes = 0u64;
    for piece in pieces {
        if piece.len() > MAX_SEARCH_HOST {
            return Err(Error::SizeLimitExceeded { what: "minor search host piece", got: piece.len(), limit: MAX_SEARCH_HOST });
        }
        let sub = host.induced(&piece)?;
        if sub.edge_count() < pattern.edge_count() {
            continue;
        }
        let mut engine = Engine::new(&sub, pattern, plan, budget, nodes);
        let outcome = engine.dfs(0);
        nodes = engine.nodes;
        match outcome {
            Outcome::Found => {
                let sets = (0..k)
                    .map(|p| {
                        let members = bits(engine.sets[p]).map(|i| piece[i]);
                        VertexSet::new(host.n(), members).expect("piece vertices are host vertices")
                    })
                    .collect();
                let model = MinorModel::new(host.n(), pattern.clone(), sets);
                assert!(
                    super::verify_model(host, &model).unwrap_or(false),
                    "minor search produced an invalid certificate"
                );
                return Ok(MinorAnswer::Found(model));
            }
            Outcome::Exhausted => return Ok(MinorAnswer::Exhausted { nodes_used: nodes }),
            Outcome::NotFound => {}
        }
    }
    Ok(MinorAnswer::NotFound)
}

/// Host vertices that can appear in a minimal model. A vertex of degree 0
/// is useless once the pattern has minimum degree ≥ 1, and a leaf is
/// useless once it is ≥ 2: as a singleton it touches one set only, and
/// inside a larger set it can be dropped without losing anything.
fn prune_host(host: &Graph, pattern: &Graph) -> Vec<usize> {
    let min_deg = (0..pattern.n()).map(|p| pattern.degree(p)).min().unwrap_or(0);
    let drop_below = min_deg.min(2);
    let n = host.n();
    let mut alive = vec![true; n];
    let mut deg = host.degrees();
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] < drop_below).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for u in host.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
                if deg[u] < drop_below {
                    stack.push(u);
                }
            }
        }
    }
    (0..n).filter(|&v| alive[v]).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Outcome {
    Found,
    NotFound,
    Exhausted,
}

struct Engine {
    adj: Vec<u128>,
    all: u128,
    k: usize,
    pat_adj: Vec<u32>,
    pat_edges: Vec<(usize, usize)>,
    order: Vec<usize>,
    /// for each pattern vertex: lower-bound partners (a, p) and upper-bound partners (p, b)
    below: Vec<Vec<usize>>,
    above: Vec<Vec<usize>>,
    sets: Vec<u128>,
    root: Vec<usize>,
    placed: Vec<bool>,
    used: u128,
    nodes: u64,
    budget: u64,
    memo: HashSet<Vec<u128>>,
}

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

impl Engine {
    fn new(host: &Graph, pattern: &Graph, plan: &SearchPlan, budget: u64, nodes: u64) -> Self {
        let n = host.n();
        let adj = (0..n).map(|v| host.neighbors(v).fold(0u128, |m, u| m | 1 << u)).collect();
        let k = pattern.n();
        let pat_adj = (0..k).map(|p| pattern.neighbors(p).fold(0u32, |m, q| m | 1 << q)).collect();
        let mut below = vec![Vec::new(); k];
        let mut above = vec![Vec::new(); k];
        for &(a, b) in &plan.symmetry {
            below[b].push(a);
            above[a].push(b);
        }
        Engine {
            adj,
            all: if n == 128 { u128::MAX } else { (1u128 << n) - 1 },
            k,
            pat_adj,
            pat_edges: pattern.edges().collect(),
            order: plan.order.clone(),
            below,
            above,
            sets: vec![0; k],
            root: vec![0; k],
            placed: vec![false; k],
            used: 0,
            nodes,
            budget,
            memo: HashSet::new(),
        }
    }

    fn nbr(&self, set: u128) -> u128 {
        bits(set).fold(0, |m, v| m | self.adj[v]) & !set
    }

    /// Free vertices joined to `seed` by a path of free vertices.
    fn free_closure(&self, seed: u128, free: u128) -> u128 {
        let mut seen = seed & free;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & free & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen
    }

    /// Free vertices that may be attached to set `a` to work towards touching set `b`.
    fn growth(&self, a: usize, b: usize, free: u128) -> u128 {
        let reach = self.free_closure(self.nbr(self.sets[b]), free);
        let above_root = u128::MAX.checked_shl(self.root[a] as u32 + 1).unwrap_or(0);
        self.nbr(self.sets[a]) & reach & above_root
    }

    fn memo_key(&self, depth: usize) -> Vec<u128> {
        let mut key = Vec::with_capacity(depth + 1);
        key.push(depth as u128);
        key.extend(self.order[..depth].iter().map(|&p| self.sets[p]));
        key
    }

    fn dfs(&mut self, depth: usize) -> Outcome {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Outcome::Exhausted;
        }
        let free = self.all & !self.used;
        if ((self.k - depth) as u32) > free.count_ones() {
            return Outcome::NotFound;
        }
        // a placed set with an unplaced pattern neighbour needs room to meet it
        for &p in &self.order[..depth] {
            let waiting = bits(self.pat_adj[p] as u128).any(|q| !self.placed[q]);
            if waiting && self.nbr(self.sets[p]) & free == 0 {
                return Outcome::NotFound;
            }
        }

        let mut repair: Option<Vec<(usize, usize)>> = None;
        for &(a, b) in &self.pat_edges {
            if !(self.placed[a] && self.placed[b]) || self.nbr(self.sets[a]) & self.sets[b] != 0 {
                continue;
            }
            let mut cands: Vec<(usize, usize)> = bits(self.growth(a, b, free)).map(|f| (a, f)).collect();
            cands.extend(bits(self.growth(b, a, free)).map(|f| (b, f)));
            if cands.is_empty() {
                return Outcome::NotFound;
            }
            if repair.as_ref().is_none_or(|r| cands.len() < r.len()) {
                repair = Some(cands);
            }
        }

        let memoize = repair.is_some();
        if memoize && self.memo.contains(&self.memo_key(depth)) {
            return Outcome::NotFound;
        }
        let result = match repair {
            Some(cands) => self.try_growth(depth, &cands),
            None if depth == self.k => Outcome::Found,
            None => self.try_roots(depth, free),
        };
        if memoize && result == Outcome::NotFound && self.memo.len() < MEMO_CAP {
            let key = self.memo_key(depth);
            self.memo.insert(key);
        }
        result
    }

    fn try_growth(&mut self, depth: usize, cands: &[(usize, usize)]) -> Outcome {
        for &(p, f) in cands {
            let bit = 1u128 << f;
            self.sets[p] |= bit;
            self.used |= bit;
            let r = self.dfs(depth);
            if r == Outcome::Found {
                return r;
            }
            self.sets[p] &= !bit;
            self.used &= !bit;
            if r == Outcome::Exhausted {
                return r;
            }
        }
        Outcome::NotFound
    }

    fn try_roots(&mut self, depth: usize, free: u128) -> Outcome {
        let p = self.order[depth];
        let lo = self.below[p].iter().filter(|&&a| self.placed[a]).map(|&a| self.root[a] + 1).max().unwrap_or(0);
        let hi = self.above[p].iter().filter(|&&b| self.placed[b]).map(|&b| self.root[b]).min().unwrap_or(128);
        self.placed[p] = true;
        let mut result = Outcome::NotFound;
        for r in bits(free).filter(|&r| r >= lo && r < hi) {
            let bit = 1u128 << r;
            self.sets[p] = bit;
            self.root[p] = r;
            self.used |= bit;
            let out = self.dfs(depth + 1);
            self.used &= !bit;
            if out != Outcome::NotFound {
                result = out;
                break;
            }
        }
        if result != Outcome::Found {
            self.sets[p] = 0;
            self.placed[p] = false;
        }
        result
    }
}
