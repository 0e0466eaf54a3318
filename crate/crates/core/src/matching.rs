//! Maximum matching in general graphs (Edmonds' blossom algorithm).

use std::collections::VecDeque;

const NIL: usize = usize::MAX;

/// Computes a maximum matching of the graph given by adjacency lists,
/// stopping early once `target` edges are matched. Returns the matched
/// pairs `(u, v)` with `u < v`, sorted.
pub fn maximum_matching(adj: &[Vec<usize>], target: Option<usize>) -> Vec<(usize, usize)> {
    let n = adj.len();
    let mut b = Blossom {
        adj,
        mate: vec![NIL; n],
        parent: vec![NIL; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
        queue: VecDeque::new(),
    };
    let target = target.unwrap_or(usize::MAX);
    let mut size = 0;
    // greedy start
    for v in 0..n {
        if b.mate[v] == NIL {
            if let Some(&u) = adj[v].iter().find(|&&u| b.mate[u] == NIL && u != v) {
                b.mate[v] = u;
                b.mate[u] = v;
                size += 1;
            }
        }
    }
    for root in 0..n {
        if size >= target {
            break;
        }
        if b.mate[root] == NIL {
            if let Some(end) = b.find_path(root) {
                b.augment(end);
                size += 1;
            }
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..n).filter(|&v| b.mate[v] != NIL && v < b.mate[v]).map(|v| (v, b.mate[v])).collect();
    pairs.sort_unstable();
    pairs
}

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NIL {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.mate.len();
        self.used.fill(false);
        self.parent.fill(NIL);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in &self.adj[v] {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NIL && self.parent[self.mate[to]] != NIL) {
                    let cur = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NIL {
                    self.parent[to] = v;
                    if self.mate[to] == NIL {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NIL {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }
}
