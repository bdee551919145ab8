//! Maximum matching in general graphs (Edmonds' blossom algorithm) and the
//! lexicographically least perfect matching.
//!
//! Graphs are adjacency lists over `0..n`; neighbor lists need not be sorted.

use std::collections::VecDeque;

const NONE: usize = usize::MAX;

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    active: &'a [bool],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>], active: &'a [bool], mate: Vec<usize>) -> Self {
        let n = adj.len();
        Self {
            adj,
            active,
            mate,
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
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

    /// BFS for an augmenting path from the exposed vertex `root`; returns its
    /// other end.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in &self.adj[v] {
                if !self.active[to] || self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
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
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }

    fn augment(&mut self, end: usize) {
        let mut v = end;
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }
}

/// A maximum matching; `mate[v]` is `v`'s partner if matched.
pub fn maximum_matching(adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let n = adj.len();
    let active = vec![true; n];
    let mut mate = vec![NONE; n];
    for v in 0..n {
        if mate[v] == NONE {
            if let Some(&w) = adj[v].iter().filter(|&&w| w != v && mate[w] == NONE).min() {
                mate[v] = w;
                mate[w] = v;
            }
        }
    }
    let mut b = Blossom::new(adj, &active, mate);
    for v in 0..n {
        if b.mate[v] == NONE {
            if let Some(end) = b.find_path(v) {
                b.augment(end);
            }
        }
    }
    b.mate.into_iter().map(|m| (m != NONE).then_some(m)).collect()
}

/// The lexicographically least perfect matching as sorted `(i, j)` pairs with
/// `i < j`, or `None` when no perfect matching exists.
///
/// Pairs are fixed greedily: the smallest free vertex takes the smallest
/// partner that still leaves a perfect matching on the rest. Forcing an edge
/// into a perfect matching exposes exactly two vertices, so each probe is a
/// single augmenting-path search.
pub fn lex_least_perfect_matching(adj: &[Vec<usize>]) -> Option<Vec<(usize, usize)>> {
    let n = adj.len();
    if n % 2 == 1 {
        return None;
    }
    let initial = maximum_matching(adj);
    if initial.iter().any(Option::is_none) {
        return None;
    }
    let mut mate: Vec<usize> = initial.into_iter().map(Option::unwrap).collect();
    let mut sorted: Vec<Vec<usize>> = adj.to_vec();
    for list in &mut sorted {
        list.sort_unstable();
        list.dedup();
    }
    let mut active = vec![true; n];
    let mut pairs = Vec::with_capacity(n / 2);

    for i in 0..n {
        if !active[i] {
            continue;
        }
        for &j in &sorted[i] {
            if j < i || !active[j] {
                continue;
            }
            if mate[i] == j {
                break;
            }
            let (a, b) = (mate[i], mate[j]);
            let mut trial = mate.clone();
            trial[i] = j;
            trial[j] = i;
            trial[a] = NONE;
            trial[b] = NONE;
            active[i] = false;
            active[j] = false;
            let mut blossom = Blossom::new(adj, &active, trial);
            let found = blossom.find_path(a);
            if let Some(end) = found {
                debug_assert_eq!(end, b);
                blossom.augment(end);
                mate = blossom.mate;
                break;
            }
            active[i] = true;
            active[j] = true;
        }
        let j = mate[i];
        active[i] = false;
        active[j] = false;
        pairs.push((i, j));
    }
    Some(pairs)
}
