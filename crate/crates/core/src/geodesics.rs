//! Isometric paths and the rooted covering test.
//!
//! # Covering by a single r-path
//!
//! The greedy rooted cover needs to know whether some isometric path `P` with
//! end-vertex `r` passes within `R` of two vertices `u` and `w` at once. There
//! are infinitely many candidate paths, but the question reduces to vertices:
//!
//! > such a `P` exists iff there are `a ∈ B_R(u)` and `b ∈ B_R(w)` with
//! > `d(r,a) + d(a,b) = d(r,b)` or `d(r,b) + d(b,a) = d(r,a)`.
//!
//! If the condition holds, [`path_through`] builds `P` through both witnesses.
//! Conversely, take `a` and `b` as the vertices of a witnessing `P` closest to
//! `u` and `w`; both lie on one geodesic starting at `r`, so one of them is
//! between `r` and the other.
//!
//! [`exists_covering_rpath`] checks this pairwise. [`rpath_neighbourhood`]
//! answers it for every `u` at once in `O(n + m)`: with `Down` the vertices on
//! some geodesic from `r` into `B_R(w)` and `Up` the vertices having a geodesic
//! from `r` through `B_R(w)`, the condition is `d(u, Down ∪ Up) <= R`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::metric::{multi_source_bfs, DistanceMatrix, UNREACHED};

/// A walk through consecutive adjacent vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexPath(Vec<Vertex>);

impl VertexPath {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        Self(vertices)
    }

    pub fn single(v: Vertex) -> Self {
        Self(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.0
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn first(&self) -> Vertex {
        self.0[0]
    }

    pub fn last(&self) -> Vertex {
        self.0[self.0.len() - 1]
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn has_end(&self, v: Vertex) -> bool {
        !self.0.is_empty() && (self.first() == v || self.last() == v)
    }
}

impl From<Vec<Vertex>> for VertexPath {
    fn from(v: Vec<Vertex>) -> Self {
        Self(v)
    }
}

/// The geodesic from `u` to `v` that always steps to the smallest-id neighbor
/// one hop closer to `v`.
pub fn shortest_path(g: &Graph, d: &DistanceMatrix, u: Vertex, v: Vertex) -> VertexPath {
    let mut path = Vec::with_capacity(d.get(u, v) as usize + 1);
    let mut cur = u;
    path.push(cur);
    while cur != v {
        let want = d.get(cur, v) - 1;
        cur = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| d.get(w, v) == want)
            .expect("connected graph has a neighbor one step closer");
        path.push(cur);
    }
    VertexPath(path)
}

pub fn is_isometric(d: &DistanceMatrix, p: &VertexPath) -> bool {
    let vs = p.vertices();
    let n = d.vertex_count();
    if vs.is_empty() || vs.iter().any(|&v| v >= n) {
        return false;
    }
    vs.windows(2).all(|w| d.get(w[0], w[1]) == 1)
        && d.get(vs[0], vs[vs.len() - 1]) as usize == vs.len() - 1
}

/// `shortest_path(r, a)` followed by `shortest_path(a, b)`; requires `a` to lie
/// on a geodesic from `r` to `b`.
pub fn path_through(
    g: &Graph,
    d: &DistanceMatrix,
    r: Vertex,
    a: Vertex,
    b: Vertex,
) -> Result<VertexPath> {
    if d.get(r, a) + d.get(a, b) != d.get(r, b) {
        return Err(Error::invalid_argument(format!(
            "vertex {a} is not on a geodesic from {r} to {b}"
        )));
    }
    let mut path = shortest_path(g, d, r, a).0;
    path.extend_from_slice(&shortest_path(g, d, a, b).0[1..]);
    Ok(VertexPath(path))
}

/// Is there an isometric path ending at `r` within `radius` of both `u` and
/// `w`? Checks every witness pair from the two balls.
pub fn exists_covering_rpath(
    d: &DistanceMatrix,
    r: Vertex,
    u: Vertex,
    w: Vertex,
    radius: u32,
) -> bool {
    let dr = d.row(r);
    let mut near_u = d.ball(u, radius);
    near_u.sort_by_key(|&a| dr[a]);
    let near_w = d.ball(w, radius);
    near_u.iter().any(|&a| {
        let da = d.row(a);
        near_w.iter().any(|&b| {
            let ab = da[b];
            dr[a] + ab == dr[b] || dr[b] + ab == dr[a]
        })
    })
}

/// For every vertex `u`, whether [`exists_covering_rpath`]`(r, u, w, radius)`
/// holds. Runs in `O(n + m)` given the distance matrix.
pub fn rpath_neighbourhood(
    g: &Graph,
    d: &DistanceMatrix,
    r: Vertex,
    w: Vertex,
    radius: u32,
) -> Vec<bool> {
    let n = g.vertex_count();
    let dr = d.row(r);
    let seeds = d.ball(w, radius);

    let mut on_geodesic = vec![false; n];
    let mut stack = Vec::with_capacity(n);
    // Down: walk towards r.
    let mut seen = vec![false; n];
    for &b in &seeds {
        seen[b] = true;
        stack.push(b);
    }
    while let Some(x) = stack.pop() {
        on_geodesic[x] = true;
        for &y in g.neighbors(x) {
            if !seen[y] && dr[y] + 1 == dr[x] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    // Up: walk away from r.
    seen.iter_mut().for_each(|s| *s = false);
    for &b in &seeds {
        seen[b] = true;
        stack.push(b);
    }
    while let Some(x) = stack.pop() {
        on_geodesic[x] = true;
        for &y in g.neighbors(x) {
            if !seen[y] && dr[y] == dr[x] + 1 {
                seen[y] = true;
                stack.push(y);
            }
        }
    }

    let mut dist = vec![UNREACHED; n];
    let mut queue = VecDeque::new();
    for v in (0..n).filter(|&v| on_geodesic[v]) {
        dist[v] = 0;
        queue.push_back(v);
    }
    while let Some(x) = queue.pop_front() {
        if dist[x] == radius {
            continue;
        }
        for &y in g.neighbors(x) {
            if dist[y] == UNREACHED {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist.into_iter().map(|x| x != UNREACHED).collect()
}

/// Distance from every vertex to the nearest vertex of the family.
pub fn distances_to_family(g: &Graph, paths: &[VertexPath]) -> Vec<u32> {
    multi_source_bfs(g, paths.iter().flat_map(|p| p.vertices().iter().copied()))
}

/// The least `R` for which the family is an `R`-cover.
pub fn family_eccentricity(g: &Graph, paths: &[VertexPath]) -> Result<u32> {
    if paths.iter().all(VertexPath::is_empty) {
        return Err(Error::invalid_argument("path family is empty"));
    }
    Ok(distances_to_family(g, paths).into_iter().max().unwrap_or(0))
}

/// All geodesics from `s` to `t` in lexicographic order; fails once more than
/// `cap` have been found.
pub fn enumerate_geodesics(
    g: &Graph,
    d: &DistanceMatrix,
    s: Vertex,
    t: Vertex,
    cap: usize,
) -> Result<Vec<VertexPath>> {
    fn walk(
        g: &Graph,
        dt: &[u32],
        t: Vertex,
        cap: usize,
        prefix: &mut Vec<Vertex>,
        out: &mut Vec<VertexPath>,
    ) -> Result<()> {
        let cur = *prefix.last().unwrap();
        if cur == t {
            if out.len() == cap {
                return Err(Error::CapExceeded {
                    what: "geodesic count",
                    cap: cap as u64,
                });
            }
            out.push(VertexPath(prefix.clone()));
            return Ok(());
        }
        for &w in g.neighbors(cur) {
            if dt[w] + 1 == dt[cur] {
                prefix.push(w);
                walk(g, dt, t, cap, prefix, out)?;
                prefix.pop();
            }
        }
        Ok(())
    }

    let mut out = Vec::new();
    let mut prefix = vec![s];
    walk(g, d.row(t), t, cap, &mut prefix, &mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle_graph, grid_graph, path_graph, random_connected, star_graph};
    use crate::metric::apsp;
    use proptest::prelude::*;

    fn p(v: &[Vertex]) -> VertexPath {
        VertexPath::new(v.to_vec())
    }

    /// Enumerates every r-path and tests the two distance conditions directly.
    fn covering_rpath_brute_force(
        g: &Graph,
        d: &DistanceMatrix,
        r: Vertex,
        u: Vertex,
        w: Vertex,
        radius: u32,
    ) -> bool {
        (0..g.vertex_count()).any(|x| {
            enumerate_geodesics(g, d, r, x, usize::MAX)
                .unwrap()
                .iter()
                .any(|path| {
                    let near = |v: Vertex| path.vertices().iter().any(|&a| d.get(v, a) <= radius);
                    near(u) && near(w)
                })
        })
    }

    #[test]
    fn shortest_path_examples() {
        let p5 = path_graph(5).unwrap();
        let d = apsp(&p5);
        assert_eq!(shortest_path(&p5, &d, 0, 4), p(&[0, 1, 2, 3, 4]));
        assert_eq!(shortest_path(&p5, &d, 3, 3), p(&[3]));
        let c4 = cycle_graph(4).unwrap();
        assert_eq!(shortest_path(&c4, &apsp(&c4), 0, 2), p(&[0, 1, 2]));
    }

    #[test]
    fn isometry_examples() {
        let d5 = apsp(&path_graph(5).unwrap());
        assert!(is_isometric(&d5, &p(&[0, 1, 2])));
        assert!(is_isometric(&d5, &p(&[4])));
        assert!(!is_isometric(&d5, &p(&[0, 2])));
        assert!(!is_isometric(&d5, &p(&[])));
        assert!(!is_isometric(&d5, &p(&[0, 9])));
        let d4 = apsp(&cycle_graph(4).unwrap());
        assert!(!is_isometric(&d4, &p(&[1, 0, 2])));
        assert!(!is_isometric(&d4, &p(&[0, 1, 2, 3])));
    }

    #[test]
    fn path_through_examples() {
        let p5 = path_graph(5).unwrap();
        let d = apsp(&p5);
        assert_eq!(path_through(&p5, &d, 0, 2, 4).unwrap(), p(&[0, 1, 2, 3, 4]));
        assert_eq!(path_through(&p5, &d, 3, 3, 3).unwrap(), p(&[3]));
        assert!(path_through(&p5, &d, 2, 0, 4).is_err());
        let star = star_graph(3).unwrap();
        assert_eq!(path_through(&star, &apsp(&star), 1, 0, 2).unwrap(), p(&[1, 0, 2]));
    }

    #[test]
    fn covering_rpath_examples() {
        let star = star_graph(3).unwrap();
        let d = apsp(&star);
        assert!(!covering_rpath_brute_force(&star, &d, 1, 2, 3, 0));
        assert!(covering_rpath_brute_force(&star, &d, 1, 2, 3, 1));
        assert!(!exists_covering_rpath(&d, 1, 2, 3, 0));
        assert!(exists_covering_rpath(&d, 1, 2, 3, 1));
        let p5 = path_graph(5).unwrap();
        assert!(exists_covering_rpath(&apsp(&p5), 0, 2, 4, 0));
    }

    #[test]
    fn family_eccentricity_examples() {
        let p5 = path_graph(5).unwrap();
        assert_eq!(family_eccentricity(&p5, &[p(&[0, 1, 2, 3, 4])]).unwrap(), 0);
        let star = star_graph(5).unwrap();
        assert_eq!(family_eccentricity(&star, &[p(&[1, 0, 2]), p(&[3, 0, 4])]).unwrap(), 1);
        let c8 = cycle_graph(8).unwrap();
        assert_eq!(family_eccentricity(&c8, &[p(&[0, 1, 2, 3, 4])]).unwrap(), 2);
        assert!(family_eccentricity(&c8, &[]).is_err());
    }

    #[test]
    fn geodesic_enumeration_examples() {
        let p5 = path_graph(5).unwrap();
        assert_eq!(enumerate_geodesics(&p5, &apsp(&p5), 0, 4, 10).unwrap().len(), 1);
        let c4 = cycle_graph(4).unwrap();
        assert_eq!(
            enumerate_geodesics(&c4, &apsp(&c4), 0, 2, 10).unwrap(),
            [p(&[0, 1, 2]), p(&[0, 3, 2])]
        );
        let grid = grid_graph(3, 3).unwrap();
        let d = apsp(&grid);
        let all = enumerate_geodesics(&grid, &d, 0, 8, 10).unwrap();
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|q| is_isometric(&d, q)));
        let err = enumerate_geodesics(&grid, &d, 0, 8, 5).unwrap_err();
        assert!(err.is_cap_exceeded());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..max_n, 0usize..12, any::<u64>()).prop_map(|(n, extra, seed)| {
            let m = (n - 1 + extra).min(n * (n - 1) / 2);
            random_connected(n, m, seed).unwrap()
        })
    }

    proptest! {
        #[test]
        fn shortest_paths_are_isometric(g in arb_graph(14)) {
            let d = apsp(&g);
            for u in 0..g.vertex_count() {
                for v in 0..g.vertex_count() {
                    let q = shortest_path(&g, &d, u, v);
                    prop_assert!(is_isometric(&d, &q));
                    prop_assert_eq!((q.first(), q.last()), (u, v));
                }
            }
        }

        #[test]
        fn path_through_is_isometric(g in arb_graph(14), picks in any::<(u16, u16)>()) {
            let d = apsp(&g);
            let n = g.vertex_count();
            let (r, b) = (picks.0 as usize % n, picks.1 as usize % n);
            for a in (0..n).filter(|&a| d.get(r, a) + d.get(a, b) == d.get(r, b)) {
                let q = path_through(&g, &d, r, a, b).unwrap();
                prop_assert!(is_isometric(&d, &q));
                prop_assert_eq!(q.length() as u32, d.get(r, b));
                prop_assert!(q.vertices().contains(&a) && q.has_end(r) && q.has_end(b));
            }
        }

        #[test]
        fn covering_tests_agree_with_enumeration(g in arb_graph(9)) {
            let d = apsp(&g);
            let n = g.vertex_count();
            for r in 0..n {
                for w in 0..n {
                    for radius in 0..=d.diameter() {
                        let sweep = rpath_neighbourhood(&g, &d, r, w, radius);
                        for (u, &swept) in sweep.iter().enumerate() {
                            let expected = covering_rpath_brute_force(&g, &d, r, u, w, radius);
                            prop_assert_eq!(exists_covering_rpath(&d, r, u, w, radius), expected);
                            prop_assert_eq!(swept, expected);
                        }
                    }
                }
            }
        }

        #[test]
        fn family_eccentricity_matches_double_loop(g in arb_graph(14), ends in prop::collection::vec(any::<(u16, u16)>(), 1..4)) {
            let d = apsp(&g);
            let n = g.vertex_count();
            let paths: Vec<_> = ends
                .iter()
                .map(|&(a, b)| shortest_path(&g, &d, a as usize % n, b as usize % n))
                .collect();
            let naive = (0..n)
                .map(|v| paths.iter().flat_map(|q| q.vertices()).map(|&a| d.get(v, a)).min().unwrap())
                .max()
                .unwrap();
            prop_assert_eq!(family_eccentricity(&g, &paths).unwrap(), naive);
        }
    }
}
