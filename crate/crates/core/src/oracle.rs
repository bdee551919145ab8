//! Exhaustive k-geodesic-center solver for small graphs, and checks of the
//! structural facts the approximation rests on.

use serde::{Serialize, Serializer};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::generators::subdivide;
use crate::geodesics::{enumerate_geodesics, family_eccentricity, shortest_path, VertexPath};
use crate::graph::{Graph, Vertex};
use crate::hyperbolicity::four_point_delta;
use crate::metric::{apsp, DistanceMatrix, HalfInteger};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCaps {
    /// Geodesics enumerated before deduplication.
    pub max_paths: usize,
    /// Mask unions performed by the combination search, over all radii.
    pub max_combinations: u64,
}

impl Default for OracleCaps {
    fn default() -> Self {
        Self {
            max_paths: 200_000,
            max_combinations: 100_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleStats {
    pub paths_enumerated: u64,
    /// Distinct vertex sets among the enumerated geodesics.
    pub distinct_paths: u64,
    pub combinations_tried: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub k: usize,
    /// `R*_k`.
    #[serde(rename = "radius")]
    pub optimum: u32,
    /// At most `k` isometric paths with eccentricity `optimum`. Fewer paths
    /// are returned when fewer suffice.
    #[serde(rename = "paths")]
    pub witness: Vec<VertexPath>,
    pub stats: OracleStats,
}

/// Every isometric path of `g` up to vertex set, single vertices included,
/// each represented by its first enumerated geodesic.
fn distinct_geodesics(
    g: &Graph,
    d: &DistanceMatrix,
    cap: usize,
    stats: &mut OracleStats,
) -> Result<Vec<(BitSet, VertexPath)>> {
    let n = g.vertex_count();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let mut push = |p: VertexPath, out: &mut Vec<(BitSet, VertexPath)>| {
        let mut set = BitSet::new(n);
        for &v in p.vertices() {
            set.insert(v);
        }
        if seen.insert(set.clone()) {
            out.push((set, p));
        }
    };
    for v in 0..n {
        push(VertexPath::single(v), &mut out);
    }
    stats.paths_enumerated = n as u64;
    for s in 0..n {
        for t in s + 1..n {
            let left = cap.saturating_sub(stats.paths_enumerated as usize);
            let paths = enumerate_geodesics(g, d, s, t, left.max(1)).map_err(|_| Error::CapExceeded {
                what: "geodesic count",
                cap: cap as u64,
            })?;
            stats.paths_enumerated += paths.len() as u64;
            if stats.paths_enumerated > cap as u64 {
                return Err(Error::CapExceeded {
                    what: "geodesic count",
                    cap: cap as u64,
                });
            }
            for p in paths {
                push(p, &mut out);
            }
        }
    }
    stats.distinct_paths = out.len() as u64;
    Ok(out)
}

/// Masks not contained in another one; among equal masks the first is kept.
/// Returned indices are ordered by descending size, then by position.
fn undominated(masks: &[BitSet]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..masks.len()).collect();
    let sizes: Vec<usize> = masks.iter().map(BitSet::count).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(sizes[i]), i));
    let mut kept: Vec<usize> = Vec::new();
    for i in order {
        if !kept.iter().any(|&j| masks[i].is_subset(&masks[j])) {
            kept.push(i);
        }
    }
    kept
}

struct CoverSearch<'a> {
    masks: &'a [BitSet],
    /// For each vertex, the usable masks containing it.
    containing: Vec<Vec<usize>>,
    full: BitSet,
    largest: usize,
    steps: u64,
    cap: u64,
}

impl CoverSearch<'_> {
    /// Branches on the smallest uncovered vertex.
    fn run(&mut self, covered: &BitSet, slots: usize, chosen: &mut Vec<usize>) -> Result<bool> {
        let Some(v) = self.full.first_missing_from(covered) else {
            return Ok(true);
        };
        if slots == 0 || self.full.count_missing_from(covered) > slots * self.largest {
            return Ok(false);
        }
        for idx in 0..self.containing[v].len() {
            let i = self.containing[v][idx];
            self.steps += 1;
            if self.steps > self.cap {
                return Err(Error::CapExceeded {
                    what: "oracle combinations",
                    cap: self.cap,
                });
            }
            let mut next = covered.clone();
            next.union_with(&self.masks[i]);
            chosen.push(i);
            if self.run(&next, slots - 1, chosen)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
}

/// The least `R` admitting `k` isometric paths whose `R`-neighbourhoods cover
/// `g`, with a witness family.
pub fn exact_optimum(g: &Graph, d: &DistanceMatrix, k: usize, caps: &OracleCaps) -> Result<OracleResult> {
    let n = g.vertex_count();
    if k == 0 || k > n {
        return Err(Error::invalid_argument(format!("k must lie in 1..={n}, got {k}")));
    }
    let mut stats = OracleStats::default();
    let paths = distinct_geodesics(g, d, caps.max_paths, &mut stats)?;
    let full = BitSet::full(n);

    for radius in 0..=d.diameter() {
        let masks: Vec<BitSet> = paths
            .iter()
            .map(|(_, p)| {
                let mut mask = BitSet::new(n);
                for x in 0..n {
                    if p.vertices().iter().any(|&v| d.get(x, v) <= radius) {
                        mask.insert(x);
                    }
                }
                mask
            })
            .collect();
        let usable = undominated(&masks);
        let mut containing = vec![Vec::new(); n];
        for &i in &usable {
            for v in masks[i].iter() {
                containing[v].push(i);
            }
        }
        let mut search = CoverSearch {
            largest: usable.first().map_or(0, |&i| masks[i].count()),
            masks: &masks,
            containing,
            full: full.clone(),
            steps: stats.combinations_tried,
            cap: caps.max_combinations,
        };
        let mut chosen = Vec::new();
        let found = search.run(&BitSet::new(n), k, &mut chosen)?;
        stats.combinations_tried = search.steps;
        if found {
            return Ok(OracleResult {
                k,
                optimum: radius,
                witness: chosen.into_iter().map(|i| paths[i].1.clone()).collect(),
                stats,
            });
        }
    }
    unreachable!("a single vertex covers the graph at radius diam(g)")
}

fn serialize_doubled<S: Serializer>(h: &HalfInteger, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(h.doubled())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RootEccentricity {
    pub root: Vertex,
    pub eccentricity: u32,
}

/// Re-rooting an optimal cover at one of its end-vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootedRelaxationReport {
    pub optimum: u32,
    #[serde(rename = "tau_hat_doubled", serialize_with = "serialize_doubled")]
    pub tau_hat: HalfInteger,
    pub witness: Vec<VertexPath>,
    pub roots: Vec<RootEccentricity>,
    /// Largest rooted eccentricity minus the optimum; may be negative.
    pub slack: i64,
    /// Every rooted family stays within `optimum + tau_hat`.
    pub holds: bool,
}

/// For every end-vertex `r` of an optimal witness, joins `r` to all the other
/// end-vertices by geodesics and measures the eccentricity of the result
/// against `R* + τ̂`, with `τ̂ = 4δ`.
pub fn check_rooted_relaxation(
    g: &Graph,
    d: &DistanceMatrix,
    k: usize,
    caps: &OracleCaps,
) -> Result<RootedRelaxationReport> {
    let tau_hat = four_point_delta(d)? * 4;
    let exact = exact_optimum(g, d, k, caps)?;
    let mut ends: Vec<Vertex> = exact
        .witness
        .iter()
        .flat_map(|p| [p.first(), p.last()])
        .collect();
    ends.sort_unstable();
    ends.dedup();

    let mut roots = Vec::with_capacity(ends.len());
    for &r in &ends {
        let mut family: Vec<VertexPath> = ends
            .iter()
            .filter(|&&x| x != r)
            .map(|&x| shortest_path(g, d, r, x))
            .collect();
        if family.is_empty() {
            family.push(VertexPath::single(r));
        }
        roots.push(RootEccentricity {
            root: r,
            eccentricity: family_eccentricity(g, &family)?,
        });
    }
    let worst = roots.iter().map(|r| r.eccentricity).max().unwrap_or(0);
    let limit = HalfInteger::from_integer(exact.optimum.into()) + tau_hat;
    Ok(RootedRelaxationReport {
        optimum: exact.optimum,
        tau_hat,
        witness: exact.witness,
        roots,
        slack: i64::from(worst) - i64::from(exact.optimum),
        holds: HalfInteger::from_integer(worst.into()) <= limit,
    })
}

/// A vertex closer to a subdivided geodesic than the contraction bound allows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionFailure {
    pub from: Vertex,
    pub to: Vertex,
    pub w: Vertex,
    pub r: u32,
    pub original_distance: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubdivisionReport {
    pub ell: usize,
    pub k: usize,
    pub optimum: u32,
    pub subdivided_optimum: u32,
    /// `optimum · ℓ + ⌊ℓ/2⌋`.
    pub bound: u32,
    /// `bound - subdivided_optimum`; negative when the inequality fails.
    pub slack: i64,
    pub contraction_checks: u64,
    pub contraction_failures: Vec<ContractionFailure>,
}

impl SubdivisionReport {
    pub fn holds(&self) -> bool {
        self.slack >= 0 && self.contraction_failures.is_empty()
    }
}

/// Compares optima of `g` and its `ℓ`-subdivision `H`, and checks that
/// geodesics of `H` between original vertices do not bring original vertices
/// closer than their contraction in `g`: if `d_H(w, P) < (r + 1)ℓ` for a
/// positive integer `r`, then `d_G(w, G(P)) ≤ r`.
///
/// The contraction check runs over one geodesic of `H` per pair of original
/// vertices and every original `w`, using the smallest admissible `r`.
pub fn check_subdivision_lemma(
    g: &Graph,
    d: &DistanceMatrix,
    k: usize,
    ell: usize,
    caps: &OracleCaps,
) -> Result<SubdivisionReport> {
    let n = g.vertex_count();
    let h = subdivide(g, ell)?;
    let dh = apsp(&h);
    let optimum = exact_optimum(g, d, k, caps)?.optimum;
    let subdivided_optimum = exact_optimum(&h, &dh, k, caps)?.optimum;
    let bound = optimum * ell as u32 + ell as u32 / 2;

    let mut checks = 0;
    let mut failures = Vec::new();
    for s in 0..n {
        for t in s..n {
            let p = shortest_path(&h, &dh, s, t);
            let originals: Vec<Vertex> = p.vertices().iter().copied().filter(|&v| v < n).collect();
            for w in 0..n {
                let dist_h = p.vertices().iter().map(|&v| dh.get(w, v)).min().unwrap();
                let r = (dist_h / ell as u32).max(1);
                let dist_g = originals.iter().map(|&v| d.get(w, v)).min().unwrap();
                checks += 1;
                if dist_g > r {
                    failures.push(ContractionFailure {
                        from: s,
                        to: t,
                        w,
                        r,
                        original_distance: dist_g,
                    });
                }
            }
        }
    }
    Ok(SubdivisionReport {
        ell,
        k,
        optimum,
        subdivided_optimum,
        bound,
        slack: i64::from(bound) - i64::from(subdivided_optimum),
        contraction_checks: checks,
        contraction_failures: failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle_graph, grid_graph, path_graph, random_connected, random_tree, star_graph};
    use crate::geodesics::is_isometric;
    use proptest::prelude::*;

    fn optimum(g: &Graph, k: usize) -> OracleResult {
        exact_optimum(g, &apsp(g), k, &OracleCaps::default()).unwrap()
    }

    /// Tries every k-multiset of geodesics with explicit endpoints.
    fn naive_optimum(g: &Graph, k: usize) -> u32 {
        let d = apsp(g);
        let n = g.vertex_count();
        let mut all = Vec::new();
        for s in 0..n {
            for t in s..n {
                all.extend(enumerate_geodesics(g, &d, s, t, 10_000).unwrap());
            }
        }
        fn rec(g: &Graph, all: &[VertexPath], start: usize, k: usize, acc: &mut Vec<VertexPath>, best: &mut u32) {
            if !acc.is_empty() {
                *best = (*best).min(family_eccentricity(g, acc).unwrap());
            }
            if acc.len() == k {
                return;
            }
            for i in start..all.len() {
                acc.push(all[i].clone());
                rec(g, all, i, k, acc, best);
                acc.pop();
            }
        }
        let mut best = u32::MAX;
        rec(g, &all, 0, k, &mut Vec::new(), &mut best);
        best
    }

    #[test]
    fn known_optima() {
        assert_eq!(optimum(&path_graph(5).unwrap(), 1).optimum, 0);
        assert_eq!(optimum(&star_graph(5).unwrap(), 2).optimum, 1);
        assert_eq!(optimum(&star_graph(4).unwrap(), 2).optimum, 0);
        assert_eq!(optimum(&cycle_graph(8).unwrap(), 1).optimum, 2);
        assert_eq!(optimum(&grid_graph(3, 3).unwrap(), 1).optimum, 1);
    }

    #[test]
    fn single_vertex_graph() {
        let g = Graph::from_edges(1, []).unwrap();
        let res = optimum(&g, 1);
        assert_eq!(res.optimum, 0);
        assert_eq!(res.witness, [VertexPath::single(0)]);
    }

    #[test]
    fn caps_are_enforced() {
        let g = grid_graph(4, 4).unwrap();
        let d = apsp(&g);
        let tight = OracleCaps { max_paths: 50, ..OracleCaps::default() };
        assert!(exact_optimum(&g, &d, 1, &tight).unwrap_err().is_cap_exceeded());
        let tight = OracleCaps { max_combinations: 3, ..OracleCaps::default() };
        assert!(exact_optimum(&g, &d, 2, &tight).unwrap_err().is_cap_exceeded());
        assert!(exact_optimum(&g, &d, 0, &OracleCaps::default()).is_err());
    }

    #[test]
    fn duplicate_vertex_sets_collapse() {
        // In C4 each antipodal pair has two geodesics with different vertex sets,
        // while the reversed orientation is never listed twice.
        let g = cycle_graph(4).unwrap();
        let mut stats = OracleStats::default();
        let paths = distinct_geodesics(&g, &apsp(&g), 1000, &mut stats).unwrap();
        // 4 singles, 4 edges, 4 two-edge paths.
        assert_eq!(paths.len(), 12);
        assert_eq!(stats.paths_enumerated, 12);
        // A path with a chord-free triangle-free shape still has one mask per set.
        let g = grid_graph(2, 3).unwrap();
        let d = apsp(&g);
        let mut stats = OracleStats::default();
        let paths = distinct_geodesics(&g, &d, 1000, &mut stats).unwrap();
        let mut sets: Vec<_> = paths.iter().map(|(s, _)| s.clone()).collect();
        sets.sort();
        sets.dedup();
        assert_eq!(sets.len(), paths.len());
        assert!(paths.iter().all(|(_, p)| is_isometric(&d, p)));
    }

    #[test]
    fn json_mirrors_solver_output() {
        let res = optimum(&path_graph(3).unwrap(), 1);
        let json = serde_json::to_string(&res).unwrap();
        assert!(json.starts_with(r#"{"k":1,"radius":0,"paths":[[0,1,2]],"stats":{"#), "{json}");
    }

    #[test]
    fn rooted_relaxation_examples() {
        for g in [star_graph(5).unwrap(), grid_graph(3, 3).unwrap(), random_tree(12, 4).unwrap()] {
            let d = apsp(&g);
            for k in 1..=2 {
                let rep = check_rooted_relaxation(&g, &d, k, &OracleCaps::default()).unwrap();
                assert!(rep.holds, "{rep:?}");
                if g.is_tree() {
                    assert!(rep.slack <= 0);
                }
            }
        }
    }

    #[test]
    fn subdivision_examples() {
        let caps = OracleCaps::default();
        let g = path_graph(3).unwrap();
        let rep = check_subdivision_lemma(&g, &apsp(&g), 1, 2, &caps).unwrap();
        assert_eq!((rep.optimum, rep.subdivided_optimum, rep.bound), (0, 0, 1));
        assert!(rep.holds());

        let g = star_graph(5).unwrap();
        let rep = check_subdivision_lemma(&g, &apsp(&g), 2, 2, &caps).unwrap();
        assert_eq!(rep.bound, 3);
        assert!(rep.subdivided_optimum <= 3);
        assert!(rep.holds());

        let g = cycle_graph(4).unwrap();
        let rep = check_subdivision_lemma(&g, &apsp(&g), 1, 3, &caps).unwrap();
        assert!(rep.holds(), "{rep:?}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn matches_naive_search(n in 1usize..8, extra in 0usize..6, seed in any::<u64>(), k in 1usize..3) {
            let m = (n - 1 + extra).min(n * (n - 1) / 2);
            let g = random_connected(n, m, seed).unwrap();
            let k = k.min(n);
            let res = optimum(&g, k);
            prop_assert_eq!(res.optimum, naive_optimum(&g, k));
            prop_assert!(res.witness.len() <= k);
            prop_assert_eq!(family_eccentricity(&g, &res.witness).unwrap(), res.optimum);
        }

        #[test]
        fn monotone_in_k(n in 2usize..12, seed in any::<u64>()) {
            let g = random_tree(n, seed).unwrap();
            let one = optimum(&g, 1).optimum;
            let two = optimum(&g, 2).optimum;
            prop_assert!(two <= one);
        }
    }
}
