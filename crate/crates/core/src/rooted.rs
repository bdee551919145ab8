//! Rooted covers: all paths share one end-vertex, the root.
//!
//! [`cover_or_packing`] is a primal-dual greedy. For a root `r` and radius `R`
//! it returns either at most `2k - 1` isometric `r`-paths covering the graph
//! up to thinness slack, or `2k` vertices no single `r`-path can bring within
//! `R` of two at a time. A packing at `R` is also a packing at every smaller
//! radius, which is what makes the per-root binary search in
//! [`min_radius_for_root`] sound without assuming the greedy is monotone.

use std::sync::atomic::{AtomicU32, Ordering};

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geodesics::{exists_covering_rpath, rpath_neighbourhood, shortest_path, VertexPath};
use crate::graph::{Graph, Vertex};
use crate::metric::DistanceMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootedOutcome {
    /// At most `2k - 1` isometric paths, each starting at the root.
    Cover(Vec<VertexPath>),
    /// Exactly `2k` vertices, in the order they were picked.
    Packing(Vec<Vertex>),
}

impl RootedOutcome {
    pub fn is_cover(&self) -> bool {
        matches!(self, RootedOutcome::Cover(_))
    }
}

/// One run of the greedy for root `r` at `radius`.
///
/// Repeatedly takes the uncovered vertex farthest from `r` (smallest id on
/// ties), records the geodesic to it, and discards every vertex that some
/// `r`-path could bring within `radius` of it together with the pick. After
/// `2k` picks the picks are returned as a packing, even if nothing is left to
/// cover, so a cover never has more than `2k - 1` paths.
pub fn cover_or_packing(
    g: &Graph,
    d: &DistanceMatrix,
    r: Vertex,
    radius: u32,
    k: usize,
) -> RootedOutcome {
    let n = g.vertex_count();
    let dr = d.row(r);
    let mut alive = vec![true; n];
    let mut remaining = n;
    let mut picks = Vec::with_capacity(2 * k);
    let mut cover = Vec::with_capacity(2 * k);

    while remaining > 0 {
        let pick = (0..n)
            .filter(|&v| alive[v])
            .max_by(|&a, &b| dr[a].cmp(&dr[b]).then(b.cmp(&a)))
            .unwrap();
        let reach = rpath_neighbourhood(g, d, r, pick, radius);
        for v in 0..n {
            if alive[v] && reach[v] {
                alive[v] = false;
                remaining -= 1;
            }
        }
        debug_assert!(!alive[pick]);
        picks.push(pick);
        if picks.len() == 2 * k {
            return RootedOutcome::Packing(picks);
        }
        cover.push(shortest_path(g, d, r, pick));
    }
    RootedOutcome::Cover(cover)
}

/// True iff `set` has no repeats and no `r`-path comes within `radius` of two
/// of its members.
pub fn verify_packing(d: &DistanceMatrix, r: Vertex, radius: u32, set: &[Vertex]) -> bool {
    let n = d.vertex_count();
    if r >= n || set.iter().any(|&v| v >= n) {
        return false;
    }
    let mut members = set.to_vec();
    members.sort_unstable();
    members.dedup();
    if members.len() != set.len() {
        return false;
    }
    members.iter().enumerate().all(|(i, &x)| {
        members[i + 1..]
            .iter()
            .all(|&y| !exists_covering_rpath(d, r, x, y, radius))
    })
}

/// Packing that certifies no rooted cover of size `2k - 1` exists at `radius`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingWitness {
    #[serde(rename = "R")]
    pub radius: u32,
    pub vertices: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSearch {
    pub radius: u32,
    pub cover: Vec<VertexPath>,
    /// Packing at `radius - 1`; absent when `radius == 0`.
    pub packing_witness: Option<PackingWitness>,
}

/// Binary search for the smallest radius at which the greedy covers from `r`.
///
/// The bracket starts at `(-1, ecc(r)]`: at the eccentricity of `r` the first
/// geodesic already covers every vertex.
pub fn min_radius_for_root(g: &Graph, d: &DistanceMatrix, r: Vertex, k: usize) -> RootSearch {
    search_root(g, d, r, k, None).expect("unpruned search always completes")
}

fn search_root(
    g: &Graph,
    d: &DistanceMatrix,
    r: Vertex,
    k: usize,
    incumbent: Option<&AtomicU32>,
) -> Option<RootSearch> {
    let mut lo: i64 = -1;
    let mut hi = i64::from(d.eccentricity(r));
    let mut cover_at_hi = None;
    let mut packing_at_lo = None;
    while hi - lo > 1 {
        if let Some(best) = incumbent {
            if lo >= i64::from(best.load(Ordering::Relaxed)) {
                return None;
            }
        }
        let mid = lo + (hi - lo) / 2;
        match cover_or_packing(g, d, r, mid as u32, k) {
            RootedOutcome::Cover(c) => {
                hi = mid;
                cover_at_hi = Some(c);
            }
            RootedOutcome::Packing(p) => {
                lo = mid;
                packing_at_lo = Some(p);
            }
        }
    }
    let radius = hi as u32;
    let cover = match cover_at_hi {
        Some(c) => c,
        None => match cover_or_packing(g, d, r, radius, k) {
            RootedOutcome::Cover(c) => c,
            RootedOutcome::Packing(_) => unreachable!("eccentricity radius always covers"),
        },
    };
    Some(RootSearch {
        radius,
        cover,
        packing_witness: packing_at_lo.map(|vertices| PackingWitness {
            radius: lo as u32,
            vertices,
        }),
    })
}

/// Greedy outcome at every radius `0..=ecc(r)`, `true` for a cover.
pub fn scan_root(g: &Graph, d: &DistanceMatrix, r: Vertex, k: usize) -> Vec<bool> {
    (0..=d.eccentricity(r))
        .map(|radius| cover_or_packing(g, d, r, radius, k).is_cover())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootedOptions {
    /// Abandon a root once its search can no longer beat the best radius so far.
    pub prune: bool,
    /// Also scan every radius for every root and log non-monotone greedy runs.
    pub check_monotonicity: bool,
}

impl Default for RootedOptions {
    fn default() -> Self {
        Self {
            prune: true,
            check_monotonicity: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedSolution {
    pub root: Vertex,
    #[serde(rename = "R")]
    pub radius: u32,
    pub cover: Vec<VertexPath>,
    pub packing_witness: Option<PackingWitness>,
}

pub fn best_root(g: &Graph, d: &DistanceMatrix, k: usize) -> Result<RootedSolution> {
    best_root_with(g, d, k, &RootedOptions::default())
}

/// Runs the per-root search for every vertex in parallel and keeps the
/// smallest radius, preferring the smallest root id on ties.
pub fn best_root_with(
    g: &Graph,
    d: &DistanceMatrix,
    k: usize,
    opts: &RootedOptions,
) -> Result<RootedSolution> {
    let n = g.vertex_count();
    if k == 0 || k > n {
        return Err(Error::invalid_argument(format!("k must lie in 1..={n}, got {k}")));
    }
    let incumbent = AtomicU32::new(u32::MAX);
    let best = (0..n)
        .into_par_iter()
        .filter_map(|r| {
            let found = search_root(g, d, r, k, opts.prune.then_some(&incumbent))?;
            incumbent.fetch_min(found.radius, Ordering::Relaxed);
            if opts.check_monotonicity {
                report_non_monotone(g, d, r, k, found.radius);
            }
            Some((r, found))
        })
        .min_by_key(|(r, found)| (found.radius, *r))
        .expect("at least one root completes its search");

    let (root, found) = best;
    Ok(RootedSolution {
        root,
        radius: found.radius,
        cover: found.cover,
        packing_witness: found.packing_witness,
    })
}

fn report_non_monotone(g: &Graph, d: &DistanceMatrix, r: Vertex, k: usize, searched: u32) {
    let outcomes = scan_root(g, d, r, k);
    let first_cover = outcomes.iter().position(|&c| c).unwrap_or(outcomes.len());
    if outcomes[first_cover..].iter().any(|&c| !c) {
        warn!("root {r}: greedy is not monotone in the radius: {outcomes:?}");
    }
    if first_cover as u32 != searched {
        warn!("root {r}: binary search found {searched}, linear scan found {first_cover}");
    }
}
