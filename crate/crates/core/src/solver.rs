//! The full pipeline: best rooted cover, shallow pairing of its end-vertices,
//! one geodesic per pair.
//!
//! With `τ̂` an upper bound on the thinness of the graph, the best rooted
//! cover has radius `R_u` and eccentricity at most `R_u + 2τ̂`, and no `k`
//! paths reach below `R_u - τ̂`. Pairing the `2k` end-vertices at depth
//! `γ <= 2τ̂ + ½` costs at most `3τ̂ + 1` more, so the returned family has
//! eccentricity at most `R_u + 5τ̂ + 1`.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geodesics::{family_eccentricity, VertexPath};
use crate::graph::{Graph, Vertex};
use crate::hyperbolicity::{four_point_delta_with_cap, DEFAULT_DELTA_VERTEX_CAP};
use crate::metric::{apsp, DistanceMatrix, HalfInteger};
use crate::pairing::{find_shallow_pairing, min_gamma_pairing, paths_of_pairing, Pairing, Profile};
use crate::rooted::{best_root_with, RootedOptions, RootedSolution};

/// Where the thinness bound `τ̂` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauMode {
    /// `4 · δ` from the four-point condition, refusing graphs above the cap.
    ///
    /// `δ` is measured on vertices only, which can undershoot the thinness of
    /// graphs with odd cycles: a triangle has `δ = 0` but is 1-thin. Supply
    /// the thinness directly when it is known.
    Compute { vertex_cap: usize },
    Supplied(HalfInteger),
    /// No bound; certificates are left out of the result.
    Skip,
}

impl Default for TauMode {
    fn default() -> Self {
        TauMode::Compute {
            vertex_cap: DEFAULT_DELTA_VERTEX_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GammaMode {
    /// Shallowest pairing over all apexes.
    #[default]
    Auto,
    /// First apex admitting a `(2τ̂ + ½)`-shallow pairing.
    Threshold,
    Fixed(HalfInteger),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SolveOptions {
    pub tau: TauMode,
    pub gamma: GammaMode,
    pub rooted: RootedOptions,
    /// Fall back to the best `k` paths of the rooted cover when they beat the
    /// paired family. Results produced this way carry no certificate.
    pub best_effort: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TauSource {
    Computed,
    Supplied,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub tau_hat: HalfInteger,
    pub tau_source: TauSource,
    /// `max(0, ⌈R_u - τ̂⌉)`, a lower bound on the optimum.
    pub lower: u32,
    /// `⌊R_u + 5τ̂ + 1⌋`, the guaranteed ceiling on `radius`.
    pub upper: u32,
}

impl BoundReport {
    fn new(tau_hat: HalfInteger, tau_source: TauSource, rooted_radius: u32) -> Self {
        let r2 = 2 * u64::from(rooted_radius);
        let lower = r2.saturating_sub(tau_hat.doubled()).div_ceil(2) as u32;
        let upper = HalfInteger::from_doubled(r2 + 5 * tau_hat.doubled() + 2).floor() as u32;
        Self {
            tau_hat,
            tau_source,
            lower,
            upper,
        }
    }

    /// The largest pairing depth the guarantee covers: `2τ̂ + ½`.
    pub fn gamma_limit(&self) -> HalfInteger {
        self.tau_hat * 2 + HalfInteger::HALF
    }
}

impl Serialize for BoundReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("BoundReport", 4)?;
        s.serialize_field("tau_hat_doubled", &self.tau_hat.doubled())?;
        s.serialize_field("tau_source", &self.tau_source)?;
        s.serialize_field("lower", &self.lower)?;
        s.serialize_field("upper", &self.upper)?;
        s.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub k: usize,
    pub radius: u32,
    pub paths: Vec<VertexPath>,
    pub rooted: RootedSolution,
    pub pairing: Pairing,
    pub bounds: Option<BoundReport>,
    /// Set by [`solve_tree`]: the radius is the optimum.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub exact: bool,
    /// Set when `best_effort` replaced the paired family.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub best_effort: bool,
}

impl SolveResult {
    /// Whether the pairing depth is within the range the bounds assume.
    pub fn is_certified(&self) -> bool {
        !self.best_effort
            && self
                .bounds
                .is_some_and(|b| self.pairing.gamma <= b.gamma_limit() && self.radius <= b.upper)
    }
}

pub fn solve(g: &Graph, k: usize, opts: &SolveOptions) -> Result<SolveResult> {
    let d = apsp(g);
    solve_with_distances(g, &d, k, opts)
}

pub fn solve_with_distances(
    g: &Graph,
    d: &DistanceMatrix,
    k: usize,
    opts: &SolveOptions,
) -> Result<SolveResult> {
    let n = g.vertex_count();
    if k == 0 || k > n {
        return Err(Error::invalid_argument(format!("k must lie in 1..={n}, got {k}")));
    }
    let tau = match opts.tau {
        TauMode::Compute { vertex_cap } => {
            Some((four_point_delta_with_cap(d, vertex_cap)? * 4, TauSource::Computed))
        }
        TauMode::Supplied(t) => Some((t, TauSource::Supplied)),
        TauMode::Skip => None,
    };

    let rooted = best_root_with(g, d, k, &opts.rooted)?;
    let profile = rooted_profile(&rooted, k)?;

    let pairing = match opts.gamma {
        GammaMode::Auto => min_gamma_pairing(d, &profile),
        GammaMode::Threshold => {
            let (tau_hat, _) = tau.ok_or_else(|| {
                Error::invalid_argument("threshold pairing needs a thinness bound")
            })?;
            let gamma = tau_hat * 2 + HalfInteger::HALF;
            find_shallow_pairing(d, &profile, gamma).ok_or(Error::NoPairing(gamma))?
        }
        GammaMode::Fixed(gamma) => {
            find_shallow_pairing(d, &profile, gamma).ok_or(Error::NoPairing(gamma))?
        }
    };

    let mut paths = paths_of_pairing(g, d, &pairing);
    let mut radius = family_eccentricity(g, &paths)?;
    let mut best_effort = false;
    if opts.best_effort {
        let (alt, alt_radius) = best_subfamily(g, &rooted.cover, k)?;
        if alt_radius < radius {
            paths = alt;
            radius = alt_radius;
            best_effort = true;
        }
    }

    Ok(SolveResult {
        k,
        radius,
        paths,
        bounds: tau.map(|(t, source)| BoundReport::new(t, source, rooted.radius)),
        rooted,
        pairing,
        exact: false,
        best_effort,
    })
}

/// The root followed by the far end of every rooted path, padded with copies
/// of the root up to length `2k`.
fn rooted_profile(rooted: &RootedSolution, k: usize) -> Result<Profile> {
    let mut pi: Vec<Vertex> = Vec::with_capacity(2 * k);
    pi.push(rooted.root);
    pi.extend(rooted.cover.iter().map(|p| {
        if p.first() == rooted.root {
            p.last()
        } else {
            p.first()
        }
    }));
    debug_assert!(pi.len() <= 2 * k);
    pi.resize(2 * k, rooted.root);
    Profile::new(pi)
}

/// Greedily keeps up to `k` paths of the rooted cover, each time adding the
/// one that lowers the eccentricity most.
fn best_subfamily(g: &Graph, cover: &[VertexPath], k: usize) -> Result<(Vec<VertexPath>, u32)> {
    let mut chosen: Vec<VertexPath> = Vec::with_capacity(k);
    let mut left: Vec<&VertexPath> = cover.iter().collect();
    let mut radius = u32::MAX;
    while chosen.len() < k && !left.is_empty() {
        let (idx, r) = left
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let mut trial = chosen.clone();
                trial.push((*p).clone());
                (i, family_eccentricity(g, &trial).unwrap())
            })
            .min_by_key(|&(i, r)| (r, i))
            .unwrap();
        chosen.push(left.remove(idx).clone());
        radius = r;
    }
    Ok((chosen, radius))
}

/// [`solve`] restricted to trees, where the answer is optimal.
pub fn solve_tree(g: &Graph, k: usize) -> Result<SolveResult> {
    if !g.is_tree() {
        return Err(Error::invalid_argument(format!(
            "not a tree: {} vertices, {} edges",
            g.vertex_count(),
            g.edge_count()
        )));
    }
    let opts = SolveOptions {
        tau: TauMode::Supplied(HalfInteger::ZERO),
        ..SolveOptions::default()
    };
    let mut result = solve(g, k, &opts)?;
    debug_assert_eq!(result.radius, result.rooted.radius);
    result.exact = true;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle_graph, grid_graph, path_graph, random_connected, star_graph, subdivide};
    use crate::geodesics::is_isometric;
    use crate::rooted::verify_packing;
    use proptest::prelude::*;

    #[test]
    fn path_graph_is_its_own_center() {
        let g = path_graph(5).unwrap();
        let res = solve(&g, 1, &SolveOptions::default()).unwrap();
        assert_eq!(res.radius, 0);
        assert_eq!(res.paths, [VertexPath::new(vec![0, 1, 2, 3, 4])]);
        let tree = solve_tree(&g, 3).unwrap();
        assert_eq!(tree.radius, 0);
        assert!(tree.exact);
    }

    #[test]
    fn star_examples() {
        let g = star_graph(5).unwrap();
        let res = solve(&g, 2, &SolveOptions::default()).unwrap();
        assert_eq!(res.radius, 1);
        assert!(res.paths.len() <= 2);

        let g4 = star_graph(4).unwrap();
        let res = solve_tree(&g4, 2).unwrap();
        assert_eq!(res.radius, 0);
        assert_eq!(res.rooted.radius, 0);
    }

    #[test]
    fn spider_is_solved_exactly() {
        let g = subdivide(&star_graph(3).unwrap(), 2).unwrap();
        let res = solve_tree(&g, 1).unwrap();
        assert_eq!(res.radius, 2);
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = path_graph(5).unwrap();
        assert!(solve(&g, 0, &SolveOptions::default()).is_err());
        assert!(solve(&g, 6, &SolveOptions::default()).is_err());
        assert!(solve_tree(&cycle_graph(4).unwrap(), 1).is_err());
        let opts = SolveOptions { tau: TauMode::Skip, gamma: GammaMode::Threshold, ..Default::default() };
        assert!(solve(&g, 1, &opts).is_err());
    }

    #[test]
    fn delta_cap_is_reported() {
        let g = grid_graph(5, 5).unwrap();
        let opts = SolveOptions { tau: TauMode::Compute { vertex_cap: 10 }, ..Default::default() };
        assert!(solve(&g, 1, &opts).unwrap_err().is_cap_exceeded());
        let opts = SolveOptions { tau: TauMode::Skip, ..Default::default() };
        assert!(solve(&g, 1, &opts).unwrap().bounds.is_none());
    }

    #[test]
    fn fixed_gamma_may_fail() {
        let g = cycle_graph(8).unwrap();
        let opts = SolveOptions { gamma: GammaMode::Fixed(HalfInteger::ZERO), ..Default::default() };
        // Either a zero-depth pairing exists or the solver says so.
        match solve(&g, 2, &opts) {
            Ok(res) => assert_eq!(res.pairing.gamma, HalfInteger::ZERO),
            Err(e) => assert!(matches!(e, Error::NoPairing(_))),
        }
    }

    #[test]
    fn bounds_arithmetic() {
        let b = BoundReport::new(HalfInteger::from_doubled(3), TauSource::Supplied, 4);
        // lower = ceil(4 - 1.5) = 3, upper = floor(4 + 7.5 + 1) = 12.
        assert_eq!((b.lower, b.upper), (3, 12));
        let b = BoundReport::new(HalfInteger::from_integer(8), TauSource::Computed, 2);
        assert_eq!((b.lower, b.upper), (0, 43));
    }

    #[test]
    fn json_is_deterministic() {
        let g = random_connected(12, 18, 5).unwrap();
        let a = serde_json::to_string(&solve(&g, 2, &SolveOptions::default()).unwrap()).unwrap();
        let b = serde_json::to_string(&solve(&g, 2, &SolveOptions::default()).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains(r#""bounds":{"tau_hat_doubled":"#), "{a}");
    }

    #[test]
    fn best_effort_never_hurts() {
        for seed in 0..20 {
            let g = random_connected(12, 16, seed).unwrap();
            let plain = solve(&g, 2, &SolveOptions::default()).unwrap();
            let opts = SolveOptions { best_effort: true, ..Default::default() };
            let be = solve(&g, 2, &opts).unwrap();
            assert!(be.radius <= plain.radius);
            assert_eq!(be.best_effort, be.radius < plain.radius);
            assert!(be.paths.len() <= 2);
        }
    }

    proptest! {
        #[test]
        fn guarantee_chain(n in 1usize..16, extra in 0usize..12, seed in any::<u64>(), k in 1usize..4) {
            let m = (n - 1 + extra).min(n * (n - 1) / 2);
            let g = random_connected(n, m, seed).unwrap();
            let k = k.min(n);
            let res = solve(&g, k, &SolveOptions::default()).unwrap();
            let d = apsp(&g);
            prop_assert!(res.paths.len() <= k);
            prop_assert!(res.paths.iter().all(|p| is_isometric(&d, p)));
            prop_assert_eq!(res.radius, family_eccentricity(&g, &res.paths).unwrap());
            let bounds = res.bounds.unwrap();
            prop_assert!(res.pairing.gamma <= bounds.gamma_limit());
            prop_assert!(res.radius <= bounds.upper, "radius {} above {}", res.radius, bounds.upper);
            // Pairing adds at most 3τ̂ + 1 to the rooted cover's eccentricity.
            let rooted_ecc = family_eccentricity(&g, &res.rooted.cover).unwrap();
            let paired_limit = HalfInteger::from_integer(rooted_ecc.into()) + bounds.tau_hat * 3 + HalfInteger::ONE;
            prop_assert!(u64::from(res.radius) <= paired_limit.floor());
            if let Some(w) = &res.rooted.packing_witness {
                prop_assert!(verify_packing(&d, res.rooted.root, w.radius, &w.vertices));
            }
            prop_assert!(res.is_certified());
        }
    }
}
