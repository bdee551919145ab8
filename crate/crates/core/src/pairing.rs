//! Shallow pairings of even profiles.
//!
//! A pairing of a profile is `γ`-shallow when a single apex `v` satisfies
//! `(x|y)_v <= γ` for every pair `{x, y}`. For a fixed apex the admissible
//! pairs form the pairing graph over profile positions, and a shallow pairing
//! at that apex is exactly a perfect matching of it. Profiles are multisets:
//! two positions holding the same vertex `x` have product `(x|x)_v = d(x,v)`.

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geodesics::{shortest_path, VertexPath};
use crate::graph::{Graph, Vertex};
use crate::matching::lex_least_perfect_matching;
use crate::metric::{gromov_product, DistanceMatrix, HalfInteger};

/// An even-length sequence of vertices; repeats allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile(Vec<Vertex>);

impl Profile {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.len() < 2 || vertices.len() % 2 == 1 {
            return Err(Error::invalid_argument(format!(
                "profile length must be even and at least 2, got {}",
                vertices.len()
            )));
        }
        Ok(Self(vertices))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub apex: Vertex,
    pub gamma: HalfInteger,
    /// Pairs of profile entries, ordered by the position of their first entry.
    pub pairs: Vec<(Vertex, Vertex)>,
}

impl Pairing {
    /// Largest `(x|y)_apex` over the pairs.
    pub fn depth(&self, d: &DistanceMatrix) -> HalfInteger {
        self.pairs
            .iter()
            .map(|&(x, y)| gromov_product(d, x, y, self.apex))
            .max()
            .unwrap_or(HalfInteger::ZERO)
    }
}

impl Serialize for Pairing {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Pairing", 3)?;
        s.serialize_field("apex", &self.apex)?;
        s.serialize_field("gamma_doubled", &self.gamma.doubled())?;
        let pairs: Vec<[Vertex; 2]> = self.pairs.iter().map(|&(x, y)| [x, y]).collect();
        s.serialize_field("pairs", &pairs)?;
        s.end()
    }
}

/// Entries `y` of the profile with `(x|y)_u >= 2τ + 1`, excluding one
/// occurrence of `x` itself.
pub fn fiber(
    d: &DistanceMatrix,
    u: Vertex,
    x: Vertex,
    profile: &Profile,
    tau: HalfInteger,
) -> Vec<Vertex> {
    let threshold = tau * 2 + HalfInteger::ONE;
    let own = profile.vertices().iter().position(|&y| y == x);
    profile
        .vertices()
        .iter()
        .enumerate()
        .filter(|&(i, &y)| Some(i) != own && gromov_product(d, x, y, u) >= threshold)
        .map(|(_, &y)| y)
        .collect()
}

/// Adjacency over profile positions: `i ~ j` iff `(π_i|π_j)_apex <= gamma`.
pub fn pairing_graph(
    d: &DistanceMatrix,
    apex: Vertex,
    profile: &Profile,
    gamma: HalfInteger,
) -> Vec<Vec<usize>> {
    let pi = profile.vertices();
    let mut adj = vec![Vec::new(); pi.len()];
    for i in 0..pi.len() {
        for j in i + 1..pi.len() {
            if gromov_product(d, pi[i], pi[j], apex) <= gamma {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    adj
}

fn pairing_at(d: &DistanceMatrix, apex: Vertex, profile: &Profile, gamma: HalfInteger) -> Option<Pairing> {
    let adj = pairing_graph(d, apex, profile, gamma);
    if adj.iter().any(Vec::is_empty) {
        return None;
    }
    let matching = lex_least_perfect_matching(&adj)?;
    let pi = profile.vertices();
    Some(Pairing {
        apex,
        gamma,
        pairs: matching.into_iter().map(|(i, j)| (pi[i], pi[j])).collect(),
    })
}

/// The smallest-id apex admitting a `gamma`-shallow pairing, with the
/// lexicographically least such pairing over profile positions.
pub fn find_shallow_pairing(d: &DistanceMatrix, profile: &Profile, gamma: HalfInteger) -> Option<Pairing> {
    (0..d.vertex_count())
        .into_par_iter()
        .find_map_first(|apex| pairing_at(d, apex, profile, gamma))
}

/// Shallowest pairing over all apexes.
///
/// Equivalent to trying `γ = 0, ½, 1, …` with [`find_shallow_pairing`] and
/// keeping the first success. Admissibility only grows with `γ`, so each apex
/// has its own threshold `γ_v`; the answer is the smallest-id apex attaining
/// `min γ_v`, found here by per-apex binary search over the products at that
/// apex. An apex is skipped when some position has no partner within the
/// current best.
pub fn min_gamma_pairing(d: &DistanceMatrix, profile: &Profile) -> Pairing {
    let pi = profile.vertices();
    let len = pi.len();
    let mut best: Option<Pairing> = None;
    for apex in 0..d.vertex_count() {
        let mut products = Vec::with_capacity(len * (len - 1) / 2);
        let mut floor = HalfInteger::ZERO;
        for i in 0..len {
            let mut nearest = None;
            for j in 0..len {
                if i != j {
                    let p = gromov_product(d, pi[i], pi[j], apex);
                    nearest = Some(nearest.map_or(p, |q: HalfInteger| q.min(p)));
                    if j > i {
                        products.push(p);
                    }
                }
            }
            floor = floor.max(nearest.unwrap());
        }
        if best.as_ref().is_some_and(|b| floor >= b.gamma) {
            continue;
        }
        products.retain(|&p| p >= floor && best.as_ref().is_none_or(|b| p < b.gamma));
        products.sort_unstable();
        products.dedup();
        // The largest candidate must succeed for this apex to matter.
        let Some(top) = products.last().and_then(|&g| pairing_at(d, apex, profile, g)) else {
            continue;
        };
        let (mut lo, mut hi) = (0, products.len() - 1);
        let mut found = top;
        while lo < hi {
            let mid = (lo + hi) / 2;
            match pairing_at(d, apex, profile, products[mid]) {
                Some(p) => {
                    hi = mid;
                    found = p;
                }
                None => lo = mid + 1,
            }
        }
        best = Some(found);
        if best.as_ref().unwrap().gamma == HalfInteger::ZERO {
            break;
        }
    }
    best.expect("the complete pairing graph at the largest product always matches")
}

/// One geodesic per pair; a pair `{x, x}` gives the single-vertex path `[x]`.
pub fn paths_of_pairing(g: &Graph, d: &DistanceMatrix, pairing: &Pairing) -> Vec<VertexPath> {
    pairing
        .pairs
        .iter()
        .map(|&(x, y)| shortest_path(g, d, x, y))
        .collect()
}

/// `F_π(v) = Σ d(v, x)` over the profile.
pub fn total_distance(d: &DistanceMatrix, profile: &Profile, v: Vertex) -> u64 {
    profile.vertices().iter().map(|&x| u64::from(d.get(v, x))).sum()
}

/// `D_π(P) = Σ d(x, y)` over the pairs.
pub fn pairing_distance(d: &DistanceMatrix, pairs: &[(Vertex, Vertex)]) -> u64 {
    pairs.iter().map(|&(x, y)| u64::from(d.get(x, y))).sum()
}
