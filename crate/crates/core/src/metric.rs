//! The hop metric of a graph and exact half-integer arithmetic on it.

use std::collections::VecDeque;
use std::fmt;
use std::ops::{Add, Mul};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};

pub const UNREACHED: u32 = u32::MAX;

/// A non-negative multiple of one half, stored as twice its value.
///
/// Gromov products, hyperbolicity constants and shallowness thresholds all
/// live on the half-integer lattice of an unweighted graph, so comparisons
/// against them stay exact.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct HalfInteger {
    doubled: u64,
}

impl HalfInteger {
    pub const ZERO: Self = Self { doubled: 0 };
    pub const HALF: Self = Self { doubled: 1 };
    pub const ONE: Self = Self { doubled: 2 };

    pub const fn from_doubled(doubled: u64) -> Self {
        Self { doubled }
    }

    pub const fn from_integer(value: u64) -> Self {
        Self { doubled: 2 * value }
    }

    pub const fn doubled(self) -> u64 {
        self.doubled
    }

    pub const fn floor(self) -> u64 {
        self.doubled / 2
    }

    pub const fn ceil(self) -> u64 {
        self.doubled.div_ceil(2)
    }

    pub const fn is_integer(self) -> bool {
        self.doubled.is_multiple_of(2)
    }
}

impl Add for HalfInteger {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::from_doubled(self.doubled + rhs.doubled)
    }
}

impl Mul<u64> for HalfInteger {
    type Output = Self;

    fn mul(self, rhs: u64) -> Self {
        Self::from_doubled(self.doubled * rhs)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.floor())
        } else {
            write!(f, "{}.5", self.floor())
        }
    }
}

/// All-pairs hop distances, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        self.dist[u * self.n + v]
    }

    #[inline]
    pub fn row(&self, u: Vertex) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn eccentricity(&self, u: Vertex) -> u32 {
        self.row(u).iter().copied().max().unwrap_or(0)
    }

    pub fn diameter(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0)
    }

    /// Vertices within `radius` of `center`, in id order.
    pub fn ball(&self, center: Vertex, radius: u32) -> Vec<Vertex> {
        self.row(center)
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d <= radius)
            .map(|(v, _)| v)
            .collect()
    }
}

/// One BFS per source, run in parallel over sources.
pub fn apsp(g: &Graph) -> DistanceMatrix {
    let n = g.vertex_count();
    let mut dist = vec![UNREACHED; n * n];
    dist.par_chunks_mut(n).enumerate().for_each_init(
        || VecDeque::with_capacity(n),
        |queue, (source, row)| bfs_into(g, [source], row, queue),
    );
    DistanceMatrix { n, dist }
}

/// Distance from every vertex to the nearest of `sources`.
pub fn multi_source_bfs<I>(g: &Graph, sources: I) -> Vec<u32>
where
    I: IntoIterator<Item = Vertex>,
{
    let mut dist = vec![UNREACHED; g.vertex_count()];
    bfs_into(g, sources, &mut dist, &mut VecDeque::new());
    dist
}

fn bfs_into<I>(g: &Graph, sources: I, dist: &mut [u32], queue: &mut VecDeque<Vertex>)
where
    I: IntoIterator<Item = Vertex>,
{
    queue.clear();
    for s in sources {
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        let next = dist[v] + 1;
        for &w in g.neighbors(v) {
            if dist[w] == UNREACHED {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
}

/// `(x|y)_z = (d(x,z) + d(z,y) - d(x,y)) / 2`.
#[inline]
pub fn gromov_product(d: &DistanceMatrix, x: Vertex, y: Vertex, z: Vertex) -> HalfInteger {
    let doubled = d.get(x, z) + d.get(z, y) - d.get(x, y);
    HalfInteger::from_doubled(u64::from(doubled))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle_graph, grid_graph, path_graph, random_connected, star_graph};
    use proptest::prelude::*;

    #[test]
    fn half_integer_arithmetic() {
        let h = HalfInteger::from_doubled(5);
        assert_eq!((h.floor(), h.ceil()), (2, 3));
        assert_eq!(h.to_string(), "2.5");
        assert_eq!(HalfInteger::from_integer(3).to_string(), "3");
        assert_eq!(h + HalfInteger::HALF, HalfInteger::from_integer(3));
        assert_eq!(h * 2, HalfInteger::from_integer(5));
        assert!(HalfInteger::HALF < HalfInteger::ONE);
    }

    #[test]
    fn small_distances() {
        let p3 = apsp(&path_graph(3).unwrap());
        assert_eq!(p3.get(0, 2), 2);
        let c4 = apsp(&cycle_graph(4).unwrap());
        assert_eq!((c4.get(0, 2), c4.get(0, 1)), (2, 1));
        let grid = apsp(&grid_graph(3, 3).unwrap());
        assert_eq!(grid.get(0, 8), 4);
        assert_eq!(grid.diameter(), 4);
        assert_eq!(grid.eccentricity(4), 2);
        assert_eq!(grid.ball(4, 1), [1, 3, 4, 5, 7]);
    }

    #[test]
    fn gromov_product_examples() {
        let p3 = apsp(&path_graph(3).unwrap());
        assert_eq!(gromov_product(&p3, 0, 2, 1), HalfInteger::ZERO);
        assert_eq!(gromov_product(&p3, 0, 1, 2), HalfInteger::ONE);
        let star = apsp(&star_graph(3).unwrap());
        assert_eq!(gromov_product(&star, 1, 2, 0), HalfInteger::ZERO);
        let c3 = apsp(&cycle_graph(3).unwrap());
        assert_eq!(gromov_product(&c3, 1, 2, 0), HalfInteger::HALF);
    }

    #[test]
    fn multi_source_levels() {
        let g = path_graph(6).unwrap();
        assert_eq!(multi_source_bfs(&g, [0, 5]), [0, 1, 2, 2, 1, 0]);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..16, 0usize..20, any::<u64>()).prop_map(|(n, extra, seed)| {
            let m = (n - 1 + extra).min(n * (n - 1) / 2);
            random_connected(n, m, seed).unwrap()
        })
    }

    proptest! {
        #[test]
        fn distances_form_the_graph_metric(g in arb_graph()) {
            let d = apsp(&g);
            let n = g.vertex_count();
            for u in 0..n {
                prop_assert_eq!(d.get(u, u), 0);
                for v in 0..n {
                    prop_assert_eq!(d.get(u, v), d.get(v, u));
                    prop_assert_eq!(d.get(u, v) == 1, g.has_edge(u, v));
                    for w in 0..n {
                        prop_assert!(d.get(u, w) <= d.get(u, v) + d.get(v, w));
                    }
                }
            }
        }

        #[test]
        fn gromov_products_split_the_opposite_side(g in arb_graph()) {
            let d = apsp(&g);
            let n = g.vertex_count();
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let sum = gromov_product(&d, x, y, z) + gromov_product(&d, x, z, y);
                        prop_assert_eq!(sum, HalfInteger::from_integer(d.get(y, z).into()));
                    }
                }
            }
        }
    }
}
