//! Additive approximation of k-geodesic centers on connected unweighted graphs.
//!
//! The solver picks `k` isometric paths minimising the largest distance from any
//! vertex to the family. It works in three stages:
//!
//! 1. [`rooted::cover_or_packing`] greedily builds either a cover of at most
//!    `2k - 1` isometric paths sharing an end-vertex, or a packing of `2k`
//!    vertices certifying that no such cover exists at the requested radius.
//! 2. [`rooted::best_root`] binary-searches the radius for every root and keeps
//!    the best one.
//! 3. [`pairing`] pairs up the end-vertices of the rooted cover through a
//!    shallow apex and [`solver::solve`] returns one geodesic per pair.
//!
//! On a graph whose geodesic triangles are `τ`-thin the result is within
//! `6τ + 1` of the optimum, and exact on trees. [`oracle`] holds an exhaustive
//! solver for small instances that the test-suites compare against.

pub mod bitset;
pub mod error;
pub mod generators;
pub mod geodesics;
pub mod graph;
pub mod hyperbolicity;
pub mod io;
pub mod matching;
pub mod metric;
pub mod oracle;
pub mod pairing;
pub mod rooted;
pub mod solver;

pub use error::{Error, Result};
pub use generators::{generate, subdivide, Family};
pub use geodesics::{
    enumerate_geodesics, exists_covering_rpath, family_eccentricity, is_isometric, path_through,
    shortest_path, VertexPath,
};
pub use graph::{Graph, Vertex};
pub use hyperbolicity::{four_point_delta, four_point_delta_with_cap, DEFAULT_DELTA_VERTEX_CAP};
pub use io::{load_graph, parse_graph, write_graph};
pub use metric::{apsp, gromov_product, DistanceMatrix, HalfInteger};
pub use oracle::{exact_optimum, OracleCaps, OracleResult};
pub use pairing::{min_gamma_pairing, find_shallow_pairing, Pairing, Profile};
pub use rooted::{best_root, cover_or_packing, verify_packing, RootedOutcome, RootedSolution};
pub use solver::{solve, solve_tree, SolveOptions, SolveResult};
