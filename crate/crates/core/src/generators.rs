//! Deterministic graph families and equal subdivisions.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// A reproducible graph family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Path { n: usize },
    Cycle { n: usize },
    /// `K_{1,leaves}` with center `0`.
    Star { leaves: usize },
    /// Vertex `(x, y)` has id `y * width + x`.
    Grid { width: usize, height: usize },
    /// Uniform labeled tree drawn through a Prüfer sequence.
    RandomTree { n: usize, seed: u64 },
    /// A random tree plus `m - n + 1` distinct random chords.
    RandomConnected { n: usize, m: usize, seed: u64 },
}

pub fn generate(family: &Family) -> Result<Graph> {
    match *family {
        Family::Path { n } => path_graph(n),
        Family::Cycle { n } => cycle_graph(n),
        Family::Star { leaves } => star_graph(leaves),
        Family::Grid { width, height } => grid_graph(width, height),
        Family::RandomTree { n, seed } => random_tree(n, seed),
        Family::RandomConnected { n, m, seed } => random_connected(n, m, seed),
    }
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn path_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid_argument("path needs at least one vertex"));
    }
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
}

pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid_argument("cycle needs at least three vertices"));
    }
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
}

pub fn star_graph(leaves: usize) -> Result<Graph> {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

pub fn grid_graph(width: usize, height: usize) -> Result<Graph> {
    if width == 0 || height == 0 {
        return Err(Error::invalid_argument("grid dimensions must be positive"));
    }
    let id = |x: usize, y: usize| y * width + x;
    let mut edges = Vec::with_capacity(2 * width * height);
    for y in 0..height {
        for x in 0..width {
            if x + 1 < width {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < height {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    Graph::from_edges(width * height, edges)
}

pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid_argument("tree needs at least one vertex"));
    }
    let mut rng = rng_for(seed);
    Graph::from_edges(n, prufer_tree(n, &mut rng))
}

fn prufer_tree<R: Rng>(n: usize, rng: &mut R) -> Vec<(Vertex, Vertex)> {
    match n {
        1 => return Vec::new(),
        2 => return vec![(0, 1)],
        _ => {}
    }
    let sequence: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &sequence {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<Vertex>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &sequence {
        let Reverse(leaf) = leaves.pop().expect("a Prüfer decode always has a leaf");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    edges
}

pub fn random_connected(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid_argument("graph needs at least one vertex"));
    }
    let max_edges = n * (n - 1) / 2;
    if m + 1 < n || m > max_edges {
        return Err(Error::invalid_argument(format!(
            "a connected simple graph on {n} vertices has between {} and {max_edges} edges, got {m}",
            n - 1
        )));
    }
    let mut rng = rng_for(seed);
    let mut edges = prufer_tree(n, &mut rng);
    let mut present = vec![false; n * n];
    for &(u, v) in &edges {
        present[u * n + v] = true;
        present[v * n + u] = true;
    }
    let mut chords: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !present[u * n + v])
        .collect();
    let wanted = m - edges.len();
    let (chosen, _) = chords.partial_shuffle(&mut rng, wanted);
    edges.extend_from_slice(chosen);
    Graph::from_edges(n, edges)
}

/// Replaces every edge by a path of `len` edges.
///
/// Original vertices keep their ids; the `len - 1` interior vertices of each
/// edge are appended edge by edge in lexicographic edge order, walking from
/// the smaller endpoint to the larger one.
pub fn subdivide(g: &Graph, len: usize) -> Result<Graph> {
    if len == 0 {
        return Err(Error::invalid_argument("subdivision length must be at least 1"));
    }
    let n = g.vertex_count();
    let total = n + g.edge_count() * (len - 1);
    let mut next = n;
    let mut edges = Vec::with_capacity(g.edge_count() * len);
    for (u, v) in g.edges() {
        let mut prev = u;
        for _ in 1..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    debug_assert_eq!(next, total);
    Graph::from_edges(total, edges)
}
