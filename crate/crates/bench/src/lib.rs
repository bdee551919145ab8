//! Graphs shared by the criterion benches in `benches/`.

use kgc_core::generators::{grid_graph, random_connected, random_tree};
use kgc_core::Graph;

/// Two parallel paths of `n / 2` vertices joined by rungs.
pub fn ladder(n: usize) -> Graph {
    grid_graph(n.div_ceil(2), 2).expect("ladder sizes are positive")
}

/// Named instances at a given size: a ladder, a random tree and a sparse
/// random graph.
pub fn corpus(n: usize, seed: u64) -> Vec<(&'static str, Graph)> {
    vec![
        ("ladder", ladder(n)),
        ("tree", random_tree(n, seed).expect("n > 0")),
        ("sparse", random_connected(n, n + n / 4, seed).expect("m within range")),
    ]
}
