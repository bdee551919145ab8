use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// A simple, connected, undirected and unweighted graph on vertices `0..n`.
///
/// Neighbor lists are kept sorted so every traversal visits vertices in id
/// order, which makes all downstream tie-breaking reproducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph and checks that it is simple and connected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if n == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(Error::InvalidGraph(format!("duplicate edge ({a}, {b})")));
            }
        }
        let graph = Graph {
            adjacency,
            edge_count,
        };
        let reached = graph.reachable_from(0);
        if reached < n {
            return Err(Error::InvalidGraph(format!(
                "graph is disconnected: {reached} of {n} vertices reachable from 0"
            )));
        }
        Ok(graph)
    }

    fn reachable_from(&self, source: Vertex) -> usize {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([source]);
        seen[source] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count + 1 == self.vertex_count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_duplicates_and_disconnection() {
        assert!(matches!(
            Graph::from_edges(2, [(0, 0)]),
            Err(Error::InvalidGraph(_))
        ));
        let dup = Graph::from_edges(2, [(0, 1), (1, 0)]).unwrap_err();
        assert!(dup.to_string().contains("duplicate"), "{dup}");
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap_err();
        assert!(split.to_string().contains("disconnected"), "{split}");
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
        assert!(Graph::from_edges(0, []).is_err());
    }

    #[test]
    fn single_vertex_is_a_tree() {
        let g = Graph::from_edges(1, []).unwrap();
        assert!(g.is_tree());
        assert_eq!(g.edges().count(), 0);
    }

    #[test]
    fn edges_are_sorted_and_neighbors_symmetric() {
        let g = Graph::from_edges(4, [(3, 1), (0, 2), (1, 0), (2, 3)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), [(0, 1), (0, 2), (1, 3), (2, 3)]);
        for v in 0..4 {
            for &w in g.neighbors(v) {
                assert!(g.has_edge(w, v));
            }
        }
        assert!(!g.is_tree());
    }
}
