//! Undirected simple graphs: underlying graphs of digraphs and cycle graphs.

use serde::Serialize;
use thiserror::Error;

use crate::digraph::{bfs, Distance, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { u: Vertex, v: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut checked = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            checked.push((u, v));
        }
        Ok(Self::from_edges_unchecked(n, checked))
    }

    pub(crate) fn from_edges_unchecked<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        Self::from_adjacency_unchecked(adj)
    }

    pub(crate) fn from_adjacency_unchecked(mut adj: Vec<Vec<Vertex>>) -> Self {
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Graph { adj }
    }

    /// Cycle graph `C_n` (the polygon), `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Self::from_edges_unchecked(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Circular ladder `C_n x K_2`: vertex `(i, side)` is `2 * i + side`.
    pub fn prism(n: usize) -> Self {
        assert!(n >= 3);
        let mut edges = Vec::new();
        for i in 0..n {
            let j = (i + 1) % n;
            edges.push((2 * i, 2 * i + 1));
            edges.push((2 * i, 2 * j));
            edges.push((2 * i + 1, 2 * j + 1));
        }
        Self::from_edges_unchecked(2 * n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn bfs_distances(&self, source: Vertex) -> Vec<Distance> {
        bfs(&self.adj, source, |_| true).0
    }

    /// All-pairs distance matrix (`None` = unreachable).
    pub fn distance_matrix(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.vertex_count())
            .map(|s| self.bfs_distances(s).into_iter().map(Distance::finite).collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.bfs_distances(0).iter().all(|d| d.is_finite())
    }

    pub fn diameter(&self) -> Distance {
        (0..self.vertex_count())
            .flat_map(|s| self.bfs_distances(s))
            .max()
            .unwrap_or(Distance::Finite(0))
    }

    /// Shortest path with lowest-id BFS parents; `None` if disconnected.
    pub fn shortest_path(&self, source: Vertex, target: Vertex) -> Option<Vec<Vertex>> {
        let (dist, parent) = bfs(&self.adj, source, |_| true);
        if !dist[target].is_finite() {
            return None;
        }
        let mut seq = vec![target];
        let mut cur = target;
        while cur != source {
            cur = parent[cur];
            seq.push(cur);
        }
        seq.reverse();
        Some(seq)
    }

    /// Sequence is a path in the graph with no chords.
    pub fn is_induced_path(&self, seq: &[Vertex]) -> bool {
        if !distinct(seq, self.vertex_count()) {
            return false;
        }
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                if self.has_edge(seq[i], seq[j]) != (j == i + 1) {
                    return false;
                }
            }
        }
        true
    }

    /// Sequence of at least three vertices forms a chordless cycle.
    pub fn is_induced_cycle(&self, seq: &[Vertex]) -> bool {
        let k = seq.len();
        if k < 3 || !distinct(seq, self.vertex_count()) {
            return false;
        }
        for i in 0..k {
            for j in i + 1..k {
                let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                if self.has_edge(seq[i], seq[j]) != consecutive {
                    return false;
                }
            }
        }
        true
    }

    /// Path whose length equals the distance between its ends.
    pub fn is_geodesic(&self, seq: &[Vertex]) -> bool {
        let (Some(&a), Some(&b)) = (seq.first(), seq.last()) else {
            return false;
        };
        seq.windows(2).all(|w| self.has_edge(w[0], w[1]))
            && distinct(seq, self.vertex_count())
            && self.bfs_distances(a)[b] == Distance::Finite(seq.len() - 1)
    }
}

fn distinct(seq: &[Vertex], n: usize) -> bool {
    let mut seen = vec![false; n];
    seq.iter()
        .all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let c = Graph::cycle(6);
        assert_eq!(c.edge_count(), 6);
        assert_eq!(c.diameter(), Distance::Finite(3));
        assert!(c.is_induced_cycle(&[0, 1, 2, 3, 4, 5]));
        assert!(!c.is_induced_cycle(&[0, 1, 2]));
        assert!(c.is_geodesic(&[0, 1, 2, 3]));
        assert!(!c.is_geodesic(&[0, 1, 2, 3, 4]));
        assert!(c.is_induced_path(&[0, 1, 2, 3, 4]));
        assert!(!c.is_induced_path(&[0, 1, 2, 3, 4, 5]));
        assert!(Graph::from_edges(2, [(0, 0)]).is_err());
        let p = Graph::prism(10);
        assert_eq!((p.vertex_count(), p.edge_count()), (20, 30));
        assert_eq!(p.diameter(), Distance::Finite(6));
        let rim: Vec<_> = (0..10).map(|i| 2 * i).collect();
        assert!(p.is_induced_cycle(&rim));
    }

    #[test]
    fn disconnected() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.diameter(), Distance::Infinite);
        assert_eq!(g.shortest_path(0, 3), None);
    }
}
