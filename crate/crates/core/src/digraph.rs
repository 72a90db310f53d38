//! Finite simple digraphs with sorted out/in adjacency.
//!
//! Vertex ids are `0..n`. Self-loops and parallel arcs are rejected; digons
//! (`u -> v` together with `v -> u`) are ordinary 2-cycles. All queries are
//! pure and iterate neighbours in ascending id order, so every derived result
//! is reproducible.

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::Graph;

/// Vertex identifier.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("arc ({u}, {v}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { u: Vertex, v: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {vertex} is not in 0..{n}")]
    MemberOutOfRange { vertex: Vertex, n: usize },
    #[error("not strongly connected")]
    NotStronglyConnected,
    #[error("empty digraph")]
    Empty,
}

/// Directed distance; `Infinite` marks an unreachable target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.vertex_count())
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}

impl Digraph {
    /// Builds a digraph on `n` vertices. Duplicate arcs are merged.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self, DigraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut out_adj = vec![Vec::new(); n];
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(DigraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(DigraphError::SelfLoop(u));
            }
            out_adj[u].push(v);
        }
        Ok(Self::from_out_lists(out_adj))
    }

    /// Trusted constructor used by generators whose output is loop-free and in range.
    pub(crate) fn from_out_lists(mut out_adj: Vec<Vec<Vertex>>) -> Self {
        let n = out_adj.len();
        let mut in_adj = vec![Vec::new(); n];
        for (u, outs) in out_adj.iter_mut().enumerate() {
            outs.sort_unstable();
            outs.dedup();
            debug_assert!(outs.iter().all(|&v| v < n && v != u));
            for &v in outs.iter() {
                in_adj[v].push(u);
            }
        }
        // in-lists come out sorted because `u` is visited in ascending order
        Digraph { out_adj, in_adj }
    }

    /// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`; `n = 2` is a digon.
    pub fn directed_cycle(n: usize) -> Self {
        assert!(n >= 2, "directed cycle needs at least two vertices");
        Self::from_out_lists((0..n).map(|i| vec![(i + 1) % n]).collect())
    }

    /// Directed path `0 -> 1 -> ... -> n-1`.
    pub fn directed_path(n: usize) -> Self {
        Self::from_out_lists(
            (0..n)
                .map(|i| if i + 1 < n { vec![i + 1] } else { vec![] })
                .collect(),
        )
    }

    /// Complete digraph with both arcs between every pair.
    pub fn complete_bidirected(n: usize) -> Self {
        Self::from_out_lists(
            (0..n)
                .map(|u| (0..n).filter(|&v| v != u).collect())
                .collect(),
        )
    }

    /// Disjoint union, second operand relabelled after the first.
    pub fn disjoint_union(&self, other: &Digraph) -> Digraph {
        let off = self.vertex_count();
        let mut out = self.out_adj.clone();
        out.extend(
            other
                .out_adj
                .iter()
                .map(|l| l.iter().map(|&v| v + off).collect()),
        );
        Self::from_out_lists(out)
    }

    pub fn vertex_count(&self) -> usize {
        self.out_adj.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out_adj.iter().map(Vec::len).sum()
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.in_adj[v]
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count() && self.out_adj[u].binary_search(&v).is_ok()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, outs)| outs.iter().map(move |&v| (u, v)))
    }

    /// External out-neighbourhood N⁺(U).
    pub fn out_neighborhood(&self, set: &VertexSet) -> Result<VertexSet, DigraphError> {
        self.external(set, &self.out_adj)
    }

    /// External in-neighbourhood N⁻(U).
    pub fn in_neighborhood(&self, set: &VertexSet) -> Result<VertexSet, DigraphError> {
        self.external(set, &self.in_adj)
    }

    fn external(&self, set: &VertexSet, adj: &[Vec<Vertex>]) -> Result<VertexSet, DigraphError> {
        let n = self.vertex_count();
        set.check_within(n)?;
        let mut inside = vec![false; n];
        for &u in set.members() {
            inside[u] = true;
        }
        let mut hit = vec![false; n];
        for &u in set.members() {
            for &v in &adj[u] {
                if !inside[v] {
                    hit[v] = true;
                }
            }
        }
        Ok(VertexSet::from_sorted_unchecked(
            (0..n).filter(|&v| hit[v]).collect(),
        ))
    }

    /// Breadth-first directed distances from `source`.
    pub fn bfs_distances(&self, source: Vertex) -> Result<Vec<Distance>, DigraphError> {
        let n = self.vertex_count();
        if source >= n {
            return Err(DigraphError::MemberOutOfRange { vertex: source, n });
        }
        let (dist, _) = bfs(&self.out_adj, source, |_| true);
        Ok(dist)
    }

    /// Shortest directed path from `source` to `target`, lowest ids first on ties.
    pub fn shortest_path(&self, source: Vertex, target: Vertex) -> Option<DirectedPath> {
        let (dist, parent) = bfs(&self.out_adj, source, |_| true);
        if !dist.get(target)?.is_finite() {
            return None;
        }
        let mut seq = vec![target];
        let mut cur = target;
        while cur != source {
            cur = parent[cur];
            seq.push(cur);
        }
        seq.reverse();
        Some(DirectedPath::new_unchecked(seq))
    }

    /// Maximum directed distance over ordered pairs; `Infinite` iff not strongly connected.
    pub fn directed_diameter(&self) -> Distance {
        self.diameter_pair().map_or(Distance::Finite(0), |(_, _, d)| d)
    }

    /// A pair realising the directed diameter (lexicographically first).
    pub fn diameter_pair(&self) -> Option<(Vertex, Vertex, Distance)> {
        let n = self.vertex_count();
        let mut best: Option<(Vertex, Vertex, Distance)> = None;
        for s in 0..n {
            let (dist, _) = bfs(&self.out_adj, s, |_| true);
            for (t, &d) in dist.iter().enumerate() {
                if best.is_none_or(|(_, _, b)| d > b) {
                    best = Some((s, t, d));
                }
            }
        }
        best
    }

    pub fn is_strongly_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let fwd = reach_count(&self.out_adj, 0, |_| true);
        let bwd = reach_count(&self.in_adj, 0, |_| true);
        fwd == n && bwd == n
    }

    /// Strong connectivity of `D - v` for every vertex `v` (and of `D` itself).
    pub fn is_strongly_2_connected(&self) -> bool {
        let n = self.vertex_count();
        if n < 3 || !self.is_strongly_connected() {
            return false;
        }
        (0..n).all(|removed| {
            let start = if removed == 0 { 1 } else { 0 };
            reach_count(&self.out_adj, start, |v| v != removed) == n - 1
                && reach_count(&self.in_adj, start, |v| v != removed) == n - 1
        })
    }

    /// `Some(r)` iff every vertex has out-degree and in-degree `r`.
    pub fn regularity(&self) -> Option<usize> {
        let r = self.out_adj.first()?.len();
        let regular = self
            .out_adj
            .iter()
            .zip(&self.in_adj)
            .all(|(o, i)| o.len() == r && i.len() == r);
        regular.then_some(r)
    }

    /// Vertices reachable from `source` while staying inside `allowed` (source included).
    pub fn descendants_within(&self, source: Vertex, allowed: &[bool]) -> Vec<Vertex> {
        let (dist, _) = bfs(&self.out_adj, source, |v| allowed[v]);
        dist.iter()
            .enumerate()
            .filter(|(_, d)| d.is_finite())
            .map(|(v, _)| v)
            .collect()
    }

    /// Cartesian product; vertex `(u1, u2)` is `u1 * |V(other)| + u2`.
    pub fn cartesian_product(&self, other: &Digraph) -> Digraph {
        let n2 = other.vertex_count();
        let mut out = Vec::with_capacity(self.vertex_count() * n2);
        for u1 in 0..self.vertex_count() {
            for u2 in 0..n2 {
                let mut list: Vec<Vertex> = self.out_adj[u1].iter().map(|&v1| v1 * n2 + u2).collect();
                list.extend(other.out_adj[u2].iter().map(|&v2| u1 * n2 + v2));
                out.push(list);
            }
        }
        Self::from_out_lists(out)
    }

    /// Underlying undirected simple graph.
    pub fn underlying_graph(&self) -> Graph {
        Graph::from_edges_unchecked(self.vertex_count(), self.arcs())
    }

    /// Image of the digraph under a vertex relabelling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Digraph {
        let n = self.vertex_count();
        assert_eq!(perm.len(), n);
        let mut out = vec![Vec::new(); n];
        for (u, v) in self.arcs() {
            out[perm[u]].push(perm[v]);
        }
        Self::from_out_lists(out)
    }

    /// Induced subdigraph on the vertices flagged in `keep`, relabelled in ascending order.
    pub fn induced_subdigraph(&self, keep: &[bool]) -> (Digraph, Vec<Vertex>) {
        let kept: Vec<Vertex> = (0..self.vertex_count()).filter(|&v| keep[v]).collect();
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in kept.iter().enumerate() {
            index[v] = i;
        }
        let out = kept
            .iter()
            .map(|&u| {
                self.out_adj[u]
                    .iter()
                    .filter(|&&v| keep[v])
                    .map(|&v| index[v])
                    .collect()
            })
            .collect();
        (Self::from_out_lists(out), kept)
    }
}

/// BFS over `adj` restricted to vertices accepted by `allowed`.
/// Returns distances and BFS parents (`usize::MAX` for the root / unreached).
pub(crate) fn bfs<F>(adj: &[Vec<Vertex>], source: Vertex, allowed: F) -> (Vec<Distance>, Vec<Vertex>)
where
    F: Fn(Vertex) -> bool,
{
    let n = adj.len();
    let mut dist = vec![Distance::Infinite; n];
    let mut parent = vec![usize::MAX; n];
    if !allowed(source) {
        return (dist, parent);
    }
    dist[source] = Distance::Finite(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].finite().unwrap_or(0);
        for &v in &adj[u] {
            if dist[v] == Distance::Infinite && allowed(v) {
                dist[v] = Distance::Finite(du + 1);
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    (dist, parent)
}

fn reach_count<F: Fn(Vertex) -> bool>(adj: &[Vec<Vertex>], source: Vertex, allowed: F) -> usize {
    bfs(adj, source, allowed)
        .0
        .iter()
        .filter(|d| d.is_finite())
        .count()
}

/// A set of vertices of some host digraph, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Default)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new<I: IntoIterator<Item = Vertex>>(members: I) -> Self {
        let mut v: Vec<Vertex> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub(crate) fn from_sorted_unchecked(v: Vec<Vertex>) -> Self {
        VertexSet(v)
    }

    pub fn from_mask(mask: u64) -> Self {
        VertexSet((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn members(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    pub fn check_within(&self, n: usize) -> Result<(), DigraphError> {
        match self.0.last() {
            Some(&v) if v >= n => Err(DigraphError::MemberOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("vertex {0} repeats")]
    RepeatedVertex(Vertex),
    #[error("({0}, {1}) is not an arc of the host")]
    MissingArc(Vertex, Vertex),
    #[error("a directed cycle needs at least two vertices, got {0}")]
    TooShort(usize),
    #[error("vertex {0} is outside the host")]
    OutOfRange(Vertex),
}

fn check_distinct(seq: &[Vertex], n: usize) -> Result<(), WalkError> {
    let mut seen = vec![false; n];
    for &v in seq {
        if v >= n {
            return Err(WalkError::OutOfRange(v));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(WalkError::RepeatedVertex(v));
        }
    }
    Ok(())
}

/// A directed path given by its vertex sequence; length counts arcs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DirectedPath(Vec<Vertex>);

impl DirectedPath {
    pub fn new(host: &Digraph, vertices: Vec<Vertex>) -> Result<Self, WalkError> {
        check_distinct(&vertices, host.vertex_count())?;
        for w in vertices.windows(2) {
            if !host.has_arc(w[0], w[1]) {
                return Err(WalkError::MissingArc(w[0], w[1]));
            }
        }
        Ok(DirectedPath(vertices))
    }

    pub(crate) fn new_unchecked(vertices: Vec<Vertex>) -> Self {
        DirectedPath(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn validate(&self, host: &Digraph) -> Result<(), WalkError> {
        DirectedPath::new(host, self.0.clone()).map(|_| ())
    }
}

/// A directed cycle, stored rotated so that its smallest vertex comes first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DirectedCycle(Vec<Vertex>);

impl DirectedCycle {
    pub fn new(host: &Digraph, vertices: Vec<Vertex>) -> Result<Self, WalkError> {
        if vertices.len() < 2 {
            return Err(WalkError::TooShort(vertices.len()));
        }
        check_distinct(&vertices, host.vertex_count())?;
        let k = vertices.len();
        for i in 0..k {
            let (u, v) = (vertices[i], vertices[(i + 1) % k]);
            if !host.has_arc(u, v) {
                return Err(WalkError::MissingArc(u, v));
            }
        }
        Ok(Self::canonical(vertices))
    }

    /// Rotates to the smallest vertex without validating arcs.
    pub(crate) fn canonical(mut vertices: Vec<Vertex>) -> Self {
        if let Some(pos) = vertices
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| v)
            .map(|(i, _)| i)
        {
            vertices.rotate_left(pos);
        }
        DirectedCycle(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    /// Number of arcs, which equals the number of vertices.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn validate(&self, host: &Digraph) -> Result<(), WalkError> {
        DirectedCycle::new(host, self.0.clone()).map(|_| ())
    }

    /// Image under a vertex map, re-canonicalised.
    pub fn map(&self, perm: &[Vertex]) -> DirectedCycle {
        Self::canonical(self.0.iter().map(|&v| perm[v]).collect())
    }

    /// Opens the cycle into a path starting at its first vertex.
    pub fn to_path(&self) -> DirectedPath {
        DirectedPath(self.0.clone())
    }

    /// Bitmask of the vertex set (hosts with at most 64 vertices).
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &v| m | 1u64 << v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Digraph {
        Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn build_rejects_loops_and_range() {
        assert_eq!(
            Digraph::from_arcs(1, [(0, 0)]),
            Err(DigraphError::SelfLoop(0))
        );
        assert!(matches!(
            Digraph::from_arcs(2, [(0, 2)]),
            Err(DigraphError::VertexOutOfRange { .. })
        ));
        let digon = Digraph::from_arcs(2, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(digon.arc_count(), 2);
        assert_eq!(digon, Digraph::directed_cycle(2));
    }

    #[test]
    fn neighborhoods() {
        let t = triangle();
        let u = VertexSet::new([0]);
        assert_eq!(t.out_neighborhood(&u).unwrap(), VertexSet::new([1]));
        assert_eq!(t.in_neighborhood(&u).unwrap(), VertexSet::new([2]));
        let all = VertexSet::new(0..3);
        assert!(t.out_neighborhood(&all).unwrap().is_empty());
        assert!(t.in_neighborhood(&VertexSet::new([5])).is_err());

        let c6 = Digraph::directed_cycle(6);
        let u = VertexSet::new([0, 1, 2, 3]);
        assert_eq!(c6.out_neighborhood(&u).unwrap(), VertexSet::new([4]));
        assert_eq!(c6.in_neighborhood(&u).unwrap(), VertexSet::new([5]));
    }

    #[test]
    fn distances_and_diameter() {
        let c7 = Digraph::directed_cycle(7);
        let d = c7.bfs_distances(0).unwrap();
        assert!(d.iter().enumerate().all(|(k, &x)| x == Distance::Finite(k)));
        assert_eq!(c7.directed_diameter(), Distance::Finite(6));
        assert_eq!(
            Digraph::directed_cycle(2).bfs_distances(0).unwrap()[1],
            Distance::Finite(1)
        );
        let two = triangle().disjoint_union(&triangle());
        let d = two.bfs_distances(0).unwrap();
        assert!(d[3..].iter().all(|x| *x == Distance::Infinite));
        assert_eq!(two.directed_diameter(), Distance::Infinite);
        assert_eq!(Digraph::complete_bidirected(5).directed_diameter(), Distance::Finite(1));
    }

    #[test]
    fn connectivity_and_regularity() {
        assert!(Digraph::directed_cycle(5).is_strongly_connected());
        assert_eq!(Digraph::directed_cycle(5).regularity(), Some(1));
        let p = Digraph::directed_path(3);
        assert!(!p.is_strongly_connected());
        assert_eq!(p.regularity(), None);
        assert!(!Digraph::directed_cycle(5).is_strongly_2_connected());
        assert!(Digraph::complete_bidirected(4).is_strongly_2_connected());
    }

    #[test]
    fn products() {
        let c2 = Digraph::directed_cycle(2);
        let c3 = Digraph::directed_cycle(3);
        let p = c2.cartesian_product(&c2);
        assert_eq!((p.vertex_count(), p.arc_count(), p.regularity()), (4, 8, Some(2)));
        let q = c2.cartesian_product(&c3);
        assert_eq!(q.vertex_count(), 6);
        assert!((0..6).all(|v| q.out_neighbors(v).len() == 2));
        assert_eq!(q.underlying_graph().edge_count(), 9);
        let c4 = Digraph::directed_cycle(4);
        assert_eq!(c4.cartesian_product(&c4).directed_diameter(), Distance::Finite(6));
        // (0,0) -> (1,0) -> (1,1) -> (0,1) -> (0,0)
        let ham = DirectedCycle::new(&p, vec![0, 2, 3, 1]).unwrap();
        assert_eq!(ham.len(), 4);
    }

    #[test]
    fn underlying() {
        assert_eq!(Digraph::directed_cycle(2).underlying_graph().edge_count(), 1);
        let g = triangle().underlying_graph();
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(2, 0));
    }

    #[test]
    fn walks() {
        let t = triangle();
        let c = DirectedCycle::new(&t, vec![2, 0, 1]).unwrap();
        assert_eq!(c.vertices(), &[0, 1, 2]);
        assert_eq!(
            DirectedCycle::new(&t, vec![0, 2, 1]),
            Err(WalkError::MissingArc(0, 2))
        );
        assert_eq!(DirectedCycle::new(&t, vec![0]), Err(WalkError::TooShort(1)));
        let p = DirectedPath::new(&t, vec![1, 2, 0]).unwrap();
        assert_eq!(p.len(), 2);
        assert!(DirectedPath::new(&t, vec![0, 1, 0]).is_err());
    }
}
