//! Long cycles from descendant counting, and long paths in transitive digraphs.
//!
//! Starting from vertex 0 the path is extended while the current endpoint has
//! an unused out-neighbour with at least `2n/3` descendants outside the path.
//! When that fails, out-neighbours of the endpoint are grouped into a set `S`
//! whose descendant union `U` has between `n/3` and `2n/3` vertices. Every
//! out-neighbour of `U` then lies on the path, and the earliest one closes a
//! cycle through the tail of the path and `U`.

use std::collections::VecDeque;

use num_integer::Roots;
use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::digraph::{Digraph, DirectedCycle, DirectedPath, Distance, Vertex, VertexSet};
use crate::expansion::serialize_ratio;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LongCycleError {
    #[error("digraph is not strongly connected")]
    NotStronglyConnected,
    #[error("need at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error("descendant-set invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionStep {
    pub vertex: Vertex,
    /// Descendants of `vertex` outside the earlier path vertices.
    pub descendants: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleSearchResult {
    pub cycle: DirectedCycle,
    /// `αn/3` when the caller supplied the expansion `α`.
    #[serde(serialize_with = "serialize_opt_ratio")]
    pub guarantee: Option<Ratio<u64>>,
    pub trace: Vec<ExtensionStep>,
    pub path: DirectedPath,
    pub s: Vec<Vertex>,
    pub u: VertexSet,
    /// `N⁺(U)`, contained in the path.
    pub u_out: VertexSet,
    /// Index on the path of the vertex where the cycle re-enters.
    pub closing_index: usize,
}

fn serialize_opt_ratio<S: serde::Serializer>(r: &Option<Ratio<u64>>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => serialize_ratio(r, s),
        None => s.serialize_none(),
    }
}

impl CycleSearchResult {
    /// Length meets the guarantee (vacuous without one).
    pub fn meets_guarantee(&self) -> bool {
        self.guarantee.is_none_or(|g| Ratio::from_integer(self.cycle.len() as u64) >= g)
    }
}

fn descendants(d: &Digraph, source: Vertex, free: &[bool]) -> Vec<Vertex> {
    d.descendants_within(source, free)
}

/// Runs the path-extension process from vertex 0; `alpha` sets the guarantee `αn/3`.
pub fn dfs_long_cycle(d: &Digraph, alpha: Option<Ratio<u64>>) -> Result<CycleSearchResult, LongCycleError> {
    let n = d.vertex_count();
    if n < 2 {
        return Err(LongCycleError::TooSmall(n));
    }
    if !d.is_strongly_connected() {
        return Err(LongCycleError::NotStronglyConnected);
    }
    let mut free = vec![true; n];
    let mut path = vec![0];
    free[0] = false;
    let mut trace = vec![ExtensionStep { vertex: 0, descendants: n }];
    loop {
        let last = *path.last().unwrap();
        let next = d.out_neighbors(last).iter().filter(|&&w| free[w]).find_map(|&w| {
            let k = descendants(d, w, &free).len();
            (3 * k >= 2 * n).then_some((w, k))
        });
        match next {
            Some((w, k)) => {
                free[w] = false;
                path.push(w);
                trace.push(ExtensionStep { vertex: w, descendants: k });
            }
            None => break,
        }
    }
    let last = *path.last().unwrap();
    let singles: Vec<(Vertex, Vec<Vertex>)> = d
        .out_neighbors(last)
        .iter()
        .filter(|&&w| free[w])
        .map(|&w| (w, descendants(d, w, &free)))
        .collect();
    let in_range = |k: usize| 3 * k >= n && 3 * k <= 2 * n;
    let (s, u_members) = if let Some((w, set)) = singles.iter().find(|(_, set)| in_range(set.len())) {
        (vec![*w], set.clone())
    } else {
        let mut in_u = vec![false; n];
        let mut count = 0;
        let mut s = Vec::new();
        for (w, set) in &singles {
            if 3 * count >= n {
                break;
            }
            s.push(*w);
            for &v in set {
                if !in_u[v] {
                    in_u[v] = true;
                    count += 1;
                }
            }
        }
        (s, (0..n).filter(|&v| in_u[v]).collect())
    };
    let u = VertexSet::new(u_members);
    if !in_range(u.len()) {
        return Err(LongCycleError::Invariant(format!("|U| = {} outside [n/3, 2n/3] for n = {n}", u.len())));
    }
    let u_out = d.out_neighborhood(&u).expect("members in range");
    if !u_out.members().iter().all(|&v| !free[v]) {
        return Err(LongCycleError::Invariant("N+(U) leaves the path".into()));
    }
    let position: Vec<Option<usize>> = {
        let mut pos = vec![None; n];
        for (i, &v) in path.iter().enumerate() {
            pos[v] = Some(i);
        }
        pos
    };
    let (closing_index, target) = u_out
        .members()
        .iter()
        .map(|&v| (position[v].expect("on path"), v))
        .min()
        .ok_or_else(|| LongCycleError::Invariant("U has no out-neighbours".into()))?;
    let route = route_through_u(d, &s, &u, target)
        .ok_or_else(|| LongCycleError::Invariant("no route through U".into()))?;
    let mut seq: Vec<Vertex> = path[closing_index..].to_vec();
    seq.extend(route);
    let cycle = DirectedCycle::new(d, seq).map_err(|e| LongCycleError::Invariant(e.to_string()))?;
    let guarantee = alpha.map(|a| a * Ratio::from_integer(n as u64) / Ratio::from_integer(3));
    Ok(CycleSearchResult {
        cycle,
        guarantee,
        trace,
        path: DirectedPath::new_unchecked(path),
        s,
        u,
        u_out,
        closing_index,
    })
}

/// Shortest walk inside `U` from some vertex of `S` to a vertex with an arc to
/// `target`; multi-source BFS seeded in `S` order.
fn route_through_u(d: &Digraph, s: &[Vertex], u: &VertexSet, target: Vertex) -> Option<Vec<Vertex>> {
    let n = d.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &w in s {
        seen[w] = true;
        queue.push_back(w);
    }
    while let Some(v) = queue.pop_front() {
        if d.has_arc(v, target) {
            let mut route = vec![v];
            let mut cur = v;
            while parent[cur] != usize::MAX {
                cur = parent[cur];
                route.push(cur);
            }
            route.reverse();
            return Some(route);
        }
        for &w in d.out_neighbors(v) {
            if u.contains(w) && !seen[w] {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LongPathResult {
    pub path: DirectedPath,
    pub diameter: usize,
    pub cycle_length: usize,
    /// `⌊√n / 3⌋`.
    pub floor: usize,
    pub from_cycle: bool,
}

/// Longer of a diameter-realizing shortest path and the opened long cycle.
pub fn long_path(d: &Digraph, alpha: Option<Ratio<u64>>) -> Result<LongPathResult, LongCycleError> {
    let found = dfs_long_cycle(d, alpha)?;
    let (s, t, dist) = d.diameter_pair().expect("nonempty");
    let diameter = match dist {
        Distance::Finite(k) => k,
        Distance::Infinite => return Err(LongCycleError::NotStronglyConnected),
    };
    let geodesic = d.shortest_path(s, t).expect("strongly connected");
    let opened = found.cycle.to_path();
    let from_cycle = opened.len() > geodesic.len();
    let path = if from_cycle { opened } else { geodesic };
    Ok(LongPathResult {
        path,
        diameter,
        cycle_length: found.cycle.len(),
        floor: d.vertex_count().sqrt() / 3,
        from_cycle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::expansion_exact;

    #[test]
    fn cycle_returns_itself() {
        for n in [2, 3, 7] {
            let r = dfs_long_cycle(&Digraph::directed_cycle(n), None).unwrap();
            assert_eq!(r.cycle.len(), n);
        }
    }

    #[test]
    fn complete_and_product() {
        let k9 = Digraph::complete_bidirected(9);
        let alpha = expansion_exact(&k9).unwrap().alpha_lower;
        let r = dfs_long_cycle(&k9, Some(alpha)).unwrap();
        assert!(r.meets_guarantee());
        r.cycle.validate(&k9).unwrap();
        let c33 = Digraph::directed_cycle(3).cartesian_product(&Digraph::directed_cycle(3));
        let alpha = expansion_exact(&c33).unwrap().alpha_lower;
        let r = dfs_long_cycle(&c33, Some(alpha)).unwrap();
        assert!(r.meets_guarantee());
        assert!(r.u_out.is_subset(&VertexSet::new(r.path.vertices().iter().copied())));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            dfs_long_cycle(&Digraph::directed_path(3), None).unwrap_err(),
            LongCycleError::NotStronglyConnected
        );
        assert_eq!(dfs_long_cycle(&Digraph::directed_path(1), None).unwrap_err(), LongCycleError::TooSmall(1));
    }

    #[test]
    fn long_paths() {
        let c = long_path(&Digraph::directed_cycle(10), None).unwrap();
        assert_eq!(c.path.len(), 9);
        let c44 = Digraph::directed_cycle(4).cartesian_product(&Digraph::directed_cycle(4));
        let r = long_path(&c44, None).unwrap();
        assert!(r.path.len() >= 6);
        r.path.validate(&c44).unwrap();
    }
}
