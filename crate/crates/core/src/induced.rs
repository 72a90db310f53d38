//! Long induced cycles in nearly transitive graphs of large diameter.
//!
//! A geodesic `S` between two vertices at distance `d` is split at a middle
//! vertex `m` into halves `L` (from `v`) and `R` (to `u`). The working path `P`
//! is an induced path whose last `⌈(d-5)/2⌉` vertices `Q` (from `y` to the end
//! `w`) form a geodesic; it starts as `S`. An automorphism `φ` moves `m` onto
//! `w` or a neighbour of `w`, and one translated half stays within distance 3
//! of `w' = φ(m)` wherever it touches `Q ∪ N(Q)`. From its farthest contact
//! `c` and the matching vertex `z` of `Q`, either the translated half closes an
//! induced cycle with `P`, or it extends `P` to a longer admissible path and the
//! step repeats. Any failed step falls back to the exhaustive search.

use serde::Serialize;
use thiserror::Error;

use crate::automorphism::AutomorphismFamily;
use crate::budget::{Budget, Search};
use crate::cycle_graph::is_nearly_transitive;
use crate::digraph::{Distance, Vertex};
use crate::graph::Graph;
use crate::oracle::brute_longest_induced_cycle;

/// Smallest diameter for which the construction is attempted.
pub const MIN_DIAMETER: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InducedError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("diameter {0} is below {MIN_DIAMETER}")]
    DiameterTooSmall(usize),
    #[error("family acts on {family} points but the graph has {graph} vertices")]
    DegreeMismatch { family: usize, graph: usize },
    #[error("family does not certify near transitivity")]
    NotNearlyTransitive,
    #[error("no induced cycle found")]
    NoCycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    L,
    R,
}

/// Named vertices and paths of the final construction step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeodesicDecomposition {
    pub geodesic: Vec<Vertex>,
    pub v: Vertex,
    pub u: Vertex,
    pub m: Vertex,
    pub path: Vec<Vertex>,
    pub tail_len: usize,
    pub w: Vertex,
    pub x: Vertex,
    pub y: Vertex,
    pub phi: usize,
    pub w_prime: Vertex,
    pub side: Side,
    /// The chosen translated half, listed from `w'` outward.
    pub arm: Vec<Vertex>,
    pub c: Vertex,
    pub z: Vertex,
    pub s: Option<Vertex>,
    pub t: Option<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Method {
    Construction,
    Fallback { failed_step: String, exact: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedCycleResult {
    pub cycle: Vec<Vertex>,
    pub diameter: usize,
    /// `d - 17`.
    pub floor: usize,
    pub meets_floor: bool,
    pub method: Method,
    pub iterations: usize,
    pub decomposition: Option<GeodesicDecomposition>,
}

pub fn induced_cycle_via_symmetry(
    g: &Graph,
    fam: &AutomorphismFamily,
    budget: &mut Budget,
) -> Result<InducedCycleResult, InducedError> {
    let n = g.vertex_count();
    let d = match g.diameter() {
        Distance::Finite(d) => d,
        Distance::Infinite => return Err(InducedError::Disconnected),
    };
    if d < MIN_DIAMETER {
        return Err(InducedError::DiameterTooSmall(d));
    }
    if fam.degree() != n {
        return Err(InducedError::DegreeMismatch { family: fam.degree(), graph: n });
    }
    if !is_nearly_transitive(g, fam) {
        return Err(InducedError::NotNearlyTransitive);
    }
    let floor = d - 17;
    let mut iterations = 0;
    let failed_step = match construct(g, fam, d, &mut iterations) {
        Ok((cycle, dec)) if cycle.len() >= floor => {
            return Ok(InducedCycleResult {
                meets_floor: true,
                cycle,
                diameter: d,
                floor,
                method: Method::Construction,
                iterations,
                decomposition: Some(dec),
            })
        }
        Ok((cycle, _)) => format!("cycle of length {} below the floor", cycle.len()),
        Err(step) => step,
    };
    log::info!("induced-cycle construction failed at: {failed_step}; using exhaustive search");
    let (cycle, exact) = match brute_longest_induced_cycle(g, budget) {
        Search::Exact(Some(c)) => (c, true),
        Search::Unknown(Some(Some(c))) => (c, false),
        _ => return Err(InducedError::NoCycle),
    };
    Ok(InducedCycleResult {
        meets_floor: cycle.len() >= floor,
        cycle,
        diameter: d,
        floor,
        method: Method::Fallback { failed_step, exact },
        iterations,
        decomposition: None,
    })
}

fn distances(g: &Graph, s: Vertex) -> Vec<usize> {
    g.bfs_distances(s).into_iter().map(|d| d.finite().unwrap_or(usize::MAX)).collect()
}

fn construct(
    g: &Graph,
    fam: &AutomorphismFamily,
    d: usize,
    iterations: &mut usize,
) -> Result<(Vec<Vertex>, GeodesicDecomposition), String> {
    let n = g.vertex_count();
    let (v, u) = (0..n)
        .find_map(|s| distances(g, s).iter().position(|&k| k == d).map(|t| (s, t)))
        .ok_or("no diametral pair")?;
    let geodesic = g.shortest_path(v, u).ok_or("no geodesic")?;
    let mid = d / 2;
    let m = geodesic[mid];
    let (l, r) = (&geodesic[..=mid], &geodesic[mid..]);
    let tail_len = (d - 4) / 2;
    let mut p = geodesic.clone();
    while *iterations < n {
        *iterations += 1;
        let len = p.len();
        let (x, w, y) = (p[0], p[len - 1], p[len - tail_len]);
        let q = &p[len - tail_len..];
        let p_prime = &p[..=len - tail_len];
        let phi_index = fam
            .members()
            .iter()
            .position(|f| f[m] == w)
            .or_else(|| fam.members().iter().position(|f| g.has_edge(f[m], w)))
            .ok_or("no automorphism maps m into the closed neighbourhood of w")?;
        let phi = &fam.members()[phi_index];
        let w_prime = phi[m];
        let l_arm: Vec<Vertex> = l.iter().rev().map(|&a| phi[a]).collect();
        let r_arm: Vec<Vertex> = r.iter().map(|&a| phi[a]).collect();

        let mut near_q = vec![false; n];
        for &a in q {
            near_q[a] = true;
            for &b in g.neighbors(a) {
                near_q[b] = true;
            }
        }
        let from_w_prime = distances(g, w_prime);
        let reach = |arm: &[Vertex]| arm.iter().filter(|&&a| near_q[a]).map(|&a| from_w_prime[a]).max();
        let (side, arm) = if reach(&l_arm).is_some_and(|k| k <= 3) {
            (Side::L, l_arm)
        } else if reach(&r_arm).is_some_and(|k| k <= 3) {
            (Side::R, r_arm)
        } else {
            return Err("neither translated half stays within distance 3 of w'".into());
        };
        let c_index = (0..arm.len()).rev().find(|&i| near_q[arm[i]]).expect("w' is a contact");
        let c = arm[c_index];
        let z_index = (0..q.len())
            .find(|&j| q[j] == c || g.has_edge(q[j], c))
            .ok_or("contact vertex c has no partner on Q")?;
        let z = q[z_index];
        let l2 = &arm[c_index..];
        let mut joined: Vec<Vertex> = q[..=z_index].to_vec();
        joined.extend_from_slice(if c == z { &l2[1..] } else { l2 });
        if !g.is_induced_path(&joined) {
            return Err("Q' and L'' do not induce a path".into());
        }

        let head = &p_prime[..p_prime.len() - 1];
        let mut best: Option<(usize, usize, usize, usize)> = None; // (cost, ds, s index, t index)
        for (si, &s) in head.iter().enumerate() {
            let ds = p_prime.len() - 1 - si;
            for (ti, &t) in l2.iter().enumerate() {
                if s == t || g.has_edge(s, t) {
                    let key = (ds + ti, ds, si, ti);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                    }
                }
            }
        }
        let mut dec = GeodesicDecomposition {
            geodesic: geodesic.clone(),
            v,
            u,
            m,
            path: p.clone(),
            tail_len,
            w,
            x,
            y,
            phi: phi_index,
            w_prime,
            side,
            arm: arm.clone(),
            c,
            z,
            s: None,
            t: None,
        };
        match best {
            None => {
                let mut next: Vec<Vertex> = head.to_vec();
                next.extend_from_slice(&joined);
                let tail = &next[next.len() - tail_len..];
                if next.len() <= p.len() || !g.is_induced_path(&next) || !g.is_geodesic(tail) {
                    return Err("extension does not give a longer admissible path".into());
                }
                p = next;
            }
            Some((_, _, si, ti)) => {
                let (s, t) = (head[si], l2[ti]);
                let t_pos = joined.iter().position(|&a| a == t).expect("t lies on L''");
                let mut cycle: Vec<Vertex> = head[si..].to_vec();
                let upto = if s == t { t_pos } else { t_pos + 1 };
                cycle.extend_from_slice(&joined[..upto]);
                if !g.is_induced_cycle(&cycle) {
                    return Err("closing segment does not give an induced cycle".into());
                }
                dec.s = Some(s);
                dec.t = Some(t);
                return Ok((cycle, dec));
            }
        }
    }
    Err("path stopped growing".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rotations(n: usize) -> Vec<Vec<Vertex>> {
        (0..n).map(|k| (0..n).map(|v| (v + k) % n).collect()).collect()
    }

    #[test]
    fn polygon_returns_itself() {
        let g = Graph::cycle(50);
        let fam = AutomorphismFamily::for_graph(&g, rotations(50)).unwrap();
        let r = induced_cycle_via_symmetry(&g, &fam, &mut Budget::default()).unwrap();
        assert_eq!(r.method, Method::Construction);
        assert_eq!(r.diameter, 25);
        assert_eq!(r.cycle.len(), 50);
        assert!(g.is_induced_cycle(&r.cycle));
        assert!(r.meets_floor);
    }

    #[test]
    fn prism_with_its_symmetries() {
        let k = 40;
        let g = Graph::prism(k);
        let mut perms = Vec::new();
        for shift in 0..k {
            for flip in 0..2 {
                perms.push((0..2 * k).map(|v| 2 * ((v / 2 + shift) % k) + ((v % 2) ^ flip)).collect());
            }
        }
        let fam = AutomorphismFamily::for_graph(&g, perms).unwrap();
        let r = induced_cycle_via_symmetry(&g, &fam, &mut Budget::default()).unwrap();
        assert!(g.is_induced_cycle(&r.cycle));
        assert_eq!(r.method, Method::Construction);
        assert!(r.meets_floor, "{r:?}");
    }

    #[test]
    fn hypotheses() {
        let small = Graph::cycle(7);
        let fam = AutomorphismFamily::for_graph(&small, rotations(7)).unwrap();
        assert_eq!(
            induced_cycle_via_symmetry(&small, &fam, &mut Budget::default()).unwrap_err(),
            InducedError::DiameterTooSmall(3)
        );
        let g = Graph::cycle(44);
        let id = AutomorphismFamily::identity_only(44);
        assert_eq!(
            induced_cycle_via_symmetry(&g, &id, &mut Budget::default()).unwrap_err(),
            InducedError::NotNearlyTransitive
        );
    }
}
