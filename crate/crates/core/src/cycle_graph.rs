//! The cycle graph `C(D)`: one vertex per directed cycle of `D`, two cycles
//! adjacent when they share a vertex. Induced cycles of `C(D)` are stitched
//! back into directed cycles of `D`, and automorphisms of `D` lift to `C(D)`.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::automorphism::{is_graph_automorphism, AutomorphismFamily, Permutation};
use crate::bitset::BitSet;
use crate::cycles::{enumerate_directed_cycles, CycleBounds, CycleEnumeration};
use crate::digraph::{Digraph, DirectedCycle, Distance, Vertex};
use crate::graph::Graph;

/// Random pairs re-checked against direct set intersection on every build.
pub const ADJACENCY_SPOT_CHECKS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleGraphError {
    #[error("cycle graph is truncated; the operation needs the complete cycle set")]
    Incomplete,
    #[error("sequence is not an induced cycle of length >= 4 in the cycle graph: {0}")]
    NotInduced(String),
    #[error("image of cycle {0} is not among the enumerated cycles")]
    ImageMissing(usize),
    #[error("lifted member {0} does not preserve adjacency")]
    NotPreserved(usize),
    #[error("stitched walk is not a directed cycle: {0}")]
    Stitch(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleGraph {
    cycles: Vec<DirectedCycle>,
    graph: Graph,
    /// Per host vertex, the indices of the cycles through it.
    membership: Vec<Vec<usize>>,
    truncated: bool,
    bounds: CycleBounds,
}

impl CycleGraph {
    pub fn build(host_order: usize, e: CycleEnumeration) -> Self {
        let mut membership = vec![Vec::new(); host_order];
        for (i, c) in e.cycles.iter().enumerate() {
            for &v in c.vertices() {
                membership[v].push(i);
            }
        }
        let k = e.cycles.len();
        let adj: Vec<Vec<usize>> = e
            .cycles
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut hit = BitSet::new(k);
                for &v in c.vertices() {
                    for &j in &membership[v] {
                        hit.insert(j);
                    }
                }
                hit.remove(i);
                hit.iter().collect()
            })
            .collect();
        let cg = CycleGraph {
            cycles: e.cycles,
            graph: Graph::from_adjacency_unchecked(adj),
            membership,
            truncated: e.truncated,
            bounds: e.bounds,
        };
        cg.spot_check(ADJACENCY_SPOT_CHECKS, 0);
        cg
    }

    /// Enumerates the cycles of `d` within `bounds` and builds the graph.
    pub fn of(d: &Digraph, bounds: CycleBounds) -> Result<Self, crate::cycles::CycleError> {
        Ok(Self::build(d.vertex_count(), enumerate_directed_cycles(d, bounds)?))
    }

    fn spot_check(&self, pairs: usize, seed: u64) {
        let k = self.cycles.len();
        if k < 2 {
            return;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..pairs {
            let i = rng.gen_range(0..k);
            let j = rng.gen_range(0..k);
            if i == j {
                continue;
            }
            let meet = self.cycles[i].vertices().iter().any(|&v| self.cycles[j].contains(v));
            assert_eq!(meet, self.graph.has_edge(i, j), "cycle graph adjacency mismatch at ({i}, {j})");
        }
    }

    pub fn cycles(&self) -> &[DirectedCycle] {
        &self.cycles
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn membership(&self, v: Vertex) -> &[usize] {
        &self.membership[v]
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn bounds(&self) -> CycleBounds {
        self.bounds
    }

    /// Complete with respect to every cycle of the host.
    pub fn is_complete(&self) -> bool {
        !self.truncated && self.bounds.max_len.is_none()
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Text dump: header, one vertex list per cycle, then adjacent index pairs.
    pub fn dump(&self) -> String {
        let mut s = format!("cycles {} truncated {}\n", self.cycles.len(), u8::from(self.truncated));
        for c in &self.cycles {
            let line: Vec<String> = c.vertices().iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        for (i, j) in self.graph.edges() {
            let _ = writeln!(s, "{i} {j}");
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiameterCheck {
    pub complete: bool,
    pub cycle_count: usize,
    pub connected: Option<bool>,
    pub cycle_graph_diameter: Option<usize>,
    pub directed_diameter: Distance,
    pub circumference: usize,
    /// `diam(C(D)) >= d/ℓ - 1`, checked as `(diam + 1)·ℓ >= d`; `None` if not decidable.
    pub holds: Option<bool>,
}

pub fn cycle_graph_diameter_check(d: &Digraph, bounds: CycleBounds) -> Result<DiameterCheck, crate::cycles::CycleError> {
    let cg = CycleGraph::of(d, bounds)?;
    Ok(diameter_check_on(d, &cg))
}

pub fn diameter_check_on(d: &Digraph, cg: &CycleGraph) -> DiameterCheck {
    let complete = cg.is_complete();
    let circumference = cg.cycles.iter().map(DirectedCycle::len).max().unwrap_or(0);
    let directed_diameter = d.directed_diameter();
    let (connected, diam) = if complete {
        match cg.graph.diameter() {
            Distance::Finite(k) => (Some(true), Some(k)),
            Distance::Infinite => (Some(false), None),
        }
    } else {
        (None, None)
    };
    let holds = match (diam, directed_diameter) {
        (Some(t), Distance::Finite(dd)) if circumference > 0 => Some((t + 1) * circumference >= dd),
        _ => None,
    };
    DiameterCheck {
        complete,
        cycle_count: cg.len(),
        connected,
        cycle_graph_diameter: diam,
        directed_diameter,
        circumference,
        holds,
    }
}

/// Checks that `seq` is an induced cycle of `cg` with at least four vertices.
pub fn check_induced(cg: &CycleGraph, seq: &[usize]) -> Result<(), CycleGraphError> {
    let k = seq.len();
    if k < 4 {
        return Err(CycleGraphError::NotInduced(format!("length {k} < 4")));
    }
    if seq.iter().any(|&i| i >= cg.len()) {
        return Err(CycleGraphError::NotInduced("index out of range".into()));
    }
    if !cg.graph.is_induced_cycle(seq) {
        return Err(CycleGraphError::NotInduced(format!("{seq:?} has a chord or a missing edge")));
    }
    Ok(())
}

/// Directed cycle of length at least `seq.len()` through the induced cycle
/// `C_1, ..., C_l` of the cycle graph.
///
/// `v_1 ∈ C_1 ∩ C_l` and `v_2 ∈ C_1 ∩ C_2` are chosen as the first pair (in
/// the cyclic order of `C_1`) whose connecting arc of `C_1` meets neither
/// `C_2` nor `C_l` in between; then each `C_i` is followed from `v_i` to its
/// first vertex on `C_{i+1}`, and `C_l` closes the cycle back to `v_1`.
pub fn stitch_directed_cycle(d: &Digraph, cg: &CycleGraph, seq: &[usize]) -> Result<DirectedCycle, CycleGraphError> {
    check_induced(cg, seq)?;
    let l = seq.len();
    let cyc = |i: usize| &cg.cycles[seq[i]];
    let first = cyc(0).vertices();
    let k1 = first.len();
    let in_last = |v: Vertex| cyc(l - 1).contains(v);
    let in_second = |v: Vertex| cyc(1).contains(v);
    let mut start = None;
    for p in 0..k1 {
        if !in_last(first[p]) {
            continue;
        }
        let next = (1..=k1).map(|o| (p + o) % k1).find(|&q| in_last(first[q]) || in_second(first[q]));
        if let Some(q) = next.filter(|&q| in_second(first[q])) {
            start = Some((p, q));
            break;
        }
    }
    let (p, q) = start.ok_or_else(|| CycleGraphError::Stitch("no v1/v2 pair on the first cycle".into()))?;
    let mut walk: Vec<Vertex> = Vec::new();
    let mut o = p;
    while o != q {
        walk.push(first[o]);
        o = (o + 1) % k1;
    }
    let mut current = first[q];
    for i in 1..l {
        let c = cyc(i).vertices();
        let k = c.len();
        let at = c.iter().position(|&v| v == current).expect("v_i lies on C_i");
        let mut o = at;
        loop {
            walk.push(c[o]);
            o = (o + 1) % k;
            let v = c[o];
            let done = if i + 1 < l { cyc(i + 1).contains(v) } else { v == first[p] };
            if done {
                current = v;
                break;
            }
            if o == at {
                return Err(CycleGraphError::Stitch(format!("cycle {} never meets its successor", seq[i])));
            }
        }
    }
    let cycle = DirectedCycle::new(d, walk).map_err(|e| CycleGraphError::Stitch(e.to_string()))?;
    if cycle.len() < l {
        return Err(CycleGraphError::Stitch(format!("length {} below {l}", cycle.len())));
    }
    Ok(cycle)
}

/// Lifts each automorphism of `D` to the permutation it induces on `C(D)`.
pub fn lift_automorphisms(fam: &AutomorphismFamily, cg: &CycleGraph) -> Result<AutomorphismFamily, CycleGraphError> {
    if !cg.is_complete() {
        return Err(CycleGraphError::Incomplete);
    }
    let index: HashMap<&DirectedCycle, usize> = cg.cycles.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut lifted = Vec::with_capacity(fam.len());
    for (m, phi) in fam.members().iter().enumerate() {
        let perm: Permutation = cg
            .cycles
            .iter()
            .enumerate()
            .map(|(i, c)| index.get(&c.map(phi)).copied().ok_or(CycleGraphError::ImageMissing(i)))
            .collect::<Result<_, _>>()?;
        if !is_graph_automorphism(&cg.graph, &perm) {
            return Err(CycleGraphError::NotPreserved(m));
        }
        lifted.push(perm);
    }
    Ok(AutomorphismFamily::for_graph(&cg.graph, lifted).expect("checked above"))
}

/// Every vertex can be sent by some member into the closed neighbourhood of
/// every vertex. Relative to `fam` only: `true` certifies the property.
pub fn is_nearly_transitive(g: &Graph, fam: &AutomorphismFamily) -> bool {
    let n = g.vertex_count();
    if fam.degree() != n {
        return n == 0;
    }
    (0..n).all(|v| {
        let mut image = vec![false; n];
        for p in fam.members() {
            image[p[v]] = true;
        }
        (0..n).all(|u| image[u] || g.neighbors(u).iter().any(|&w| image[w]))
    })
}
