//! Enumeration of simple directed cycles.
//!
//! Without a length bound, Johnson's circuit algorithm runs once per root
//! vertex `s` on the strong component of `s` inside `D[{s, s+1, ...}]`, so
//! every cycle is reported exactly once, rooted at its smallest vertex. With
//! a length bound a depth-limited backtracking search is used instead, since
//! Johnson's blocking sets are not sound under a length cap. Roots run in
//! parallel and are merged in root order.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::digraph::{Digraph, DirectedCycle, Vertex};

/// Default cap on the number of enumerated cycles.
pub const DEFAULT_MAX_CYCLES: usize = 1_000_000;
/// Largest order for which enumeration without a count cap is accepted.
pub const UNBOUNDED_MAX_ORDER: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("unbounded enumeration refused on {0} vertices (cap is {UNBOUNDED_MAX_ORDER}); set max_count")]
    Unbounded(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CycleBounds {
    pub max_len: Option<usize>,
    pub max_count: Option<usize>,
}

impl Default for CycleBounds {
    fn default() -> Self {
        CycleBounds {
            max_len: None,
            max_count: Some(DEFAULT_MAX_CYCLES),
        }
    }
}

impl CycleBounds {
    pub fn unbounded() -> Self {
        CycleBounds { max_len: None, max_count: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleEnumeration {
    pub cycles: Vec<DirectedCycle>,
    /// Set when `max_count` cut the enumeration short.
    pub truncated: bool,
    pub bounds: CycleBounds,
}

impl CycleEnumeration {
    /// Complete with respect to all cycles of the host (no length cap, no truncation).
    pub fn is_complete(&self) -> bool {
        !self.truncated && self.bounds.max_len.is_none()
    }

    pub fn circumference(&self) -> usize {
        self.cycles.iter().map(DirectedCycle::len).max().unwrap_or(0)
    }
}

pub fn enumerate_directed_cycles(
    d: &Digraph,
    bounds: CycleBounds,
) -> Result<CycleEnumeration, CycleError> {
    let n = d.vertex_count();
    if bounds.max_count.is_none() && bounds.max_len.is_none() && n > UNBOUNDED_MAX_ORDER {
        return Err(CycleError::Unbounded(n));
    }
    let cap = bounds.max_count.unwrap_or(usize::MAX);
    let max_len = bounds.max_len.filter(|&l| l < n);
    let per_root: Vec<(Vec<DirectedCycle>, bool)> = (0..n)
        .into_par_iter()
        .map(|s| {
            let mut sink = Sink { cycles: Vec::new(), cap, truncated: false };
            match max_len {
                None => johnson_root(d, s, &mut sink),
                Some(l) => bounded_root(d, s, l, &mut sink),
            }
            (sink.cycles, sink.truncated)
        })
        .collect();
    let mut cycles = Vec::new();
    let mut truncated = false;
    for (cs, t) in per_root {
        truncated |= t;
        for c in cs {
            if cycles.len() == cap {
                truncated = true;
                break;
            }
            cycles.push(c);
        }
    }
    Ok(CycleEnumeration { cycles, truncated, bounds })
}

struct Sink {
    cycles: Vec<DirectedCycle>,
    cap: usize,
    truncated: bool,
}

impl Sink {
    /// Returns `false` when the cap is hit.
    fn push(&mut self, seq: &[Vertex]) -> bool {
        if self.cycles.len() >= self.cap {
            self.truncated = true;
            return false;
        }
        self.cycles.push(DirectedCycle::canonical(seq.to_vec()));
        true
    }
}

/// Vertices of the strong component of `s` in `D[{v >= s}]`.
fn component_from(d: &Digraph, s: Vertex) -> Vec<bool> {
    let n = d.vertex_count();
    let allowed: Vec<bool> = (0..n).map(|v| v >= s).collect();
    let fwd = d.descendants_within(s, &allowed);
    let mut reach_fwd = vec![false; n];
    for v in fwd {
        reach_fwd[v] = true;
    }
    // backward reachability inside the forward set
    let mut comp = vec![false; n];
    comp[s] = true;
    let mut stack = vec![s];
    while let Some(v) = stack.pop() {
        for &u in d.in_neighbors(v) {
            if reach_fwd[u] && !comp[u] {
                comp[u] = true;
                stack.push(u);
            }
        }
    }
    comp
}

fn johnson_root(d: &Digraph, s: Vertex, sink: &mut Sink) {
    let comp = component_from(d, s);
    if !d.out_neighbors(s).iter().any(|&w| comp[w]) {
        return;
    }
    let n = d.vertex_count();
    let mut state = Johnson {
        d,
        s,
        comp,
        blocked: vec![false; n],
        block_map: vec![Vec::new(); n],
        stack: Vec::new(),
        stop: false,
    };
    state.circuit(s, sink);
}

struct Johnson<'a> {
    d: &'a Digraph,
    s: Vertex,
    comp: Vec<bool>,
    blocked: Vec<bool>,
    block_map: Vec<Vec<Vertex>>,
    stack: Vec<Vertex>,
    stop: bool,
}

impl Johnson<'_> {
    fn circuit(&mut self, v: Vertex, sink: &mut Sink) -> bool {
        let mut found = false;
        self.stack.push(v);
        self.blocked[v] = true;
        for &w in self.d.out_neighbors(v) {
            if self.stop {
                break;
            }
            if !self.comp[w] {
                continue;
            }
            if w == self.s {
                if !sink.push(&self.stack) {
                    self.stop = true;
                    break;
                }
                found = true;
            } else if !self.blocked[w] && self.circuit(w, sink) {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for &w in self.d.out_neighbors(v) {
                if self.comp[w] && !self.block_map[w].contains(&v) {
                    self.block_map[w].push(v);
                }
            }
        }
        self.stack.pop();
        found
    }

    fn unblock(&mut self, u: Vertex) {
        let mut work = vec![u];
        while let Some(x) = work.pop() {
            if !self.blocked[x] {
                continue;
            }
            self.blocked[x] = false;
            work.extend(std::mem::take(&mut self.block_map[x]));
        }
    }
}

fn bounded_root(d: &Digraph, s: Vertex, max_len: usize, sink: &mut Sink) {
    fn go(d: &Digraph, s: Vertex, max_len: usize, path: &mut Vec<Vertex>, on: &mut [bool], sink: &mut Sink) -> bool {
        let v = *path.last().unwrap();
        for &w in d.out_neighbors(v) {
            if w == s {
                if path.len() >= 2 && !sink.push(path) {
                    return false;
                }
            } else if w > s && !on[w] && path.len() < max_len {
                on[w] = true;
                path.push(w);
                let keep_going = go(d, s, max_len, path, on, sink);
                path.pop();
                on[w] = false;
                if !keep_going {
                    return false;
                }
            }
        }
        true
    }
    let mut on = vec![false; d.vertex_count()];
    on[s] = true;
    go(d, s, max_len, &mut vec![s], &mut on, sink);
}
