//! Exact brute-force oracles: Hamiltonicity, longest cycle and path, induced
//! cycles of undirected graphs, and disjoint-cycle packing.
//!
//! Every search here is either bounded by construction (bitmask dynamic
//! programming) or charged against a node [`Budget`]; budget exhaustion yields
//! an `Unknown` outcome carrying the best object found, never a guess.

use serde::Serialize;
use thiserror::Error;

use crate::budget::{Budget, Search};
use crate::cycles::{enumerate_directed_cycles, CycleBounds};
use crate::digraph::{Digraph, DirectedCycle, DirectedPath, Vertex};
use crate::graph::Graph;

/// Largest order handled by the subset dynamic programme.
pub const HAMILTON_DP_MAX_ORDER: usize = 24;
/// Largest order handled by budgeted backtracking.
pub const HAMILTON_BACKTRACK_MAX_ORDER: usize = 40;
/// Largest order for the mask-based longest cycle / path searches.
pub const MASK_SEARCH_MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{order} vertices exceeds the oracle limit of {limit}")]
    TooLarge { order: usize, limit: usize },
}

fn check_order(order: usize, limit: usize) -> Result<(), OracleError> {
    if order > limit {
        Err(OracleError::TooLarge { order, limit })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hamiltonicity {
    Cycle(DirectedCycle),
    Absent,
    Unknown,
}

impl Hamiltonicity {
    pub fn decided(&self) -> Option<bool> {
        match self {
            Hamiltonicity::Cycle(_) => Some(true),
            Hamiltonicity::Absent => Some(false),
            Hamiltonicity::Unknown => None,
        }
    }
}

fn out_masks(d: &Digraph) -> Vec<u64> {
    (0..d.vertex_count())
        .map(|v| d.out_neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

fn in_masks(d: &Digraph) -> Vec<u64> {
    (0..d.vertex_count())
        .map(|v| d.in_neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

/// Hamilton cycle search: subset DP for `n <= 24`, budgeted backtracking up to 40.
pub fn brute_hamiltonian(d: &Digraph, budget: &mut Budget) -> Result<Hamiltonicity, OracleError> {
    let n = d.vertex_count();
    check_order(n, HAMILTON_BACKTRACK_MAX_ORDER)?;
    if n < 2 || !d.is_strongly_connected() {
        return Ok(Hamiltonicity::Absent);
    }
    if n <= HAMILTON_DP_MAX_ORDER {
        Ok(hamilton_dp(d))
    } else {
        Ok(hamilton_backtrack(d, budget))
    }
}

/// `ends[S]` = vertices `v` such that some path from 0 covers exactly `S ∪ {0}`
/// and ends at `v`; masks always contain vertex 0, so index by `mask >> 1`.
fn hamilton_dp(d: &Digraph) -> Hamiltonicity {
    let n = d.vertex_count();
    let out = out_masks(d);
    let size = 1usize << (n - 1);
    let mut ends = vec![0u32; size];
    ends[0] = 1;
    for idx in 0..size {
        let cur = ends[idx];
        if cur == 0 {
            continue;
        }
        let mask = ((idx as u64) << 1) | 1;
        let mut e = cur;
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut fresh = out[v] & !mask;
            while fresh != 0 {
                let w = fresh.trailing_zeros() as usize;
                fresh &= fresh - 1;
                ends[((mask | 1 << w) >> 1) as usize] |= 1 << w;
            }
        }
    }
    let full = size - 1;
    let into_zero = in_masks(d)[0] as u32;
    let closing = ends[full] & into_zero;
    if closing == 0 {
        return Hamiltonicity::Absent;
    }
    let mut cur = closing.trailing_zeros() as usize;
    let mut mask = ((full as u64) << 1) | 1;
    let mut seq = vec![cur];
    let ins = in_masks(d);
    while cur != 0 {
        mask &= !(1 << cur);
        let prev = ends[(mask >> 1) as usize] as u64 & ins[cur];
        cur = prev.trailing_zeros() as usize;
        seq.push(cur);
    }
    seq.reverse();
    Hamiltonicity::Cycle(DirectedCycle::new(d, seq).expect("reconstructed Hamilton cycle"))
}

fn hamilton_backtrack(d: &Digraph, budget: &mut Budget) -> Hamiltonicity {
    let n = d.vertex_count();
    let out = out_masks(d);
    let ins = in_masks(d);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };

    struct Ctx<'a> {
        out: &'a [u64],
        ins: &'a [u64],
        all: u64,
    }

    fn feasible(ctx: &Ctx, visited: u64, cur: usize) -> bool {
        let free = ctx.all & !visited;
        let mut rest = free;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if ctx.ins[v] & (free | 1 << cur) == 0 || ctx.out[v] & (free | 1) == 0 {
                return false;
            }
        }
        true
    }

    fn go(ctx: &Ctx, path: &mut Vec<usize>, visited: u64, budget: &mut Budget) -> Option<bool> {
        if !budget.spend() {
            return None;
        }
        let cur = *path.last().unwrap();
        if visited == ctx.all {
            return Some(ctx.out[cur] & 1 == 1);
        }
        if !feasible(ctx, visited, cur) {
            return Some(false);
        }
        let mut next = ctx.out[cur] & !visited;
        while next != 0 {
            let w = next.trailing_zeros() as usize;
            next &= next - 1;
            path.push(w);
            match go(ctx, path, visited | 1 << w, budget) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            path.pop();
        }
        Some(false)
    }

    let ctx = Ctx { out: &out, ins: &ins, all };
    let mut path = vec![0];
    match go(&ctx, &mut path, 1, budget) {
        Some(true) => Hamiltonicity::Cycle(DirectedCycle::new(d, path).expect("valid cycle")),
        Some(false) => Hamiltonicity::Absent,
        None => Hamiltonicity::Unknown,
    }
}

/// Vertices reachable from `from` through `allowed` (excluding `from` unless re-entered).
fn reach_mask(out: &[u64], from: usize, allowed: u64) -> u64 {
    let mut seen = 0u64;
    let mut frontier = out[from] & allowed;
    while frontier != 0 {
        seen |= frontier;
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= out[v];
        }
        frontier = next & allowed & !seen;
    }
    seen
}

/// Longest directed cycle; `Exact(None)` for acyclic inputs.
///
/// Each cycle is searched from its smallest vertex; a branch is cut when its
/// length plus the number of vertices still reachable cannot beat the best.
pub fn brute_longest_cycle(
    d: &Digraph,
    budget: &mut Budget,
) -> Result<Search<Option<DirectedCycle>>, OracleError> {
    let n = d.vertex_count();
    check_order(n, MASK_SEARCH_MAX_ORDER)?;
    let out = out_masks(d);
    let mut best: Option<Vec<Vertex>> = None;
    let mut complete = true;

    struct Run<'a> {
        out: &'a [u64],
        root: usize,
        above: u64,
        best: &'a mut Option<Vec<Vertex>>,
    }

    fn go(r: &mut Run, path: &mut Vec<usize>, visited: u64, budget: &mut Budget) -> bool {
        if !budget.spend() {
            return false;
        }
        let cur = *path.last().unwrap();
        let best_len = r.best.as_ref().map_or(0, Vec::len);
        if path.len() >= 2 && r.out[cur] >> r.root & 1 == 1 && path.len() > best_len {
            *r.best = Some(path.clone());
        }
        let allowed = r.above & !visited;
        let reach = reach_mask(r.out, cur, allowed);
        let best_len = r.best.as_ref().map_or(0, Vec::len);
        if path.len() + reach.count_ones() as usize <= best_len {
            return true;
        }
        let mut next = r.out[cur] & allowed;
        while next != 0 {
            let w = next.trailing_zeros() as usize;
            next &= next - 1;
            path.push(w);
            let ok = go(r, path, visited | 1 << w, budget);
            path.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    for root in 0..n {
        if best.as_ref().map_or(0, Vec::len) >= n - root {
            break;
        }
        let above = if root + 1 >= 64 { 0 } else { !0u64 << (root + 1) } & full_mask(n);
        let mut run = Run { out: &out, root, above, best: &mut best };
        if !go(&mut run, &mut vec![root], 1 << root, budget) {
            complete = false;
            break;
        }
    }
    let cycle = best.map(|seq| DirectedCycle::new(d, seq).expect("valid cycle"));
    Ok(if complete { Search::Exact(cycle) } else { Search::Unknown(cycle.map(Some)) })
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Longest directed path (at least the single vertex 0 when `n >= 1`).
pub fn brute_longest_path(d: &Digraph, budget: &mut Budget) -> Result<Search<DirectedPath>, OracleError> {
    let n = d.vertex_count();
    check_order(n, MASK_SEARCH_MAX_ORDER)?;
    let out = out_masks(d);
    let all = full_mask(n);
    let mut best: Vec<Vertex> = if n > 0 { vec![0] } else { vec![] };

    fn go(out: &[u64], all: u64, path: &mut Vec<usize>, visited: u64, best: &mut Vec<usize>, budget: &mut Budget) -> bool {
        if !budget.spend() {
            return false;
        }
        if path.len() > best.len() {
            *best = path.clone();
        }
        let cur = *path.last().unwrap();
        let allowed = all & !visited;
        let reach = reach_mask(out, cur, allowed);
        if path.len() + reach.count_ones() as usize <= best.len() {
            return true;
        }
        let mut next = out[cur] & allowed;
        while next != 0 {
            let w = next.trailing_zeros() as usize;
            next &= next - 1;
            path.push(w);
            let ok = go(out, all, path, visited | 1 << w, best, budget);
            path.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    let mut complete = true;
    for s in 0..n {
        if best.len() == n {
            break;
        }
        if !go(&out, all, &mut vec![s], 1 << s, &mut best, budget) {
            complete = false;
            break;
        }
    }
    let path = DirectedPath::new(d, best).expect("valid path");
    Ok(if complete { Search::Exact(path) } else { Search::Unknown(Some(path)) })
}

trait InducedVisitor {
    fn found(&mut self, cycle: &[Vertex]);
    /// Branches whose cycle-length bound does not exceed this are cut.
    fn threshold(&self) -> Option<usize>;
}

/// Depth-first search over induced paths rooted at the smallest vertex `s`.
/// A path `s, p1, ..., pk` may grow by `w > s` adjacent to `pk` and to no
/// other path vertex except possibly `s`; touching `s` closes a chordless cycle.
struct InducedSearch<'a> {
    g: &'a Graph,
    /// number of non-root path vertices adjacent to each vertex
    touch: Vec<u32>,
    on_path: Vec<bool>,
    path: Vec<Vertex>,
}

impl<'a> InducedSearch<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.vertex_count();
        InducedSearch { g, touch: vec![0; n], on_path: vec![false; n], path: Vec::new() }
    }

    fn push(&mut self, v: Vertex) {
        if !self.path.is_empty() {
            for &x in self.g.neighbors(v) {
                self.touch[x] += 1;
            }
        }
        self.on_path[v] = true;
        self.path.push(v);
    }

    fn pop(&mut self) {
        let v = self.path.pop().unwrap();
        self.on_path[v] = false;
        if !self.path.is_empty() {
            for &x in self.g.neighbors(v) {
                self.touch[x] -= 1;
            }
        }
    }

    /// Upper bound on the length of any cycle completing the current path.
    fn bound(&self, root: Vertex) -> usize {
        let last = *self.path.last().unwrap();
        let extra = (root + 1..self.g.vertex_count())
            .filter(|&v| {
                !self.on_path[v] && (self.touch[v] == 0 || (self.touch[v] == 1 && self.g.has_edge(v, last)))
            })
            .count();
        self.path.len() + extra
    }

    /// Reports chordless cycles rooted at `root`, each once (second vertex < last).
    fn run<V: InducedVisitor>(&mut self, root: Vertex, budget: &mut Budget, visit: &mut V) -> bool {
        self.push(root);
        let ok = self.extend(root, budget, visit);
        self.pop();
        ok
    }

    fn extend<V: InducedVisitor>(&mut self, root: Vertex, budget: &mut Budget, visit: &mut V) -> bool {
        if !budget.spend() {
            return false;
        }
        let last = *self.path.last().unwrap();
        let k = self.path.len();
        let candidates: Vec<Vertex> = self.g.neighbors(last).iter().copied().filter(|&w| w > root).collect();
        for w in candidates {
            if self.on_path[w] || (k > 1 && self.touch[w] != 1) {
                continue;
            }
            if k > 1 && self.g.has_edge(w, root) {
                if self.path[1] < w {
                    self.path.push(w);
                    visit.found(&self.path);
                    self.path.pop();
                }
                continue;
            }
            self.push(w);
            let cut = visit.threshold().is_some_and(|t| self.bound(root) <= t);
            let ok = cut || self.extend(root, budget, visit);
            self.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

struct Longest(Option<Vec<Vertex>>);

impl InducedVisitor for Longest {
    fn found(&mut self, cycle: &[Vertex]) {
        if cycle.len() > self.0.as_ref().map_or(0, Vec::len) {
            self.0 = Some(cycle.to_vec());
        }
    }
    fn threshold(&self) -> Option<usize> {
        Some(self.0.as_ref().map_or(0, Vec::len))
    }
}

struct Collect {
    min_len: usize,
    found: Vec<Vec<Vertex>>,
}

impl InducedVisitor for Collect {
    fn found(&mut self, cycle: &[Vertex]) {
        if cycle.len() >= self.min_len {
            self.found.push(cycle.to_vec());
        }
    }
    fn threshold(&self) -> Option<usize> {
        None
    }
}

/// Longest chordless cycle of an undirected graph; `Exact(None)` for forests
/// (triangles count as induced cycles).
pub fn brute_longest_induced_cycle(g: &Graph, budget: &mut Budget) -> Search<Option<Vec<Vertex>>> {
    let n = g.vertex_count();
    let mut best = Longest(None);
    let mut search = InducedSearch::new(g);
    for root in 0..n {
        if best.threshold().unwrap() >= n - root {
            break;
        }
        if !search.run(root, budget, &mut best) {
            return Search::Unknown(Some(best.0));
        }
    }
    Search::Exact(best.0)
}

/// All chordless cycles with at least `min_len` vertices, each listed once as
/// `[s, p1, ..., pk]` with `s` minimal and `p1 < pk`.
pub fn induced_cycles(g: &Graph, min_len: usize, budget: &mut Budget) -> Search<Vec<Vec<Vertex>>> {
    let mut collect = Collect { min_len: min_len.max(3), found: Vec::new() };
    let mut search = InducedSearch::new(g);
    for root in 0..g.vertex_count() {
        if !search.run(root, budget, &mut collect) {
            return Search::Unknown(Some(collect.found));
        }
    }
    Search::Exact(collect.found)
}

/// Maximum set of pairwise vertex-disjoint cycles (hosts with at most 64
/// vertices); returns indices in ascending order, lexicographically first.
pub fn max_disjoint_cycles(cycles: &[DirectedCycle]) -> Vec<usize> {
    let masks: Vec<u64> = cycles.iter().map(DirectedCycle::mask).collect();
    let mut best = Vec::new();
    fn go(masks: &[u64], start: usize, used: u64, chosen: &mut Vec<usize>, best: &mut Vec<usize>) {
        if chosen.len() > best.len() {
            *best = chosen.clone();
        }
        if chosen.len() + (masks.len() - start) <= best.len() {
            return;
        }
        for i in start..masks.len() {
            if masks[i] & used == 0 {
                chosen.push(i);
                go(masks, i + 1, used | masks[i], chosen, best);
                chosen.pop();
            }
        }
    }
    go(&masks, 0, 0, &mut Vec::new(), &mut best);
    best
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LongestCycleIntersection {
    /// `None` when the enumeration was truncated.
    pub pairwise_intersect: Option<bool>,
    pub circumference: usize,
    pub longest_cycle_count: usize,
    /// Two vertex-disjoint longest cycles, when they exist.
    pub disjoint_witness: Option<(DirectedCycle, DirectedCycle)>,
}

/// Whether every two longest directed cycles share a vertex.
pub fn longest_cycles_pairwise_intersect(d: &Digraph, max_cycles: usize) -> LongestCycleIntersection {
    let bounds = CycleBounds { max_len: None, max_count: Some(max_cycles) };
    let e = enumerate_directed_cycles(d, bounds).expect("count cap set");
    let circumference = e.circumference();
    let longest: Vec<&DirectedCycle> = e.cycles.iter().filter(|c| c.len() == circumference).collect();
    let mut witness = None;
    'outer: for (i, a) in longest.iter().enumerate() {
        let sa: std::collections::BTreeSet<_> = a.vertices().iter().collect();
        for b in &longest[i + 1..] {
            if !b.vertices().iter().any(|v| sa.contains(v)) {
                witness = Some(((*a).clone(), (*b).clone()));
                break 'outer;
            }
        }
    }
    let pairwise = if witness.is_some() {
        Some(false)
    } else if e.truncated {
        None
    } else {
        Some(true)
    };
    LongestCycleIntersection {
        pairwise_intersect: pairwise,
        circumference,
        longest_cycle_count: longest.len(),
        disjoint_witness: witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize) -> Digraph {
        Digraph::directed_cycle(n)
    }

    #[test]
    fn hamiltonian_products() {
        let p22 = c(2).cartesian_product(&c(2));
        let Hamiltonicity::Cycle(h) = brute_hamiltonian(&p22, &mut Budget::default()).unwrap() else {
            panic!("C2 x C2 is Hamiltonian");
        };
        assert_eq!(h.len(), 4);
        let p23 = c(2).cartesian_product(&c(3));
        assert_eq!(brute_hamiltonian(&p23, &mut Budget::default()).unwrap(), Hamiltonicity::Absent);
        assert_eq!(brute_hamiltonian(&Digraph::directed_path(4), &mut Budget::default()).unwrap(), Hamiltonicity::Absent);
        assert!(brute_hamiltonian(&c(41), &mut Budget::default()).is_err());
    }

    #[test]
    fn backtracking_agrees_with_dp() {
        // C5 x C5 has 25 vertices and goes to the backtracking branch; gcd 5 with
        // split (1,4) coprime, so Hamiltonian
        let p55 = c(5).cartesian_product(&c(5));
        let r = brute_hamiltonian(&p55, &mut Budget::default()).unwrap();
        assert!(matches!(r, Hamiltonicity::Cycle(ref h) if h.len() == 25));
        for d in [c(2).cartesian_product(&c(12)), c(4).cartesian_product(&c(6))] {
            assert_eq!(hamilton_dp(&d).decided(), hamilton_backtrack(&d, &mut Budget::default()).decided());
        }
        assert_eq!(hamilton_backtrack(&p55, &mut Budget::new(3)), Hamiltonicity::Unknown);
    }

    #[test]
    fn longest_cycle_and_path() {
        let r = brute_longest_cycle(&c(5), &mut Budget::default()).unwrap();
        assert_eq!(r.exact().flatten().unwrap().len(), 5);
        let p23 = c(2).cartesian_product(&c(3));
        let r = brute_longest_cycle(&p23, &mut Budget::default()).unwrap();
        assert_eq!(r.exact().flatten().unwrap().len(), 5);
        let r = brute_longest_cycle(&Digraph::directed_path(5), &mut Budget::default()).unwrap();
        assert_eq!(r, Search::Exact(None));
        let lp = brute_longest_path(&Digraph::directed_path(5), &mut Budget::default()).unwrap();
        assert_eq!(lp.exact().unwrap().len(), 4);
        let lp = brute_longest_path(&c(6), &mut Budget::default()).unwrap();
        assert_eq!(lp.exact().unwrap().len(), 5);
        let k = Digraph::complete_bidirected(9);
        assert!(matches!(brute_longest_cycle(&k, &mut Budget::new(1)).unwrap(), Search::Unknown(_)));
    }

    #[test]
    fn induced_cycles_small_graphs() {
        let g = Graph::cycle(7);
        let r = brute_longest_induced_cycle(&g, &mut Budget::default());
        assert_eq!(r.exact().flatten().unwrap().len(), 7);
        let all = induced_cycles(&g, 4, &mut Budget::default()).exact().unwrap();
        assert_eq!(all, vec![vec![0, 1, 2, 3, 4, 5, 6]]);
        // K4 has only triangles
        let k4 = Digraph::complete_bidirected(4).underlying_graph();
        assert_eq!(induced_cycles(&k4, 3, &mut Budget::default()).exact().unwrap().len(), 4);
        assert!(induced_cycles(&k4, 4, &mut Budget::default()).exact().unwrap().is_empty());
        let tree = Graph::from_edges(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(brute_longest_induced_cycle(&tree, &mut Budget::default()), Search::Exact(None));
        // prism C5 x K2: rims (5), and the 4-cycles through two rungs
        let p = Graph::prism(5);
        let cyc = induced_cycles(&p, 4, &mut Budget::default()).exact().unwrap();
        assert_eq!(cyc.iter().filter(|c| c.len() == 4).count(), 5);
        assert_eq!(cyc.iter().filter(|c| c.len() == 5).count(), 2);
        assert!(cyc.iter().all(|c| p.is_induced_cycle(c)));
    }

    #[test]
    fn packing_and_intersection() {
        let two = c(3).disjoint_union(&c(3));
        let info = longest_cycles_pairwise_intersect(&two, 1000);
        assert_eq!(info.pairwise_intersect, Some(false));
        let e = enumerate_directed_cycles(&two, CycleBounds::default()).unwrap();
        assert_eq!(max_disjoint_cycles(&e.cycles).len(), 2);
        assert_eq!(longest_cycles_pairwise_intersect(&c(6), 1000).pairwise_intersect, Some(true));
    }
}
