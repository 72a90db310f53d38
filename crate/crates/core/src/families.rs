//! Parametric digraph families: products of directed cycles, the ladder chain
//! of directed 4-cycles whose longest cycles are pairwise disjoint, and its
//! wrap-around (vertex-transitive) variant.
//!
//! Chain layout: level `i` holds `x_i = 2i` and `y_i = 2i + 1`; consecutive
//! levels carry the directed 4-cycle `x_i -> x_{i+1} -> y_i -> y_{i+1} -> x_i`.
//! The open chain caps its end levels with digons `x <-> y`; the toroidal
//! variant instead closes the levels cyclically.

use std::io::{self, Write};

use serde::Serialize;
use thiserror::Error;

use crate::budget::{Budget, Search};
use crate::cayley::{CayleyError, CayleySpec};
use crate::cycles::{enumerate_directed_cycles, CycleBounds};
use crate::digraph::Digraph;
use crate::oracle::{brute_hamiltonian, brute_longest_path, max_disjoint_cycles};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{family}: parameter {got} below minimum {min}")]
    TooSmall { family: &'static str, min: usize, got: usize },
    #[error("{family}: parameter {got} above maximum {max}")]
    TooLarge { family: &'static str, max: usize, got: usize },
    #[error("{family}: post-verification failed: {reason}")]
    Verification { family: &'static str, reason: String },
    #[error(transparent)]
    Cayley(#[from] CayleyError),
}

/// `C_{n1} □ C_{n2}`, vertex `(a, b)` at index `a·n2 + b`.
pub fn directed_cycle_product(n1: usize, n2: usize) -> Result<Digraph, FamilyError> {
    let small = n1.min(n2);
    if small < 2 {
        return Err(FamilyError::TooSmall { family: "product", min: 2, got: small });
    }
    Ok(Digraph::directed_cycle(n1).cartesian_product(&Digraph::directed_cycle(n2)))
}

/// Implicit `C_{n1} □ C_{n2}` for sizes too large to materialize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LazyCycleProduct {
    pub n1: u64,
    pub n2: u64,
}

impl LazyCycleProduct {
    pub fn new(n1: u64, n2: u64) -> Result<Self, FamilyError> {
        let small = n1.min(n2);
        if small < 2 {
            return Err(FamilyError::TooSmall { family: "product", min: 2, got: small as usize });
        }
        Ok(LazyCycleProduct { n1, n2 })
    }

    pub fn vertex_count(&self) -> u64 {
        self.n1 * self.n2
    }

    pub fn arc_count(&self) -> u64 {
        2 * self.vertex_count()
    }

    pub fn out_neighbors(&self, v: u64) -> [u64; 2] {
        let (a, b) = (v / self.n2, v % self.n2);
        [((a + 1) % self.n1) * self.n2 + b, a * self.n2 + (b + 1) % self.n2]
    }

    /// Streams the edge-list format without building adjacency.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{} {}", self.vertex_count(), self.arc_count())?;
        for v in 0..self.vertex_count() {
            let mut out = self.out_neighbors(v);
            out.sort_unstable();
            for t in out {
                writeln!(w, "{v} {t}")?;
            }
        }
        Ok(())
    }

    pub fn materialize(&self) -> Digraph {
        directed_cycle_product(self.n1 as usize, self.n2 as usize).expect("validated at construction")
    }
}

fn ladder_arcs(levels: usize, wrap: bool) -> Vec<(usize, usize)> {
    let x = |i: usize| 2 * (i % levels);
    let y = |i: usize| 2 * (i % levels) + 1;
    let blocks = if wrap { levels } else { levels - 1 };
    let mut arcs = Vec::with_capacity(4 * blocks + 4);
    for i in 0..blocks {
        arcs.extend([(x(i), x(i + 1)), (x(i + 1), y(i)), (y(i), y(i + 1)), (y(i + 1), x(i))]);
    }
    if !wrap {
        let last = levels - 1;
        arcs.extend([(x(0), y(0)), (y(0), x(0)), (x(last), y(last)), (y(last), x(last))]);
    }
    arcs
}

/// Properties checked on every generated chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub k: usize,
    pub vertices: usize,
    pub circumference: usize,
    pub regularity: Option<usize>,
    pub strongly_2_connected: bool,
    pub disjoint_longest_cycles: usize,
    /// Longest directed path found; exact unless the search budget ran out.
    pub longest_path: usize,
    pub longest_path_exact: bool,
}

pub fn verify_chain(d: &Digraph, k: usize, budget: &mut Budget) -> ChainReport {
    let e = enumerate_directed_cycles(d, CycleBounds::default()).expect("count cap set");
    let circumference = if e.truncated { 0 } else { e.circumference() };
    let longest: Vec<_> = e.cycles.iter().filter(|c| c.len() == circumference).cloned().collect();
    let (longest_path, exact) = match brute_longest_path(d, budget) {
        Ok(Search::Exact(p)) => (p.len(), true),
        Ok(Search::Unknown(p)) => (p.map_or(0, |p| p.len()), false),
        Err(_) => (0, false),
    };
    ChainReport {
        k,
        vertices: d.vertex_count(),
        circumference,
        regularity: d.regularity(),
        strongly_2_connected: d.is_strongly_2_connected(),
        disjoint_longest_cycles: if d.vertex_count() <= 64 { max_disjoint_cycles(&longest).len() } else { 0 },
        longest_path,
        longest_path_exact: exact,
    }
}

/// Largest `k` whose chain fits the exact path search.
pub const FIGURE1_MAX_K: usize = crate::oracle::MASK_SEARCH_MAX_ORDER / 4;

/// Chain of `2k - 1` directed 4-cycles on `4k` vertices: 2-regular, strongly
/// 2-connected, every longest cycle has length four and `k` of them are
/// pairwise disjoint, while a directed path runs through all vertices.
pub fn figure1_chain(k: usize) -> Result<(Digraph, ChainReport), FamilyError> {
    if k < 1 {
        return Err(FamilyError::TooSmall { family: "figure1", min: 1, got: k });
    }
    if k > FIGURE1_MAX_K {
        return Err(FamilyError::TooLarge { family: "figure1", max: FIGURE1_MAX_K, got: k });
    }
    let d = Digraph::from_arcs(4 * k, ladder_arcs(2 * k, false)).expect("ladder arcs are simple");
    let report = verify_chain(&d, k, &mut Budget::default());
    let fail = |reason: String| Err(FamilyError::Verification { family: "figure1", reason });
    if report.circumference != 4 {
        return fail(format!("circumference {}", report.circumference));
    }
    if report.regularity != Some(2) || !report.strongly_2_connected {
        return fail("not a 2-regular strongly 2-connected digraph".into());
    }
    if report.disjoint_longest_cycles < k {
        return fail(format!("only {} disjoint longest cycles", report.disjoint_longest_cycles));
    }
    if report.longest_path < k {
        return fail(format!("longest path {} shorter than k", report.longest_path));
    }
    Ok((d, report))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToroidalReport {
    pub n: usize,
    pub vertices: usize,
    pub regularity: Option<usize>,
    pub translations_transitive: bool,
    /// Decided for up to 40 vertices, `None` beyond or on budget exhaustion.
    pub hamiltonian: Option<bool>,
}

/// Wrap-around chain on `8n + 4` vertices: `4n + 2` levels closed cyclically.
/// Realized as `Cay(Z_{4n+2} × Z_2, {(1,0), (4n+1,1)})`, so left translations
/// certify vertex-transitivity.
pub fn toroidal_gadget(n: usize) -> Result<(CayleySpec, Digraph, ToroidalReport), FamilyError> {
    if n < 1 {
        return Err(FamilyError::TooSmall { family: "toroidal", min: 1, got: n });
    }
    let levels = 4 * n + 2;
    let spec = CayleySpec::product(levels, 2, &[(1, 0), (levels - 1, 1)])?;
    let d = spec.digraph();
    let fail = |reason: String| Err(FamilyError::Verification { family: "toroidal", reason });
    let ladder = Digraph::from_arcs(2 * levels, ladder_arcs(levels, true)).expect("ladder arcs are simple");
    if d != ladder {
        return fail("Cayley realization differs from the ladder wiring".into());
    }
    let translations_transitive = crate::cayley::left_translations(&spec).maps_every_pair();
    let hamiltonian = match brute_hamiltonian(&d, &mut Budget::default()) {
        Ok(h) => h.decided(),
        Err(_) => None,
    };
    let report = ToroidalReport {
        n,
        vertices: d.vertex_count(),
        regularity: d.regularity(),
        translations_transitive,
        hamiltonian,
    };
    if report.vertices != 8 * n + 4 || report.regularity != Some(2) || !translations_transitive {
        return fail("size, regularity or transitivity check failed".into());
    }
    if n <= 2 && report.hamiltonian != Some(false) {
        return fail(format!("Hamiltonicity {:?}", report.hamiltonian));
    }
    Ok((spec, d, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products() {
        assert_eq!(directed_cycle_product(2, 2).unwrap().vertex_count(), 4);
        assert!(directed_cycle_product(1, 5).is_err());
        let lazy = LazyCycleProduct::new(880, 8736).unwrap();
        assert_eq!(lazy.vertex_count(), 7_687_680);
        let small = LazyCycleProduct::new(3, 4).unwrap();
        let d = small.materialize();
        for v in 0..12 {
            let mut out = small.out_neighbors(v as u64).map(|w| w as usize).to_vec();
            out.sort();
            assert_eq!(out, d.out_neighbors(v));
        }
        let mut buf = Vec::new();
        small.write_edge_list(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), crate::format::write_edge_list(&d));
    }

    #[test]
    fn chain_properties() {
        for k in 1..=4 {
            let (d, r) = figure1_chain(k).unwrap();
            assert_eq!(d.vertex_count(), 4 * k);
            assert_eq!(r.circumference, 4);
            assert!(r.disjoint_longest_cycles >= k);
            assert_eq!(r.longest_path, 4 * k - 1);
            assert!(r.longest_path_exact);
        }
        assert!(figure1_chain(0).is_err());
        assert!(matches!(figure1_chain(17), Err(FamilyError::TooLarge { .. })));
    }

    #[test]
    fn toroidal_small() {
        let (_, d, r) = toroidal_gadget(1).unwrap();
        assert_eq!(d.vertex_count(), 12);
        assert_eq!(r.hamiltonian, Some(false));
        let (_, d, _) = toroidal_gadget(2).unwrap();
        assert_eq!(d.vertex_count(), 20);
        let (_, d, r) = toroidal_gadget(3).unwrap();
        assert_eq!(d.vertex_count(), 28);
        assert!(r.translations_transitive);
    }
}
