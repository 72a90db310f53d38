//! Long cycles in vertex-transitive digraphs, split on the diameter.
//!
//! With `d³ <= n²` the descendant-counting search runs directly. Otherwise
//! the cycle graph is built, automorphisms are lifted to it, a long induced
//! cycle is extracted and stitched into a directed cycle; the longest
//! enumerated cycle competes as an incidental candidate.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::automorphism::AutomorphismFamily;
use crate::budget::{Budget, Search};
use crate::cycle_graph::{is_nearly_transitive, lift_automorphisms, stitch_directed_cycle, CycleGraph};
use crate::cycles::CycleBounds;
use crate::dfs::{dfs_long_cycle, CycleSearchResult, LongCycleError};
use crate::digraph::{Digraph, DirectedCycle, Distance};
use crate::expansion::{expansion_exact, EXPANSION_EXACT_MAX_ORDER};
use crate::induced::{induced_cycle_via_symmetry, Method, MIN_DIAMETER};
use crate::oracle::brute_longest_induced_cycle;

/// Length floor `c·n^{1/3}` with `c = 1/9`, checked as `729·len³ >= n`.
pub const CONSTANT: &str = "1/9";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("automorphism family does not certify vertex transitivity")]
    NotCertified,
    #[error("digraph is not strongly connected")]
    NotStronglyConnected,
    #[error(transparent)]
    LongCycle(#[from] LongCycleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    SmallDiameter,
    LargeDiameter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleSource {
    Dfs,
    Stitched,
    Incidental,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleGraphTrace {
    pub cycles: usize,
    pub truncated: bool,
    pub diameter: Option<usize>,
    pub nearly_transitive: bool,
    pub induced_cycle: Option<Vec<usize>>,
    pub induced_method: Option<Method>,
    pub stitched_length: Option<usize>,
    pub incidental_length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub n: usize,
    pub diameter: usize,
    pub d_cubed: u128,
    pub n_squared: u128,
    pub branch: Branch,
    pub cycle: DirectedCycle,
    pub source: CycleSource,
    /// Large-diameter branch abandoned because enumeration was truncated.
    pub partial: bool,
    pub constant: &'static str,
    pub bound_holds: bool,
    pub dfs: Option<CycleSearchResult>,
    pub cycle_graph: Option<CycleGraphTrace>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineOptions {
    pub bounds: CycleBounds,
    pub budget_nodes: u64,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { bounds: CycleBounds::default(), budget_nodes: crate::budget::DEFAULT_NODE_BUDGET }
    }
}

pub fn small_diameter_branch(n: usize, diameter: usize) -> bool {
    (diameter as u128).pow(3) <= (n as u128).pow(2)
}

fn run_dfs(d: &Digraph) -> Result<CycleSearchResult, LongCycleError> {
    let n = d.vertex_count();
    let alpha: Option<Ratio<u64>> =
        (n <= EXPANSION_EXACT_MAX_ORDER).then(|| expansion_exact(d).ok().map(|r| r.alpha_lower)).flatten();
    dfs_long_cycle(d, alpha)
}

/// `fam` must map every vertex to every vertex.
pub fn omega_n13_pipeline(
    d: &Digraph,
    fam: &AutomorphismFamily,
    opts: PipelineOptions,
) -> Result<PipelineReport, PipelineError> {
    let n = d.vertex_count();
    if fam.degree() != n || !fam.maps_every_pair() {
        return Err(PipelineError::NotCertified);
    }
    let diameter = match d.directed_diameter() {
        Distance::Finite(k) => k,
        Distance::Infinite => return Err(PipelineError::NotStronglyConnected),
    };
    let branch = if small_diameter_branch(n, diameter) { Branch::SmallDiameter } else { Branch::LargeDiameter };
    let finish = |cycle: DirectedCycle, source, partial, dfs, cycle_graph| {
        let len = cycle.len() as u128;
        PipelineReport {
            n,
            diameter,
            d_cubed: (diameter as u128).pow(3),
            n_squared: (n as u128).pow(2),
            branch,
            bound_holds: 729 * len.pow(3) >= n as u128,
            cycle,
            source,
            partial,
            constant: CONSTANT,
            dfs,
            cycle_graph,
        }
    };
    if branch == Branch::SmallDiameter {
        let r = run_dfs(d)?;
        return Ok(finish(r.cycle.clone(), CycleSource::Dfs, false, Some(r), None));
    }

    let cg = CycleGraph::of(d, opts.bounds).expect("bounds carry a count cap");
    if !cg.is_complete() || cg.is_empty() {
        let r = run_dfs(d)?;
        let trace = CycleGraphTrace {
            cycles: cg.len(),
            truncated: cg.is_truncated(),
            diameter: None,
            nearly_transitive: false,
            induced_cycle: None,
            induced_method: None,
            stitched_length: None,
            incidental_length: 0,
        };
        return Ok(finish(r.cycle.clone(), CycleSource::Dfs, true, Some(r), Some(trace)));
    }
    let incidental = cg
        .cycles()
        .iter()
        .fold(None::<&DirectedCycle>, |best, c| match best {
            Some(b) if b.len() >= c.len() => Some(b),
            _ => Some(c),
        })
        .expect("nonempty")
        .clone();
    let lifted = lift_automorphisms(fam, &cg).expect("complete cycle graph of a certified host");
    let nearly_transitive = is_nearly_transitive(cg.graph(), &lifted);
    let cg_diameter = cg.graph().diameter().finite();
    let mut budget = Budget::new(opts.budget_nodes);
    let (induced, method) = if nearly_transitive && cg_diameter.is_some_and(|k| k >= MIN_DIAMETER) {
        match induced_cycle_via_symmetry(cg.graph(), &lifted, &mut budget) {
            Ok(r) => (Some(r.cycle), Some(r.method)),
            Err(_) => (None, None),
        }
    } else {
        let found = brute_longest_induced_cycle(cg.graph(), &mut budget);
        let exact = found.is_exact();
        let cycle = match found {
            Search::Exact(c) => c,
            Search::Unknown(c) => c.flatten(),
        };
        let why = if nearly_transitive { "diameter below the construction threshold" } else { "near transitivity not certified" };
        (cycle, Some(Method::Fallback { failed_step: why.into(), exact }))
    };
    let stitched = induced
        .as_ref()
        .filter(|c| c.len() >= 4)
        .and_then(|c| stitch_directed_cycle(d, &cg, c).ok());
    let trace = CycleGraphTrace {
        cycles: cg.len(),
        truncated: false,
        diameter: cg_diameter,
        nearly_transitive,
        induced_cycle: induced,
        induced_method: method,
        stitched_length: stitched.as_ref().map(DirectedCycle::len),
        incidental_length: incidental.len(),
    };
    Ok(match stitched {
        Some(s) if s.len() >= incidental.len() => finish(s, CycleSource::Stitched, false, None, Some(trace)),
        _ => finish(incidental, CycleSource::Incidental, false, None, Some(trace)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{left_translations, CayleySpec};

    #[test]
    fn branch_threshold() {
        assert!(small_diameter_branch(12, 4));
        assert!(small_diameter_branch(9, 4));
        assert!(!small_diameter_branch(10, 5));
    }

    #[test]
    fn directed_cycle_returns_itself() {
        let spec = CayleySpec::cyclic(7, &[1]).unwrap();
        let r = omega_n13_pipeline(&spec.digraph(), &left_translations(&spec), PipelineOptions::default()).unwrap();
        assert_eq!(r.cycle.len(), 7);
        assert_eq!(r.branch, Branch::LargeDiameter);
        assert!(r.bound_holds);
    }

    #[test]
    fn small_and_large_branches() {
        let c33 = CayleySpec::product(3, 3, &[(1, 0), (0, 1)]).unwrap();
        let r = omega_n13_pipeline(&c33.digraph(), &left_translations(&c33), PipelineOptions::default()).unwrap();
        assert_eq!(r.branch, Branch::SmallDiameter);
        assert!(r.dfs.as_ref().unwrap().meets_guarantee());
        let c25 = CayleySpec::product(2, 5, &[(1, 0), (0, 1)]).unwrap();
        let d = c25.digraph();
        let r = omega_n13_pipeline(&d, &left_translations(&c25), PipelineOptions::default()).unwrap();
        assert_eq!(r.branch, Branch::LargeDiameter);
        r.cycle.validate(&d).unwrap();
        let trace = r.cycle_graph.unwrap();
        assert!(trace.nearly_transitive);
        assert_eq!(trace.cycles, 37);
    }

    #[test]
    fn requires_certificate() {
        let d = Digraph::directed_cycle(5);
        assert_eq!(
            omega_n13_pipeline(&d, &AutomorphismFamily::identity_only(5), PipelineOptions::default()).unwrap_err(),
            PipelineError::NotCertified
        );
    }
}
