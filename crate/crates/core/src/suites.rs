//! Batch verification over families of small instances. Each suite returns a
//! report with one assertion per case plus a per-case CSV table.

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::{Budget, Search};
use crate::cayley::CayleySpec;
use crate::cycle_graph::{stitch_directed_cycle, CycleGraph};
use crate::cycles::{enumerate_directed_cycles, CycleBounds};
use crate::digraph::DirectedCycle;
use crate::expansion::expansion_check_transitive_bound;
use crate::families::{directed_cycle_product, figure1_chain};
use crate::numgap::{divisibility_gap_bound, gcd, trotter_erdos_necessary};
use crate::oracle::{brute_hamiltonian, brute_longest_cycle, induced_cycles};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub report: Report,
    pub csv: String,
    /// CSV lines of the failing cases.
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.report.passed()
    }
}

struct Case<R> {
    name: String,
    row: R,
    line: String,
    holds: Option<bool>,
}

fn finish<R: Serialize>(mut report: Report, header: &str, cases: Vec<Case<R>>) -> SuiteOutcome {
    let mut csv = format!("{header}\n");
    let mut failures = Vec::new();
    let mut rows = Vec::with_capacity(cases.len());
    for c in cases {
        csv.push_str(&c.line);
        csv.push('\n');
        if c.holds != Some(true) {
            failures.push(c.line.clone());
        }
        report = report.assert_maybe(&c.name, c.holds);
        rows.push(c.row);
    }
    SuiteOutcome { report: report.result(&rows), csv, failures }
}

/// Ordered pairs `n1, n2 >= 2` with `n1·n2 <= max_order`.
pub fn product_pairs(max_order: usize) -> Vec<(usize, usize)> {
    (2..=max_order / 2).flat_map(|a| (2..=max_order / a).map(move |b| (a, b))).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct TrotterErdosRow {
    pub n1: usize,
    pub n2: usize,
    pub d: u64,
    pub condition: bool,
    pub hamiltonian: Option<bool>,
}

/// Hamiltonian products satisfy the coprime-split condition; the converse is
/// recorded per case.
pub fn trotter_erdos_suite(max_order: usize, budget_nodes: u64) -> SuiteOutcome {
    let cases = product_pairs(max_order)
        .into_par_iter()
        .map(|(n1, n2)| {
            let d = directed_cycle_product(n1, n2).expect("factors >= 2");
            let ham = brute_hamiltonian(&d, &mut Budget::new(budget_nodes)).ok().and_then(|h| h.decided());
            let t = trotter_erdos_necessary(n1 as u64, n2 as u64);
            let holds = ham.map(|h| !h || t.holds);
            let cell = |h: Option<bool>| h.map_or("unknown".to_string(), |b| b.to_string());
            Case {
                name: format!("C{n1}xC{n2}"),
                line: format!("{n1},{n2},{},{},{},{}", t.d, t.holds, cell(ham), cell(holds)),
                row: TrotterErdosRow { n1, n2, d: t.d, condition: t.holds, hamiltonian: ham },
                holds,
            }
        })
        .collect();
    let report = Report::new(format!("products n1*n2 <= {max_order}"), "verify trotter-erdos")
        .param("max_order", &max_order)
        .param("budget_nodes", &budget_nodes);
    finish(report, "n1,n2,gcd,condition,hamiltonian,holds", cases)
}

#[derive(Debug, Clone, Serialize)]
pub struct DivisibilityRow {
    pub n1: usize,
    pub n2: usize,
    pub d: u64,
    pub cycles: usize,
    pub all_divisible: bool,
    pub circumference: Option<usize>,
    pub gap: Option<usize>,
    pub bound: u64,
}

/// Every cycle length is a multiple of `gcd(n1, n2)`, and the perimeter gap
/// reaches the divisibility bound.
pub fn divisibility_suite(max_order: usize, budget_nodes: u64) -> SuiteOutcome {
    let cases = product_pairs(max_order)
        .into_par_iter()
        .map(|(n1, n2)| {
            let dg = directed_cycle_product(n1, n2).expect("factors >= 2");
            let n = n1 * n2;
            let d = gcd(n1 as u64, n2 as u64);
            let e = enumerate_directed_cycles(&dg, CycleBounds::unbounded()).expect("no cap needed");
            let all_divisible = e.cycles.iter().all(|c| (c.len() as u64).is_multiple_of(d));
            let circumference = match brute_longest_cycle(&dg, &mut Budget::new(budget_nodes)) {
                Ok(Search::Exact(c)) => Some(c.map_or(0, |c| c.len())),
                _ => None,
            };
            let gap = circumference.map(|c| n - c);
            let bound = divisibility_gap_bound(n1 as u64, n2 as u64);
            let holds = gap.map(|g| all_divisible && g as u64 >= bound && circumference == Some(e.circumference()));
            let opt = |x: Option<usize>| x.map_or("unknown".into(), |v| v.to_string());
            Case {
                name: format!("C{n1}xC{n2}"),
                line: format!(
                    "{n1},{n2},{d},{},{all_divisible},{},{},{bound},{}",
                    e.cycles.len(),
                    opt(circumference),
                    opt(gap),
                    holds.map_or("unknown".into(), |b| b.to_string())
                ),
                row: DivisibilityRow { n1, n2, d, cycles: e.cycles.len(), all_divisible, circumference, gap, bound },
                holds,
            }
        })
        .collect();
    let report = Report::new(format!("products n1*n2 <= {max_order}"), "verify divisibility")
        .param("max_order", &max_order)
        .param("budget_nodes", &budget_nodes);
    finish(report, "n1,n2,gcd,cycles,all_divisible,circumference,gap,bound,holds", cases)
}

/// Chains for `k = 1..=max_k`: circumference 4, 2-regular, strongly
/// 2-connected, at least `⌊k/2⌋` disjoint longest cycles.
pub fn figure1_suite(max_k: usize) -> SuiteOutcome {
    let cases = (1..=max_k)
        .into_par_iter()
        .map(|k| match figure1_chain(k) {
            Ok((_, r)) => {
                let holds = r.circumference == 4
                    && r.regularity == Some(2)
                    && r.strongly_2_connected
                    && r.disjoint_longest_cycles >= k / 2;
                Case {
                    name: format!("k={k}"),
                    line: format!(
                        "{k},{},{},{},{},{},{},{holds}",
                        r.vertices,
                        r.circumference,
                        r.regularity.map_or("none".into(), |x| x.to_string()),
                        r.strongly_2_connected,
                        r.disjoint_longest_cycles,
                        r.longest_path
                    ),
                    row: Some(r),
                    holds: Some(holds),
                }
            }
            Err(e) => Case {
                name: format!("k={k}"),
                line: format!("{k},,,,,,,false # {e}"),
                row: None,
                holds: Some(false),
            },
        })
        .collect();
    let report = Report::new(format!("figure1 k <= {max_k}"), "verify figure1").param("max_k", &max_k);
    finish(report, "k,vertices,circumference,regularity,strongly_2_connected,disjoint_longest,longest_path,holds", cases)
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpansionRow {
    pub instance: String,
    pub n: usize,
    pub diameter: usize,
    pub alpha: String,
    pub bound: String,
    pub holds: bool,
}

/// Exact expansion against `1/(3d)` over a Cayley corpus.
pub fn lemma21_suite(corpus: &[(String, CayleySpec)]) -> SuiteOutcome {
    let cases = corpus
        .par_iter()
        .map(|(name, spec)| {
            let d = spec.digraph();
            match expansion_check_transitive_bound(&d) {
                Ok(c) => {
                    let row = ExpansionRow {
                        instance: name.clone(),
                        n: d.vertex_count(),
                        diameter: c.diameter,
                        alpha: c.alpha.to_string(),
                        bound: c.bound.to_string(),
                        holds: c.holds,
                    };
                    Case {
                        name: name.clone(),
                        line: format!("\"{name}\",{},{},{},{},{}", row.n, row.diameter, row.alpha, row.bound, row.holds),
                        holds: Some(c.holds),
                        row: Some(row),
                    }
                }
                Err(e) => Case {
                    name: name.clone(),
                    line: format!("\"{name}\",{},,,,false # {e}", d.vertex_count()),
                    holds: Some(false),
                    row: None,
                },
            }
        })
        .collect();
    let report = Report::new("small-cayley", "verify lemma21").param("instances", &corpus.len());
    finish(report, "instance,n,diameter,alpha,bound,holds", cases)
}

#[derive(Debug, Clone, Serialize)]
pub struct StitchRow {
    pub instance: String,
    pub n: usize,
    pub cycles: usize,
    pub induced_cycles: usize,
    pub exhaustive: bool,
    pub stitched_ok: usize,
    pub failures: Vec<Vec<usize>>,
}

/// Stitches every induced cycle of length at least 4 of the cycle graph of
/// each host with at most `max_order` vertices.
pub fn lemma27_suite(corpus: &[(String, CayleySpec)], max_order: usize, budget_nodes: u64) -> SuiteOutcome {
    let cases = corpus
        .par_iter()
        .filter(|(_, s)| s.group().order() <= max_order)
        .map(|(name, spec)| {
            let d = spec.digraph();
            let cg = CycleGraph::of(&d, CycleBounds::default()).expect("count cap set");
            let (found, exhaustive) = if cg.is_complete() {
                match induced_cycles(cg.graph(), 4, &mut Budget::new(budget_nodes)) {
                    Search::Exact(v) => (v, true),
                    Search::Unknown(v) => (v.unwrap_or_default(), false),
                }
            } else {
                (Vec::new(), false)
            };
            let failures: Vec<Vec<usize>> = found
                .iter()
                .filter(|seq| {
                    !stitch_directed_cycle(&d, &cg, seq)
                        .is_ok_and(|c: DirectedCycle| c.len() >= seq.len() && c.validate(&d).is_ok())
                })
                .cloned()
                .collect();
            let holds = exhaustive.then_some(failures.is_empty()).or(if failures.is_empty() { None } else { Some(false) });
            let row = StitchRow {
                instance: name.clone(),
                n: d.vertex_count(),
                cycles: cg.len(),
                induced_cycles: found.len(),
                exhaustive,
                stitched_ok: found.len() - failures.len(),
                failures,
            };
            Case {
                name: name.clone(),
                line: format!(
                    "\"{name}\",{},{},{},{},{},{}",
                    row.n,
                    row.cycles,
                    row.induced_cycles,
                    row.exhaustive,
                    row.stitched_ok,
                    holds.map_or("unknown".into(), |b| b.to_string())
                ),
                row,
                holds,
            }
        })
        .collect();
    let report = Report::new("small-cayley", "verify lemma27")
        .param("max_order", &max_order)
        .param("budget_nodes", &budget_nodes);
    finish(report, "instance,n,cycles,induced_cycles,exhaustive,stitched_ok,holds", cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs() {
        assert_eq!(product_pairs(6), vec![(2, 2), (2, 3), (3, 2)]);
    }

    #[test]
    fn small_suites_pass() {
        let t = trotter_erdos_suite(12, 1_000_000);
        assert!(t.passed(), "{}", t.csv);
        assert!(t.csv.contains("2,3,1,false,false,true"));
        let d = divisibility_suite(12, 1_000_000);
        assert!(d.passed(), "{}", d.csv);
        let f = figure1_suite(2);
        assert!(f.passed(), "{}", f.csv);
    }
}
