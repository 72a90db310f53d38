//! End-to-end acceptance criteria. Each criterion builds a deterministic text
//! report; the last criterion reruns the others and compares those reports
//! byte for byte across runs and thread pools.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use vtc::budget::{Budget, Search};
use vtc::cayley::{left_translations, CayleySpec};
use vtc::corpus::small_cayley;
use vtc::cycle_graph::{stitch_directed_cycle, CycleGraph};
use vtc::cycles::{enumerate_directed_cycles, CycleBounds};
use vtc::dfs::{dfs_long_cycle, long_path};
use vtc::digraph::Digraph;
use vtc::expansion::expansion_exact;
use vtc::families::{directed_cycle_product, figure1_chain, toroidal_gadget};
use vtc::numgap::{lemma34_construct, revalidate, search_prime_partitionable, trotter_erdos_necessary};
use vtc::oracle::{brute_hamiltonian, brute_longest_cycle, induced_cycles, max_disjoint_cycles, Hamiltonicity};
use vtc::pipeline::{omega_n13_pipeline, Branch, PipelineOptions};

struct Outcome {
    passed: bool,
    report: String,
}

impl Outcome {
    fn new(passed: bool, report: String) -> Self {
        Outcome { passed, report }
    }
}

fn euclid(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        euclid(b, a % b)
    }
}

/// Some split `d1 + d2 = gcd` coprime to `n1` and `n2` respectively.
fn coprime_split(n1: u64, n2: u64) -> bool {
    let d = euclid(n1, n2);
    d >= 2 && (1..d).any(|d1| euclid(n1, d1) == 1 && euclid(n2, d - d1) == 1)
}

fn pairs(max: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for a in 2..=max {
        for b in 2..=max {
            if a * b <= max {
                v.push((a, b));
            }
        }
    }
    v
}

fn bfs(d: &Digraph, s: usize, removed: Option<usize>) -> Vec<Option<usize>> {
    let mut dist = vec![None; d.vertex_count()];
    dist[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for &w in d.out_neighbors(v) {
            if Some(w) != removed && dist[w].is_none() {
                dist[w] = Some(dist[v].unwrap() + 1);
                q.push_back(w);
            }
        }
    }
    dist
}

fn diameter(d: &Digraph) -> Option<usize> {
    let mut best = 0;
    for s in 0..d.vertex_count() {
        for dist in bfs(d, s, None) {
            best = best.max(dist?);
        }
    }
    Some(best)
}

fn strongly_connected_without(d: &Digraph, removed: Option<usize>) -> bool {
    let n = d.vertex_count();
    let alive: Vec<usize> = (0..n).filter(|&v| Some(v) != removed).collect();
    let rev = Digraph::from_arcs(n, d.arcs().map(|(u, v)| (v, u))).unwrap();
    let root = alive[0];
    let reach = |g: &Digraph| {
        let dist = bfs(g, root, removed);
        alive.iter().all(|&v| dist[v].is_some())
    };
    reach(d) && reach(&rev)
}

/// Naive expansion: every admissible subset as a boolean vector.
fn naive_alpha(d: &Digraph) -> (u64, u64) {
    let n = d.vertex_count();
    let mut best = (u64::MAX, 1u64);
    for mask in 1u32..1 << n {
        let size = mask.count_ones() as usize;
        if 3 * size > 2 * n {
            continue;
        }
        let inside: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        let mut out = vec![false; n];
        let mut inn = vec![false; n];
        for (u, v) in d.arcs() {
            if inside[u] && !inside[v] {
                out[v] = true;
            }
            if inside[v] && !inside[u] {
                inn[u] = true;
            }
        }
        let b = out.iter().filter(|&&x| x).count().min(inn.iter().filter(|&&x| x).count()) as u64;
        if b * best.1 < best.0 * size as u64 {
            best = (b, size as u64);
        }
    }
    let g = euclid(best.0, best.1);
    (best.0 / g, best.1 / g)
}

fn trotter_erdos_necessity() -> Outcome {
    let mut report = String::new();
    let mut ok = true;
    for (n1, n2) in pairs(24) {
        let d = directed_cycle_product(n1, n2).unwrap();
        let ham = brute_hamiltonian(&d, &mut Budget::unlimited()).unwrap();
        let cond = coprime_split(n1 as u64, n2 as u64);
        let agrees = trotter_erdos_necessary(n1 as u64, n2 as u64).holds == cond;
        let violation = matches!(ham, Hamiltonicity::Cycle(_)) && !cond;
        if let Hamiltonicity::Cycle(c) = &ham {
            ok &= c.len() == n1 * n2 && c.validate(&d).is_ok();
        }
        ok &= ham != Hamiltonicity::Unknown && !violation && agrees;
        writeln!(report, "{n1}x{n2} ham={:?} cond={cond}", ham.decided()).unwrap();
    }
    Outcome::new(ok, report)
}

fn divisibility() -> Outcome {
    let mut report = String::new();
    let mut ok = true;
    for (n1, n2) in pairs(20) {
        let d = directed_cycle_product(n1, n2).unwrap();
        let g = euclid(n1 as u64, n2 as u64) as usize;
        let e = enumerate_directed_cycles(&d, CycleBounds::unbounded()).unwrap();
        let divisible = e.cycles.iter().all(|c| c.len() % g == 0);
        let longest = match brute_longest_cycle(&d, &mut Budget::unlimited()).unwrap() {
            Search::Exact(c) => c.map_or(0, |c| c.len()),
            Search::Unknown(_) => 0,
        };
        let gap = n1 * n2 - longest;
        let gap_ok = coprime_split(n1 as u64, n2 as u64) || g < 2 || gap >= g;
        ok &= divisible && gap_ok && longest == e.circumference() && !e.truncated;
        writeln!(report, "{n1}x{n2} gcd={g} cycles={} longest={longest} gap={gap}", e.cycles.len()).unwrap();
    }
    Outcome::new(ok, report)
}

fn witness_instance() -> Outcome {
    let w = lemma34_construct(5, 11).unwrap();
    let (n1, n2) = (880u64, 8736u64);
    let shape = w.d == 16 && w.n1 == n1.into() && w.n2 == n2.into();
    let splits = (1..16u64).all(|d1| euclid(n1, d1) >= 2 || euclid(n2, 16 - d1) >= 2);
    let ln_n = ((n1 * n2) as f64).ln();
    let ok = shape
        && w.certificate.valid
        && w.certificate.splits.len() == 15
        && splits
        && euclid(n1, n2) == 16
        && (ln_n - 15.86).abs() < 0.01
        && (w.ln_n - ln_n).abs() < 1e-9
        && 16.0 / ln_n >= 1.0;
    Outcome::new(ok, format!("d={} n1={} n2={} ln_n={ln_n:.6} ratio={:.6}\n", w.d, w.n1, w.n2, 16.0 / ln_n))
}

fn prime_partitionable_search() -> Outcome {
    let hits = search_prime_partitionable(20).unwrap();
    let primes = |d: u64| (2..d).filter(|&p| (2..p).all(|k| p % k != 0)).collect::<Vec<_>>();
    let first_local = (2..=20u64).find(|&d| {
        let ps = primes(d);
        (0u32..1 << ps.len()).any(|mask| {
            let (mut n1, mut n2) = (d, d);
            for (i, &p) in ps.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    n1 *= p;
                } else {
                    n2 *= p;
                }
            }
            euclid(n1, n2) == d && !coprime_split(n1, n2)
        })
    });
    let first = hits.first();
    let ok = first.is_some_and(|h| h.d == 16 && revalidate(&h.certificate)) && first_local == Some(16);
    let mut report = String::new();
    for h in &hits {
        writeln!(report, "d={} p1={:?} n1={} n2={}", h.d, h.p1, h.certificate.n1, h.certificate.n2).unwrap();
    }
    Outcome::new(ok, report)
}

fn corpus_kinds_ok(corpus: &[(String, CayleySpec)]) -> bool {
    corpus.len() >= 10
        && ["cyclic", "product", "dihedral"].iter().all(|k| corpus.iter().any(|(n, _)| n.contains(k)))
        && corpus.iter().all(|(_, s)| s.group().order() <= 18)
}

fn expansion_bound() -> Outcome {
    let corpus = small_cayley();
    let mut ok = corpus_kinds_ok(&corpus);
    let mut report = String::new();
    for (name, spec) in &corpus {
        let d = spec.digraph();
        let alpha = expansion_exact(&d).unwrap().alpha_lower;
        let diam = diameter(&d).unwrap() as u64;
        let (a, b) = (*alpha.numer(), *alpha.denom());
        if d.vertex_count() <= 12 {
            ok &= naive_alpha(&d) == (a, b);
        }
        ok &= 3 * diam * a >= b;
        writeln!(report, "{name} alpha={a}/{b} d={diam}").unwrap();
    }
    Outcome::new(ok, report)
}

fn dfs_long_cycle_criterion() -> Outcome {
    let mut ok = true;
    let mut report = String::new();
    for (name, spec) in small_cayley() {
        let d = spec.digraph();
        let n = d.vertex_count();
        let alpha = expansion_exact(&d).unwrap().alpha_lower;
        let Ok(r) = dfs_long_cycle(&d, Some(alpha)) else {
            ok = false;
            writeln!(report, "{name} invariant fired").unwrap();
            continue;
        };
        let len = r.cycle.len() as u64;
        let needed = (alpha.numer() * n as u64).div_ceil(3 * alpha.denom());
        let on_path = |v: &usize| r.path.vertices().contains(v);
        let u = r.u.len();
        ok &= r.cycle.validate(&d).is_ok() && len >= needed && 3 * u >= n && 3 * u <= 2 * n;
        ok &= r.u_out.members().iter().all(on_path);
        writeln!(report, "{name} len={len} needed={needed} |U|={u}").unwrap();
    }
    Outcome::new(ok, report)
}

fn long_path_criterion() -> Outcome {
    let mut ok = true;
    let mut report = String::new();
    for (name, spec) in small_cayley() {
        let d = spec.digraph();
        let n = d.vertex_count();
        ok &= left_translations(&spec).maps_every_pair();
        let r = long_path(&d, None).unwrap();
        let floor = (0..=n).take_while(|f| 9 * f * f <= n).last().unwrap();
        let arcs = r.path.vertices().len() - 1;
        ok &= r.path.validate(&d).is_ok() && arcs >= floor;
        writeln!(report, "{name} path={arcs} floor={floor}").unwrap();
    }
    Outcome::new(ok, report)
}

fn stitching() -> Outcome {
    let mut ok = true;
    let mut report = String::new();
    let mut hosts = 0;
    for (name, spec) in small_cayley().into_iter().filter(|(_, s)| s.group().order() <= 14) {
        hosts += 1;
        let d = spec.digraph();
        let cg = CycleGraph::of(&d, CycleBounds::unbounded()).unwrap();
        let Search::Exact(found) = induced_cycles(cg.graph(), 4, &mut Budget::unlimited()) else {
            ok = false;
            continue;
        };
        let meets = |i: usize, j: usize| cg.cycles()[i].vertices().iter().any(|&v| cg.cycles()[j].contains(v));
        for seq in &found {
            let l = seq.len();
            let chordless = (0..l).all(|a| (a + 1..l).all(|b| meets(seq[a], seq[b]) == (b == a + 1 || (a == 0 && b == l - 1))));
            let stitched = stitch_directed_cycle(&d, &cg, seq);
            ok &= chordless && stitched.is_ok_and(|c| c.validate(&d).is_ok() && c.len() >= l);
        }
        writeln!(report, "{name} cycles={} induced={}", cg.len(), found.len()).unwrap();
    }
    Outcome::new(ok && hosts >= 10, report)
}

fn gadgets() -> Outcome {
    let mut ok = true;
    let mut report = String::new();
    for k in 1..=4 {
        let (d, _) = figure1_chain(k).unwrap();
        let longest = brute_longest_cycle(&d, &mut Budget::unlimited()).unwrap().exact().flatten().map_or(0, |c| c.len());
        let regular = (0..d.vertex_count()).all(|v| d.out_neighbors(v).len() == 2 && d.in_neighbors(v).len() == 2);
        let s2c = strongly_connected_without(&d, None)
            && (0..d.vertex_count()).all(|v| strongly_connected_without(&d, Some(v)));
        let fours: Vec<_> = enumerate_directed_cycles(&d, CycleBounds::unbounded())
            .unwrap()
            .cycles
            .into_iter()
            .filter(|c| c.len() == 4)
            .collect();
        let disjoint = max_disjoint_cycles(&fours);
        let pairwise = disjoint.iter().enumerate().all(|(i, &a)| {
            disjoint[i + 1..].iter().all(|&b| fours[a].vertices().iter().all(|&v| !fours[b].contains(v)))
        });
        ok &= longest == 4 && regular && s2c && pairwise && disjoint.len() >= k / 2;
        writeln!(report, "figure1 k={k} longest={longest} disjoint={}", disjoint.len()).unwrap();
    }
    for n in [1, 2] {
        let (_, d, _) = toroidal_gadget(n).unwrap();
        let h = brute_hamiltonian(&d, &mut Budget::unlimited()).unwrap();
        ok &= h == Hamiltonicity::Absent && d.vertex_count() == 8 * n + 4;
        writeln!(report, "toroidal n={n} hamiltonian={:?}", h.decided()).unwrap();
    }
    Outcome::new(ok, report)
}

fn pipeline() -> Outcome {
    let mut ok = true;
    let mut report = String::new();
    let (toroidal, _, _) = toroidal_gadget(1).unwrap();
    let c33 = CayleySpec::product(3, 3, &[(1, 0), (0, 1)]).unwrap();
    for (name, spec) in [("toroidal(1)", toroidal), ("C3xC3", c33)] {
        let d = spec.digraph();
        let r = omega_n13_pipeline(&d, &left_translations(&spec), PipelineOptions::default()).unwrap();
        let n = d.vertex_count() as u64;
        let diam = diameter(&d).unwrap() as u64;
        let small = diam.pow(3) <= n * n;
        ok &= r.cycle.validate(&d).is_ok() && (r.branch == Branch::SmallDiameter) == small && r.diameter as u64 == diam;
        writeln!(report, "{name} n={n} d={diam} branch={:?} cycle={:?}", r.branch, r.cycle.vertices()).unwrap();
    }
    Outcome::new(ok, report)
}

type Criterion = (u8, &'static str, fn() -> Outcome, Duration);

fn criteria() -> Vec<Criterion> {
    let m = |s| Duration::from_secs(s);
    vec![
        (1, "Hamiltonian products satisfy the coprime-split condition (n1*n2 <= 24)", trotter_erdos_necessity, m(120)),
        (2, "cycle lengths divisible by gcd; gap >= gcd when the condition fails (n1*n2 <= 20)", divisibility, m(120)),
        (3, "witness (5,11) gives (16, 880, 8736) with a valid certificate", witness_instance, m(1)),
        (4, "smallest prime-partitionable d up to 20 is 16", prime_partitionable_search, m(60)),
        (5, "exact expansion >= 1/(3d) on the Cayley corpus", expansion_bound, m(600)),
        (6, "descendant-counting cycle reaches ceil(alpha n / 3)", dfs_long_cycle_criterion, m(300)),
        (7, "long path reaches floor(sqrt(n)/3)", long_path_criterion, m(60)),
        (8, "stitched cycles are valid and no shorter than the induced cycle", stitching, m(300)),
        (9, "gadget chains and toroidal gadgets", gadgets, m(300)),
        (10, "pipeline end to end with the exact branch decision", pipeline, m(60)),
    ]
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

#[test]
fn acceptance() {
    let mut all = true;
    let mut reports = Vec::new();
    for (id, title, run, limit) in criteria() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let pass = out.passed && elapsed <= limit;
        all &= pass;
        println!("[{}] {id:>2} {title} ({:.2?})", if pass { "PASS" } else { "FAIL" }, elapsed);
        if !out.passed {
            println!("{}", out.report);
        }
        reports.push(out.report);
    }

    let start = Instant::now();
    let mut same = true;
    for ((id, _, run, _), first) in criteria().into_iter().zip(&reports) {
        let again = run().report;
        let single = in_pool(1, || run().report);
        let eight = in_pool(8, || run().report);
        let stable = &again == first && &single == first && &eight == first;
        if !stable {
            println!("criterion {id} differs between runs");
        }
        same &= stable;
    }
    all &= same;
    println!(
        "[{}] 11 reports identical across two runs and 1 vs 8 threads ({:.2?})",
        if same { "PASS" } else { "FAIL" },
        start.elapsed()
    );
    assert!(all, "acceptance criteria failed");
}
