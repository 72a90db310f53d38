//! `vtc`: construct, analyze, verify and search.

mod error;
mod instance;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use vtc::automorphism::{is_vertex_transitive, AutomorphismFamily, Transitivity};
use vtc::budget::{Budget, DEFAULT_NODE_BUDGET};
use vtc::cayley::CayleySpec;
use vtc::cycle_graph::{diameter_check_on, CycleGraph};
use vtc::cycles::{CycleBounds, DEFAULT_MAX_CYCLES};
use vtc::dfs::{dfs_long_cycle, long_path};
use vtc::digraph::{Digraph, Distance};
use vtc::expansion::{expansion_exact, expansion_sampled, EXPANSION_EXACT_MAX_ORDER};
use vtc::families::{directed_cycle_product, figure1_chain, toroidal_gadget};
use vtc::format::{write_dot, write_edge_list};
use vtc::numgap::{motohashi_pairs, revalidate, search_prime_partitionable, theorem11_report};
use vtc::pipeline::{omega_n13_pipeline, small_diameter_branch, PipelineOptions};
use vtc::report::Report;
use vtc::suites::{divisibility_suite, figure1_suite, lemma21_suite, lemma27_suite, trotter_erdos_suite, SuiteOutcome};

use crate::error::CliError;
use crate::instance::Instance;

#[derive(Parser)]
#[command(name = "vtc", version, about = "Long cycles in vertex-transitive digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Node expansions allowed to each exact search.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget_nodes: u64,
    /// Cap on enumerated directed cycles.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_CYCLES, value_parser = positive)]
    max_cycles: usize,
    /// Worker threads for parallel sections.
    #[arg(long, global = true, value_parser = positive)]
    threads: Option<usize>,
    /// Seed for sampled modes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Build a digraph, verify it and write its edge list.
    Construct {
        #[arg(value_enum)]
        kind: ConstructKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        n1: Option<usize>,
        #[arg(long)]
        n2: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Group for `cayley`, e.g. "product 2 3".
        #[arg(long)]
        group: Option<String>,
        /// Generators for `cayley`, e.g. "(1,0),(0,1)".
        #[arg(long)]
        gens: Option<String>,
        /// Also write a DOT rendering here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run analyses on an edge-list file or a generator spec (`toroidal:1`).
    Analyze {
        instance: String,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "diameter")]
        which: Vec<Analysis>,
        /// Random subsets drawn when the exact expansion scan is out of range.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
    /// Run a verification suite; exit status 0 iff every case passes.
    Verify {
        #[arg(value_enum)]
        suite: SuiteKind,
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long)]
        max_k: Option<usize>,
        #[arg(long, default_value = "small-cayley")]
        corpus: String,
    },
    /// Number-theoretic searches.
    Search {
        #[arg(value_enum)]
        kind: SearchKind,
        #[arg(long, default_value_t = 20)]
        max_d: u64,
        #[arg(long, default_value_t = 100)]
        max_p: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    Cayley,
    Product,
    Figure1,
    Toroidal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Analysis {
    Diameter,
    Expansion,
    DfsCycle,
    LongPath,
    CycleGraph,
    PipelineN13,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteKind {
    TrotterErdos,
    Divisibility,
    Figure1,
    Lemma21,
    Lemma27,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchKind {
    PrimePartitionable,
    Motohashi,
    Theorem11,
}

enum Outcome {
    Pass,
    AssertionFailed,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn need<T>(value: Option<T>, flag: &str, kind: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("`{kind}` needs --{flag}")))
}

fn verdict(reports: &[Report]) -> Outcome {
    if reports.iter().all(Report::passed) {
        Outcome::Pass
    } else {
        Outcome::AssertionFailed
    }
}

fn json_list(reports: &[Report]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

fn construct(cli: &Cli, kind: ConstructKind, args: ConstructArgs) -> Result<Outcome, CliError> {
    let (name, d, report) = match kind {
        ConstructKind::Toroidal => {
            let n = need(args.n, "n", "toroidal")?;
            let (spec, d, r) = toroidal_gadget(n)?;
            let report = Report::new(format!("toroidal:{n}"), "construct")
                .param("n", &n)
                .param("cayley", &spec.to_string())
                .result(&r)
                .assert("vertices = 8n + 4", r.vertices == 8 * n + 4)
                .assert("2-regular", r.regularity == Some(2))
                .assert("translations transitive", r.translations_transitive)
                .assert_maybe("non-Hamiltonian", r.hamiltonian.map(|h| !h));
            (format!("toroidal_{n}"), d, report)
        }
        ConstructKind::Product => {
            let n1 = need(args.n1, "n1", "product")?;
            let n2 = need(args.n2, "n2", "product")?;
            let d = directed_cycle_product(n1, n2)?;
            let report = Report::new(format!("product:{n1}:{n2}"), "construct")
                .param("n1", &n1)
                .param("n2", &n2)
                .result(&json!({ "vertices": d.vertex_count(), "arcs": d.arc_count() }))
                .assert("2-regular", d.regularity() == Some(2))
                .assert("strongly connected", d.is_strongly_connected());
            (format!("product_{n1}_{n2}"), d, report)
        }
        ConstructKind::Figure1 => {
            let k = need(args.k, "k", "figure1")?;
            let (d, r) = figure1_chain(k)?;
            let report = Report::new(format!("figure1:{k}"), "construct")
                .param("k", &k)
                .result(&r)
                .assert("circumference 4", r.circumference == 4)
                .assert("2-regular", r.regularity == Some(2))
                .assert("strongly 2-connected", r.strongly_2_connected)
                .assert("k disjoint longest cycles", r.disjoint_longest_cycles >= k);
            (format!("figure1_{k}"), d, report)
        }
        ConstructKind::Cayley => {
            let group = need(args.group, "group", "cayley")?;
            let gens = need(args.gens, "gens", "cayley")?;
            let spec = CayleySpec::parse_parts(&group, &gens)?;
            let d = spec.digraph();
            let report = Report::new(format!("cayley:{group}:{gens}"), "construct")
                .param("group", &group)
                .param("gens", &gens)
                .result(&json!({ "vertices": d.vertex_count(), "arcs": d.arc_count() }))
                .assert("regular", d.regularity().is_some())
                .assert("strongly connected", d.is_strongly_connected());
            ("cayley".to_string(), d, report)
        }
    };
    if let Some(path) = &args.dot {
        fs::write(path, write_dot(&d, &name, false))?;
    }
    let graph_text = match cli.format {
        None => write_edge_list(&d),
        Some(Format::Dot) => write_dot(&d, &name, false),
        Some(Format::Json) => report.to_json() + "\n",
        Some(Format::Csv) => return Err(CliError::Usage("construct writes edge lists, DOT or JSON".into())),
    };
    emit(&cli.out, &graph_text)?;
    if cli.format != Some(Format::Json) {
        let text = report.to_json() + "\n";
        if cli.out.is_some() {
            std::io::stdout().write_all(text.as_bytes())?;
        } else {
            std::io::stderr().write_all(text.as_bytes())?;
        }
    }
    Ok(verdict(&[report]))
}

struct ConstructArgs {
    n: Option<usize>,
    n1: Option<usize>,
    n2: Option<usize>,
    k: Option<usize>,
    group: Option<String>,
    gens: Option<String>,
    dot: Option<PathBuf>,
}

fn certify(inst: &Instance, budget_nodes: u64) -> Option<AutomorphismFamily> {
    if let Some(f) = &inst.translations {
        return Some(f.clone());
    }
    match is_vertex_transitive(&inst.digraph, &mut Budget::new(budget_nodes)) {
        Transitivity::Transitive(f) => Some(f),
        _ => None,
    }
}

fn diameter_of(d: &Digraph, operation: &'static str) -> Result<usize, CliError> {
    d.directed_diameter().finite().ok_or_else(|| CliError::analysis(operation, "digraph is not strongly connected"))
}

fn analyze(cli: &Cli, source: &str, which: &[Analysis], samples: u64) -> Result<Outcome, CliError> {
    let inst = instance::load(source)?;
    let d = &inst.digraph;
    let n = d.vertex_count();
    let exact_alpha = || (n <= EXPANSION_EXACT_MAX_ORDER).then(|| expansion_exact(d).ok()).flatten();
    let mut reports = Vec::new();
    for &op in which {
        let base = |name: &str| Report::new(inst.name.clone(), name).param("n", &n);
        let report = match op {
            Analysis::Diameter => {
                let (s, t, dist) = d.diameter_pair().ok_or_else(|| CliError::analysis("diameter", "empty digraph"))?;
                base("diameter")
                    .result(&json!({ "diameter": dist, "source": s, "target": t }))
                    .assert("strongly connected", dist != Distance::Infinite)
            }
            Analysis::Expansion => {
                let diameter = diameter_of(d, "expansion")?;
                let r = match exact_alpha() {
                    Some(r) => r,
                    None => {
                        log::info!("expansion: sampling {samples} subsets with seed {}", cli.seed);
                        expansion_sampled(d, samples, cli.seed).map_err(|e| CliError::analysis("expansion", e))?
                    }
                };
                let bound_holds = r.alpha_lower.numer() * 3 * diameter as u64 >= *r.alpha_lower.denom();
                let transitive = certify(&inst, cli.budget_nodes).is_some();
                base("expansion")
                    .param("seed", &cli.seed)
                    .param("samples", &samples)
                    .result(&r)
                    .assert_maybe("alpha >= 1/(3d)", (r.exact && transitive).then_some(bound_holds))
            }
            Analysis::DfsCycle => {
                let alpha = exact_alpha().map(|r| r.alpha_lower);
                let r = dfs_long_cycle(d, alpha).map_err(|e| CliError::analysis("dfs-cycle", e))?;
                base("dfs-cycle")
                    .result(&r)
                    .assert("valid cycle", r.cycle.validate(d).is_ok())
                    .assert("n/3 <= |U| <= 2n/3", 3 * r.u.len() >= n && 3 * r.u.len() <= 2 * n)
                    .assert_maybe("length >= alpha n / 3", alpha.map(|_| r.meets_guarantee()))
            }
            Analysis::LongPath => {
                let alpha = exact_alpha().map(|r| r.alpha_lower);
                let r = long_path(d, alpha).map_err(|e| CliError::analysis("long-path", e))?;
                let transitive = certify(&inst, cli.budget_nodes).is_some();
                base("long-path")
                    .result(&r)
                    .assert("valid path", r.path.validate(d).is_ok())
                    .assert_maybe("length >= floor(sqrt(n)/3)", transitive.then_some(r.path.len() >= r.floor))
            }
            Analysis::CycleGraph => {
                let bounds = CycleBounds { max_len: None, max_count: Some(cli.max_cycles) };
                let cg = CycleGraph::of(d, bounds).map_err(|e| CliError::analysis("cycle-graph", e))?;
                let check = diameter_check_on(d, &cg);
                base("cycle-graph")
                    .param("max_cycles", &cli.max_cycles)
                    .result(&check)
                    .assert_maybe("diam(C(D)) >= d/l - 1", check.holds)
            }
            Analysis::PipelineN13 => {
                let fam = certify(&inst, cli.budget_nodes)
                    .ok_or_else(|| CliError::analysis("pipeline-n13", "vertex transitivity not certified"))?;
                let opts = PipelineOptions {
                    bounds: CycleBounds { max_len: None, max_count: Some(cli.max_cycles) },
                    budget_nodes: cli.budget_nodes,
                };
                let r = omega_n13_pipeline(d, &fam, opts).map_err(|e| CliError::analysis("pipeline-n13", e))?;
                let branch_ok = small_diameter_branch(r.n, r.diameter) == (r.branch == vtc::pipeline::Branch::SmallDiameter);
                base("pipeline-n13")
                    .param("budget_nodes", &cli.budget_nodes)
                    .param("max_cycles", &cli.max_cycles)
                    .result(&r)
                    .assert("valid cycle", r.cycle.validate(d).is_ok())
                    .assert("branch matches d^3 vs n^2", branch_ok)
                    .assert("length >= n^(1/3)/9", r.bound_holds)
            }
        };
        reports.push(report);
    }
    emit(&cli.out, &json_list(&reports))?;
    Ok(verdict(&reports))
}

fn verify(cli: &Cli, suite: SuiteKind, max_order: Option<usize>, max_k: Option<usize>, corpus: &str) -> Result<Outcome, CliError> {
    let load_corpus = || match corpus {
        "small-cayley" => Ok(vtc::corpus::small_cayley()),
        other => Err(CliError::Usage(format!("unknown corpus `{other}`"))),
    };
    let outcome: SuiteOutcome = match suite {
        SuiteKind::TrotterErdos => trotter_erdos_suite(max_order.unwrap_or(24), cli.budget_nodes),
        SuiteKind::Divisibility => divisibility_suite(max_order.unwrap_or(20), cli.budget_nodes),
        SuiteKind::Figure1 => figure1_suite(max_k.unwrap_or(4)),
        SuiteKind::Lemma21 => lemma21_suite(&load_corpus()?),
        SuiteKind::Lemma27 => lemma27_suite(&load_corpus()?, max_order.unwrap_or(14), cli.budget_nodes),
    };
    let text = match cli.format {
        Some(Format::Csv) => outcome.csv.clone(),
        Some(Format::Json) | None => outcome.report.to_json() + "\n",
        Some(Format::Dot) => return Err(CliError::Usage("verify writes JSON or CSV".into())),
    };
    emit(&cli.out, &text)?;
    for line in &outcome.failures {
        eprintln!("failing case: {line}");
    }
    Ok(if outcome.passed() { Outcome::Pass } else { Outcome::AssertionFailed })
}

fn search(cli: &Cli, kind: SearchKind, max_d: u64, max_p: u64) -> Result<Outcome, CliError> {
    let format = cli.format.unwrap_or(match kind {
        SearchKind::Theorem11 => Format::Csv,
        _ => Format::Json,
    });
    if format == Format::Dot {
        return Err(CliError::Usage("search writes JSON or CSV".into()));
    }
    let (text, report) = match kind {
        SearchKind::PrimePartitionable => {
            let hits = search_prime_partitionable(max_d)?;
            let mut csv = String::from("d,n1,n2,p1\n");
            for h in &hits {
                let p1: Vec<String> = h.p1.iter().map(u64::to_string).collect();
                csv.push_str(&format!("{},{},{},{}\n", h.d, h.certificate.n1, h.certificate.n2, p1.join(" ")));
            }
            let mut report = Report::new(format!("d <= {max_d}"), "search prime-partitionable")
                .param("max_d", &max_d)
                .result(&hits);
            for h in &hits {
                report = report.assert(&format!("d={} revalidates", h.d), revalidate(&h.certificate));
            }
            (csv, report)
        }
        SearchKind::Motohashi => {
            let pairs = motohashi_pairs(max_p)?;
            let mut csv = String::from("p,q,bound_ok\n");
            for m in &pairs {
                csv.push_str(&format!("{},{},{}\n", m.p, m.q, m.bound_ok));
            }
            let report = Report::new(format!("p <= {max_p}"), "search motohashi")
                .param("max_p", &max_p)
                .param("theta", "41/25")
                .result(&pairs)
                .assert("q = 1 mod p", pairs.iter().all(|m| m.q % m.p == 1));
            (csv, report)
        }
        SearchKind::Theorem11 => {
            let r = theorem11_report(max_p)?;
            let report = Report::new(format!("p <= {max_p}"), "search theorem11")
                .param("max_p", &max_p)
                .result(&r)
                .assert("d / ln n >= 0.9", r.ratio_floor_holds)
                .assert("certificates valid", r.rows.iter().all(|w| revalidate(&w.certificate)));
            (r.to_csv(), report)
        }
    };
    let body = match format {
        Format::Csv => text,
        _ => report.to_json() + "\n",
    };
    emit(&cli.out, &body)?;
    Ok(verdict(&[report]))
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    log::info!("seed {}, node budget {}, cycle cap {}", cli.seed, cli.budget_nodes, cli.max_cycles);
    match &cli.command {
        Command::Construct { kind, n, n1, n2, k, group, gens, dot } => construct(
            cli,
            *kind,
            ConstructArgs { n: *n, n1: *n1, n2: *n2, k: *k, group: group.clone(), gens: gens.clone(), dot: dot.clone() },
        ),
        Command::Analyze { instance, which, samples } => analyze(cli, instance, which, *samples),
        Command::Verify { suite, max_order, max_k, corpus } => verify(cli, *suite, *max_order, *max_k, corpus),
        Command::Search { kind, max_d, max_p } => search(cli, *kind, *max_d, *max_p),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("VTC_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::AssertionFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", json!({ "schema": vtc::report::SCHEMA_VERSION, "error": e.to_string() }));
            ExitCode::from(2)
        }
    }
}
