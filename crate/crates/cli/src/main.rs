//! `stablegraph`: stabilize graphs, build description and binding graphs, run
//! the isomorphism procedure, and audit everything against brute force.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;

use stablegraph::audit::{bench, validate_suite, BenchSpec, Category, CorpusSpec};
use stablegraph::binding::{binding_graph, build_phi, build_psi, build_theta, BindingGraph};
use stablegraph::descgraph::{
    adjoint_description_graph, gamma_description_graph, spectral_description_graph, Truncation, DEFAULT_PRIME,
    DEFAULT_TOLERANCE,
};
use stablegraph::gi::{gi_decide, GiOptions, GiProcess, Verdict};
use stablegraph::io::{format_graph, read_graph, to_matrix_json, Format};
use stablegraph::oracle::{automorphism_orbits, is_isomorphic_bruteforce, OracleOptions, Pruning};
use stablegraph::partition::PartitionDump;
use stablegraph::refine::{kpower_stabilize, TraceSummary};
use stablegraph::{sas_stabilize, wl_stabilize, LabeledGraph};

#[derive(Parser)]
#[command(name = "stablegraph", version, about = "Symbolic graph stabilization and isomorphism auditing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Input graph; the format follows the extension (.g6, .json, otherwise edge list).
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Override the input format.
    #[arg(long, value_name = "graph6|edgelist|matrix-json")]
    format: Option<Format>,
}

impl Input {
    fn read(&self) -> Result<LabeledGraph> {
        load(&self.input, self.format)
    }
}

fn load(path: &Path, format: Option<Format>) -> Result<LabeledGraph> {
    let format = format.unwrap_or_else(|| Format::from_path(path));
    read_graph(path, format).with_context(|| format!("reading {}", path.display()))
}

/// Writes to `out`, or stdout when absent.
fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_graph(out: Option<&Path>, g: &LabeledGraph) -> Result<()> {
    let format = out.map_or(Format::MatrixJson, Format::from_path);
    emit(out, &format_graph(g, format)?)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes") + "\n"
}

#[derive(Clone, Copy, ValueEnum)]
enum RefineProcess {
    Sas,
    Wl,
    Kpow,
}

#[derive(Clone, Copy, ValueEnum)]
enum DescProcess {
    Gamma,
    Adjoint,
    Spectral,
}

#[derive(Clone, Copy, ValueEnum)]
enum Derived {
    Psi,
    Phi,
    Theta,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleQuery {
    Orbits,
    Iso,
}

#[derive(Clone, Copy, ValueEnum)]
enum PruningArg {
    Auto,
    Off,
    Cells,
}

#[derive(Subcommand)]
enum Command {
    /// Stabilize a graph and write the stable graph.
    Refine {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "sas")]
        process: RefineProcess,
        /// Walk length for `kpow`.
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write {rounds, dims, cells} here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Description graph of a 0/1 graph.
    Descgraph {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "gamma")]
        process: DescProcess,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Random evaluations for `adjoint`.
        #[arg(long, default_value_t = 3)]
        trials: usize,
        /// Eigenvalue clustering tolerance for `spectral`.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        /// Largest walk length for `gamma`; defaults to n - 1.
        #[arg(long)]
        length: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Binding graph of a simple graph.
    Binding {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Accept disconnected input.
        #[arg(long)]
        allow_disconnected: bool,
    },
    /// Graphs derived from the stabilized binding graph.
    Derived {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        which: Derived,
        /// Treat the input as a binding graph whose first N vertices are basic.
        #[arg(long, value_name = "N")]
        basic_n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stable vertex partition as {cells, labels}.
    Partition {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force automorphism orbits or isomorphism witness.
    Oracle {
        #[arg(value_enum)]
        query: OracleQuery,
        #[command(flatten)]
        input: Input,
        /// Second graph for `iso`.
        #[arg(long = "in2", value_name = "FILE")]
        input2: Option<PathBuf>,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, value_enum, default_value = "auto")]
        pruning: PruningArg,
    },
    /// Wing/binding-graph isomorphism procedure. Exit status 0 = YES, 1 = NO, 2 = error.
    ///
    /// Whether the procedure decides isomorphism correctly is unproven; the
    /// verdict reports what the refinement saw and certifies nothing.
    Gi {
        #[arg(long, value_name = "FILE")]
        a: PathBuf,
        #[arg(long, value_name = "FILE")]
        b: PathBuf,
        #[arg(long)]
        format: Option<Format>,
        #[arg(long, value_enum, default_value = "sas")]
        process: GiProcessArg,
        /// Write {verdict, rounds, dims, cells} here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Refuse binding graphs above this order.
        #[arg(long, default_value_t = stablegraph::gi::DEFAULT_MAX_BINDING_ORDER)]
        max_order: usize,
    },
    /// Run every check over a corpus. Exit status 1 on any violation.
    Validate {
        /// JSON corpus description; omitted fields take their defaults.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Full JSON report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time stabilization across graph families.
    Bench {
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GiProcessArg {
    Sas,
    Wl,
}

fn read_json<T: serde::de::DeserializeOwned + Default>(path: Option<&Path>) -> Result<T> {
    match path {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))
        }
        None => Ok(T::default()),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Refine { input, process, k, out, trace } => {
            let g = input.read()?;
            let summary: TraceSummary = match process {
                RefineProcess::Sas => {
                    let t = sas_stabilize(&g);
                    emit(out.as_deref(), &to_matrix_json(&t.stable))?;
                    t.summary()
                }
                RefineProcess::Wl => {
                    let t = wl_stabilize(&g);
                    emit(out.as_deref(), &to_matrix_json(&t.stable))?;
                    t.summary()
                }
                RefineProcess::Kpow => {
                    let t = kpower_stabilize(&g, k)?;
                    emit(out.as_deref(), &to_matrix_json(&t.stable))?;
                    t.summary()
                }
            };
            if let Some(path) = trace {
                emit(Some(&path), &to_json(&summary))?;
            }
        }
        Command::Descgraph { input, process, out, trials, tol, length, seed } => {
            let g = input.read()?;
            let d = match process {
                DescProcess::Gamma => {
                    let t = length.map_or(Truncation::Auto, Truncation::Length);
                    gamma_description_graph(&g, t)?
                }
                DescProcess::Adjoint => {
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                    adjoint_description_graph(&g, trials, DEFAULT_PRIME, &mut rng)?
                }
                DescProcess::Spectral => {
                    let s = spectral_description_graph(&g, tol)?;
                    if s.ill_conditioned {
                        eprintln!("warning: a spectral gap lies within ten times the tolerance");
                    }
                    s.graph
                }
            };
            emit(out.as_deref(), &to_matrix_json(&d))?;
        }
        Command::Binding { input, out, allow_disconnected } => {
            let g = input.read()?;
            let b = if allow_disconnected { BindingGraph::over(&g)? } else { binding_graph(&g)? };
            emit_graph(out.as_deref(), b.graph())?;
        }
        Command::Derived { input, which, basic_n, out } => {
            let g = input.read()?;
            let b = match basic_n {
                Some(n) => BindingGraph::from_graph(g, n)?,
                None => binding_graph(&g)?,
            };
            let stable = sas_stabilize(b.graph()).stable;
            let d = match which {
                Derived::Psi => build_psi(&b, &stable)?,
                Derived::Phi => build_phi(&b, &stable)?,
                Derived::Theta => build_theta(&build_phi(&b, &stable)?, &b)?,
            };
            emit(out.as_deref(), &to_matrix_json(&d))?;
        }
        Command::Partition { input, out } => {
            let stable = sas_stabilize(&input.read()?).stable;
            emit(out.as_deref(), &to_json(&PartitionDump::of(&stable)))?;
        }
        Command::Oracle { query, input, input2, max_n, pruning } => {
            let pruning = match pruning {
                PruningArg::Auto => Pruning::Auto,
                PruningArg::Off => Pruning::Off,
                PruningArg::Cells => Pruning::StableCells,
            };
            let opts = OracleOptions { max_n, pruning };
            let g = input.read()?;
            match query {
                OracleQuery::Orbits => print!("{}", to_json(&automorphism_orbits(&g, opts)?.cells())),
                OracleQuery::Iso => {
                    let Some(path) = input2 else { bail!("`oracle iso` needs --in2") };
                    let h = load(&path, input.format)?;
                    let witness = is_isomorphic_bruteforce(&g, &h, opts)?;
                    let value = serde_json::json!({
                        "isomorphic": witness.is_some(),
                        "witness": witness.map(Vec::from),
                    });
                    print!("{}", to_json(&value));
                }
            }
        }
        Command::Gi { a, b, format, process, json, max_order } => {
            let (a, b) = (load(&a, format)?, load(&b, format)?);
            let process = match process {
                GiProcessArg::Sas => GiProcess::Sas,
                GiProcessArg::Wl => GiProcess::Wl,
            };
            let outcome = gi_decide(&a, &b, GiOptions { process, max_binding_order: max_order })?;
            if let Some(path) = json {
                emit(Some(&path), &(outcome.to_json() + "\n"))?;
            }
            println!("{} (rounds {}, {} stable cells)", outcome.verdict, outcome.rounds, outcome.partition.len());
            return Ok(if outcome.verdict == Verdict::Yes { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Validate { corpus, seed, out } => {
            let mut spec: CorpusSpec = read_json(corpus.as_deref())?;
            if let Some(seed) = seed {
                spec.seed = seed;
            }
            let report = validate_suite(&spec);
            if let Some(path) = out {
                emit(Some(&path), &to_json(&report))?;
            }
            println!("corpus: {} graphs", report.corpus_size);
            for c in &report.checks {
                let status = if c.violations == 0 { "ok" } else { "VIOLATED" };
                let kind = match c.category {
                    Category::Implementation => "impl",
                    Category::Claim => "claim",
                };
                println!("{status:>8}  {kind:<5} {:<34} {}/{}", c.name, c.violations, c.instances);
                if let Some(cx) = c.counterexamples.first() {
                    println!("          e.g. {} {}", cx.graphs.join(" "), cx.detail);
                }
            }
            let ff = &report.ff_agreement;
            println!("numeric/symbolic agreement: {}/{} ({:.1}%)", ff.agree, ff.total, 100.0 * ff.rate);
            println!("numeric pitfall reproduced: {}", report.ff_pitfall_faulty);
            return Ok(if report.is_clean() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Bench { spec, out } => {
            let spec: BenchSpec = read_json(spec.as_deref())?;
            let report = bench(&spec);
            if let Some(path) = out {
                emit(Some(&path), &to_json(&report))?;
            }
            println!("{:<10} {:>6} {:>7} {:>9} {:>11}", "family", "order", "rounds", "final dim", "ms");
            for r in &report.rows {
                println!("{:<10} {:>6} {:>7} {:>9} {:>11.3}", r.family, r.order, r.rounds, r.final_dim, r.millis);
            }
            for (family, slope) in &report.slopes {
                println!("log-log slope {family}: {slope:.2}");
            }
            println!("random graphs stable within n rounds: {}", report.rounds_within_order);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
