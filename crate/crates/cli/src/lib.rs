//! Command-line front end for `pathgraph`.
//!
//! [`dispatch`] runs one command line and returns the exit code with the
//! captured output, so the binary and the tests share one code path.
//!
//! Exit codes: 0 success, 1 domain error (including unreadable input),
//! 2 usage error, 3 scale-limit refusal. The first stderr line of a failure
//! is always `error[<code>]: <message>`; usage errors append the help text.

use std::f64::consts::PI;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use pathgraph::compiler::{parse_plan, plan_to_graph, render_plan, serialize_plan, synthesize_setup};
use pathgraph::counters::{count_pm_via_matrix, hafnian, parse_matrix, permanent, MatrixInput};
use pathgraph::feasibility::{hall_check, tutte_check, Feasibility};
use pathgraph::matching::{
    classify_layers, enumerate_factorizations, ghz_dimension,
    max_disjoint_pms, scan_ghz_dimension,
};
use pathgraph::network::{ensemble_csv, ensemble_scan};
use pathgraph::state::{
    frustration_scan, is_ghz_like, parse_state, search_graph_for_state, serialize_state,
    verify_target, SearchBounds,
};
use pathgraph::{
    enumerate_pm, parse_graph, serialize_graph, state_from_graph, to_dot, Error, ExperimentGraph,
    Limits, PerfectMatching, VertexId,
};
use serde::Serialize;
use serde_json::json;

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SCALE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(
    name = "pathgraph",
    version,
    about = "Multiphoton path-identity experiments as multigraphs"
)]
struct Cli {
    /// Output format: human-readable text or JSON.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Lift the configurable size guards (kernel order caps still apply).
    #[arg(long = "limit-override", global = true)]
    limit_override: bool,
    /// Normalize states before printing.
    #[arg(long, global = true)]
    normalize: bool,
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the perfect matchings (coincidence covers) of a graph.
    Matchings { graph: PathBuf },
    /// Count perfect matchings by enumeration and by hafnian/permanent.
    Count { graph: PathBuf },
    /// Post-selected state of an experiment.
    State { graph: PathBuf },
    /// Check whether a graph produces a target state up to global phase.
    Verify { graph: PathBuf, state: PathBuf },
    /// Search for a graph producing a target state.
    Search {
        state: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_edges: usize,
        #[arg(long, default_value_t = 3)]
        max_mode: u32,
        #[arg(long, default_value_t = 4)]
        max_parallel: usize,
    },
    /// Sweep one crystal's phase and report the post-selected intensity.
    Frustrate {
        graph: PathBuf,
        /// Edge id whose phase is swept.
        #[arg(long)]
        edge: String,
        /// Explicit phases in radians (comma separated).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        phases: Vec<f64>,
        /// Number of equally spaced phases in [0, 2π) when none are given.
        #[arg(long, default_value_t = 8)]
        steps: usize,
    },
    /// Maximum number of disjoint perfect matchings, or a scan over all
    /// simple graphs on N vertices.
    GhzMax {
        #[arg(required_unless_present = "scan", conflicts_with = "scan")]
        graph: Option<PathBuf>,
        /// Scan every subgraph of K_N.
        #[arg(long, value_name = "N")]
        scan: Option<usize>,
    },
    /// Enumerate the 1-factorizations of a regular graph.
    Factorize { graph: PathBuf },
    /// Split perfect matchings into layer and Maverick matchings.
    Layers { graph: PathBuf },
    /// Decide perfect-matching existence with a certificate.
    Check(CheckArgs),
    /// Hafnian of a symmetric matrix (JSON list of rows).
    Hafnian { matrix: PathBuf },
    /// Permanent of a square matrix (JSON list of rows).
    Permanent { matrix: PathBuf },
    /// Identify vertex pairs of two graphs (entanglement swapping).
    Merge {
        left: PathBuf,
        right: PathBuf,
        /// Vertex pair `x:y` (left vertex, right vertex); repeatable.
        #[arg(long = "pair", value_name = "X:Y", required = true)]
        pairs: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compile a graph into a layered experiment plan.
    Synth {
        graph: PathBuf,
        /// Also write the graph in DOT format to this file.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Turn a plan back into a graph document.
    Unsynth {
        plan: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Random-network ensembles over G(n, p).
    Random {
        #[arg(long)]
        n: usize,
        /// Edge probabilities (comma separated).
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the histogram as CSV instead of a report.
        #[arg(long)]
        csv: bool,
        /// Print one sampled graph (first probability, given seed) instead.
        #[arg(long)]
        emit_graph: bool,
    },
    /// Graphviz rendering of a graph.
    Dot { graph: PathBuf },
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(value_enum)]
    kind: CheckKind,
    graph: PathBuf,
    /// Pin one part of the bipartition (comma-separated vertex names); the
    /// other part is every remaining vertex, in declaration order.
    #[arg(long, value_delimiter = ',')]
    part: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Hall,
    Tutte,
}

/// Failures of one command, classified for the exit code.
#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io { path: PathBuf, message: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<String, Failure>;

struct Ctx {
    format: Format,
    limits: Limits,
    normalize: bool,
}

/// Parse `argv` (including the program name) and run the command.
pub fn dispatch<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CommandResult {
                        exit_code: EXIT_OK,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => CommandResult {
                    exit_code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: format!(
                        "error[usage]: {}\n\n{}",
                        first_line(&text),
                        Cli::command().render_help()
                    ),
                },
            };
        }
    };
    let ctx = Ctx {
        format: cli.format,
        limits: if cli.limit_override {
            Limits::unlimited()
        } else {
            Limits::default()
        },
        normalize: cli.normalize,
    };
    let outcome = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| run(&ctx, cli.command)),
            Err(e) => {
                return CommandResult {
                    exit_code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: format!("error[usage]: --threads: {e}\n"),
                }
            }
        },
        None => run(&ctx, cli.command),
    };
    match outcome {
        Ok(stdout) => CommandResult {
            exit_code: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Lib(e)) => CommandResult {
            exit_code: if e.is_scale_limit() { EXIT_SCALE } else { EXIT_DOMAIN },
            stdout: String::new(),
            stderr: format!("error[{}]: {e}\n", e.code()),
        },
        Err(Failure::Io { path, message }) => CommandResult {
            exit_code: EXIT_DOMAIN,
            stdout: String::new(),
            stderr: format!("error[io]: {}: {message}\n", path.display()),
        },
    }
}

fn first_line(text: &str) -> &str {
    text.lines()
        .next()
        .unwrap_or("")
        .trim_start_matches("error: ")
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn load_graph(path: &Path) -> Result<ExperimentGraph, Failure> {
    Ok(parse_graph(&read(path)?)?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("output serializes");
    out.push('\n');
    out
}

fn matching_line(pm: &PerfectMatching) -> String {
    format!("{{{}}}", pm.edge_ids().join(", "))
}

fn complex_text(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

fn run(ctx: &Ctx, command: Command) -> Outcome {
    let structured = ctx.format == Format::Structured;
    match command {
        Command::Matchings { graph } => {
            let pms = enumerate_pm(&load_graph(&graph)?, &ctx.limits)?;
            if structured {
                return Ok(to_json(&pms));
            }
            let mut out = format!("{} perfect matchings\n", pms.len());
            for pm in &pms {
                let _ = writeln!(out, "{}", matching_line(pm));
            }
            Ok(out)
        }
        Command::Count { graph } => {
            let g = load_graph(&graph)?;
            let enumeration = enumerate_pm(&g, &ctx.limits)?.len();
            let matrix = if g.has_measured() {
                None
            } else {
                Some(count_pm_via_matrix(&g, &ctx.limits)?)
            };
            if structured {
                return Ok(to_json(&json!({
                    "enumeration": enumeration,
                    "hafnian": matrix.as_ref().map(|m| m.hafnian.to_string()),
                    "permanent": matrix.as_ref().and_then(|m| m.permanent.as_ref().map(|p| p.to_string())),
                })));
            }
            let mut out = format!("enumeration: {enumeration}\n");
            if let Some(m) = matrix {
                let _ = writeln!(out, "hafnian: {}", m.hafnian);
                if let Some(p) = m.permanent {
                    let _ = writeln!(out, "permanent: {p}");
                }
            }
            Ok(out)
        }
        Command::State { graph } => {
            let s = state_from_graph(&load_graph(&graph)?, ctx.normalize, &ctx.limits)?;
            if structured {
                return Ok(serialize_state(&s));
            }
            let mut out = format!("{s}\n");
            if ctx.normalize && is_ghz_like(&s) {
                out.push_str("(GHZ form)\n");
            }
            Ok(out)
        }
        Command::Verify { graph, state } => {
            let target = parse_state(&read(&state)?)?;
            let ok = verify_target(&load_graph(&graph)?, &target, &ctx.limits)?;
            Ok(if structured {
                to_json(&json!({ "matches": ok }))
            } else {
                format!("{}\n", if ok { "match" } else { "no match" })
            })
        }
        Command::Search {
            state,
            max_edges,
            max_mode,
            max_parallel,
        } => {
            let target = parse_state(&read(&state)?)?;
            let bounds = SearchBounds {
                max_edges,
                max_mode,
                max_parallel,
            };
            match search_graph_for_state(&target, &bounds)? {
                Some(g) => Ok(serialize_graph(&g)),
                None if structured => Ok("null\n".into()),
                None => Ok("no graph within bounds\n".into()),
            }
        }
        Command::Frustrate {
            graph,
            edge,
            phases,
            steps,
        } => {
            let phases = if phases.is_empty() {
                (0..steps).map(|k| 2.0 * PI * k as f64 / steps as f64).collect()
            } else {
                phases
            };
            let pts = frustration_scan(&load_graph(&graph)?, &edge, &phases, &ctx.limits)?;
            if structured {
                return Ok(to_json(&pts));
            }
            let mut out = String::from("phase\tintensity\n");
            for p in pts {
                let _ = writeln!(out, "{:.6}\t{:.9}", p.phase, p.intensity);
            }
            Ok(out)
        }
        Command::GhzMax { graph, scan } => {
            if let Some(n) = scan {
                let s = scan_ghz_dimension(n, &ctx.limits)?;
                if structured {
                    return Ok(to_json(&s));
                }
                return Ok(format!(
                    "{} graphs on {} vertices scanned\nmax GHZ dimension: {}\nfirst attained by pair mask {:#x}\n",
                    s.graphs_scanned, s.vertices, s.max_dimension, s.witness_mask
                ));
            }
            let g = load_graph(graph.as_deref().expect("clap requires graph or --scan"))?;
            let d = max_disjoint_pms(&g, &ctx.limits)?;
            let dim = ghz_dimension(&g, &ctx.limits)?;
            if structured {
                return Ok(to_json(&json!({
                    "d": d.d,
                    "witness": d.witness,
                    "ghz_dimension": dim,
                })));
            }
            let mut out = format!("max disjoint perfect matchings: {}\n", d.d);
            for pm in &d.witness {
                let _ = writeln!(out, "  {}", matching_line(pm));
            }
            match dim {
                Some(k) => {
                    let _ = writeln!(out, "GHZ dimension: {k}");
                }
                None => out.push_str("GHZ dimension: none (matchings overlap)\n"),
            }
            Ok(out)
        }
        Command::Factorize { graph } => {
            let fs = enumerate_factorizations(&load_graph(&graph)?, &ctx.limits)?;
            if structured {
                return Ok(to_json(&fs));
            }
            let mut out = format!("{} 1-factorizations\n", fs.len());
            for f in &fs {
                let parts: Vec<String> = f.factors.iter().map(matching_line).collect();
                let _ = writeln!(out, "{}", parts.join(" "));
            }
            Ok(out)
        }
        Command::Layers { graph } => {
            let r = classify_layers(&load_graph(&graph)?, &ctx.limits)?;
            if structured {
                return Ok(to_json(&r));
            }
            let mut out = format!(
                "{} layer + {} maverick\n",
                r.layer_matchings.len(),
                r.maverick_matchings.len()
            );
            for pm in &r.layer_matchings {
                let _ = writeln!(out, "layer    {}", matching_line(pm));
            }
            for pm in &r.maverick_matchings {
                let _ = writeln!(out, "maverick {}", matching_line(pm));
            }
            Ok(out)
        }
        Command::Check(args) => check(ctx, args),
        Command::Hafnian { matrix } => {
            let value = match parse_matrix(&read(&matrix)?)? {
                MatrixInput::Integer(m) => json!(hafnian(&m)?.to_string()),
                MatrixInput::Complex(m) => {
                    let z = hafnian(&m)?;
                    json!([z.re, z.im])
                }
            };
            Ok(scalar_output(structured, "hafnian", value))
        }
        Command::Permanent { matrix } => {
            let value = match parse_matrix(&read(&matrix)?)? {
                MatrixInput::Integer(m) => json!(permanent(&m)?.to_string()),
                MatrixInput::Complex(m) => {
                    let z = permanent(&m)?;
                    json!([z.re, z.im])
                }
            };
            Ok(scalar_output(structured, "permanent", value))
        }
        Command::Merge {
            left,
            right,
            pairs,
            output,
        } => {
            let mut parsed = Vec::with_capacity(pairs.len());
            for p in &pairs {
                let (x, y) = p.split_once(':').ok_or_else(|| {
                    Error::Domain(format!("pair `{p}` must have the form x:y"))
                })?;
                parsed.push((x, y));
            }
            let merged = load_graph(&left)?.merge(&load_graph(&right)?, &parsed)?;
            emit(serialize_graph(&merged), output.as_deref())
        }
        Command::Synth { graph, dot, output } => {
            let g = load_graph(&graph)?;
            let plan = synthesize_setup(&g)?;
            if let Some(path) = dot {
                write(&path, &to_dot(&g))?;
            }
            let text = if structured || output.is_some() {
                serialize_plan(&plan)
            } else {
                render_plan(&plan)
            };
            emit(text, output.as_deref())
        }
        Command::Unsynth { plan, output } => {
            let g = plan_to_graph(&parse_plan(&read(&plan)?)?)?;
            emit(serialize_graph(&g), output.as_deref())
        }
        Command::Random {
            n,
            p,
            trials,
            seed,
            csv,
            emit_graph,
        } => {
            if emit_graph {
                return Ok(serialize_graph(&ExperimentGraph::random(n, p[0], seed)?));
            }
            let reports = ensemble_scan(n, &p, trials, seed, &ctx.limits)?;
            if csv {
                return Ok(ensemble_csv(&reports));
            }
            if structured {
                return Ok(to_json(&reports));
            }
            let mut out = String::new();
            for r in &reports {
                let _ = writeln!(
                    out,
                    "n={} p={} trials={} seed={}: matchable fraction {:.4}",
                    r.n, r.p, r.trials, r.seed, r.pm_exists_fraction
                );
                for (count, freq) in &r.pm_count_histogram {
                    let _ = writeln!(out, "  {count:>6} matchings: {freq}");
                }
            }
            Ok(out)
        }
        Command::Dot { graph } => Ok(to_dot(&load_graph(&graph)?)),
    }
}

fn scalar_output(structured: bool, name: &str, value: serde_json::Value) -> String {
    if structured {
        return to_json(&json!({ name: value }));
    }
    match &value {
        serde_json::Value::String(s) => format!("{s}\n"),
        serde_json::Value::Array(z) => {
            let re = z[0].as_f64().unwrap_or(f64::NAN);
            let im = z[1].as_f64().unwrap_or(f64::NAN);
            format!("{}\n", complex_text(Complex64::new(re, im)))
        }
        other => format!("{other}\n"),
    }
}

fn emit(text: String, output: Option<&Path>) -> Outcome {
    match output {
        Some(path) => {
            write(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn check(ctx: &Ctx, args: CheckArgs) -> Outcome {
    let g = load_graph(&args.graph)?;
    let structured = ctx.format == Format::Structured;
    let out = match args.kind {
        CheckKind::Hall => {
            let verdict = match &args.part {
                Some(names) => {
                    let mut x = Vec::with_capacity(names.len());
                    for name in names {
                        x.push(g.vertex(name).ok_or_else(|| Error::UnknownVertex(name.clone()))?);
                    }
                    let y: Vec<VertexId> = g.vertex_ids().filter(|v| !x.contains(v)).collect();
                    hall_check(&g, Some((&x, &y)))?
                }
                None => hall_check(&g, None)?,
            };
            if structured {
                to_json(&verdict)
            } else {
                match &verdict {
                    Feasibility::Matching { matching } => {
                        format!("perfect matching {}\n", matching_line(matching))
                    }
                    Feasibility::Violation { witness } => format!(
                        "no perfect matching: W = {{{}}} has neighbourhood {{{}}}\n",
                        witness.subset.join(", "),
                        witness.neighborhood.join(", ")
                    ),
                }
            }
        }
        CheckKind::Tutte => {
            let verdict = tutte_check(&g, &ctx.limits)?;
            if structured {
                to_json(&verdict)
            } else {
                match &verdict {
                    Feasibility::Matching { matching } => {
                        format!("perfect matching {}\n", matching_line(matching))
                    }
                    Feasibility::Violation { witness } => {
                        let comps: Vec<String> = witness
                            .odd_components
                            .iter()
                            .map(|c| format!("{{{}}}", c.join(", ")))
                            .collect();
                        format!(
                            "no perfect matching: U = {{{}}} leaves {} odd components {}\n",
                            witness.subset.join(", "),
                            witness.odd_components.len(),
                            comps.join(" ")
                        )
                    }
                }
            }
        }
    };
    Ok(out)
}
