use std::io::{Read as _, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use copzero::graphgen::{matrix_from_graph, PlainGraph};
use copzero::input::{format_matrix, parse_matrix_with, parse_vector, ParseOptions};
use copzero::minimal_zeros::enumerate_minimal_zeros;
use copzero::report::{self, run_pipeline, AnalysisReport, PipelineOptions, SCHEMA_VERSION};
use copzero::zerograph::{
    build_graph, build_representation, extended_support_set, maximal_cliques,
};
use copzero::zeroset::{component_membership, is_zero, SimplexPoint};
use copzero::{fixtures, Mode, SymMatrix, TolerancePolicy};

/// Minimal zeros, minimal zeros graphs and zero-set representations of
/// copositive matrices.
#[derive(Parser)]
#[command(name = "copzero", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args)]
struct GlobalArgs {
    /// Arithmetic mode. Defaults to exact for rational input.
    #[arg(long, global = true, env = "COPZERO_MODE")]
    mode: Option<Mode>,
    #[arg(long, global = true, default_value_t = TolerancePolicy::default().rank_eps)]
    rank_eps: f64,
    #[arg(long, global = true, default_value_t = TolerancePolicy::default().zero_eps)]
    zero_eps: f64,
    #[arg(long, global = true, default_value_t = TolerancePolicy::default().positivity_eps)]
    positivity_eps: f64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Use a built-in matrix instead of reading input.
    #[arg(long, global = true, value_parser = clap::builder::PossibleValuesParser::new(fixtures::NAMES))]
    fixture: Option<String>,
    /// Exit with status 2 and skip enumeration when the matrix is not copositive.
    #[arg(long, global = true)]
    gate: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline.
    Analyze(InputArg),
    CheckCopositive(InputArg),
    MinimalZeros(InputArg),
    Graph {
        #[command(flatten)]
        input: InputArg,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
    Cliques(InputArg),
    Representation(InputArg),
    /// Report whether a point is a zero and which components contain it.
    Membership {
        #[command(flatten)]
        input: InputArg,
        /// File holding the point as whitespace-separated entries.
        #[arg(long)]
        point: PathBuf,
    },
    /// Run all structural checks plus the grid oracle.
    Verify {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = 6)]
        grid: u32,
    },
    /// Print the 0/1 matrix whose minimal zeros graph is the given graph.
    FromGraph {
        /// Edge list: `n <count>` then one `i j` pair per line; `-` for stdin.
        edgelist: PathBuf,
    },
}

#[derive(Args)]
struct InputArg {
    /// Matrix file; stdin when omitted or `-`.
    file: Option<PathBuf>,
}

fn read_source(path: Option<&PathBuf>) -> anyhow::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))
        }
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .context("cannot read stdin")?;
            Ok(text)
        }
    }
}

impl GlobalArgs {
    fn policy(&self) -> anyhow::Result<TolerancePolicy> {
        Ok(TolerancePolicy::new(
            self.rank_eps,
            self.zero_eps,
            self.positivity_eps,
        )?)
    }

    fn matrix(&self, input: &InputArg) -> anyhow::Result<SymMatrix> {
        let policy = self.policy()?;
        match &self.fixture {
            Some(name) => {
                if input.file.is_some() {
                    bail!("give either --fixture or an input file, not both");
                }
                let x =
                    fixtures::by_name(name).with_context(|| format!("unknown fixture {name}"))?;
                let x = x.with_policy(policy);
                Ok(match self.mode {
                    Some(mode) => x.to_mode(mode),
                    None => x,
                })
            }
            None => {
                let text = read_source(input.file.as_ref())?;
                let options = ParseOptions {
                    mode: self.mode,
                    policy,
                };
                Ok(parse_matrix_with(&text, &options)?)
            }
        }
    }

    fn pipeline(&self, oracle_grid: Option<u32>) -> PipelineOptions {
        PipelineOptions {
            gate: self.gate,
            oracle_grid,
            ..Default::default()
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn print_json(value: &serde_json::Value) {
    emit(&format!(
        "{}\n",
        serde_json::to_string_pretty(value).expect("json value serializes")
    ));
}

/// Exit status for a finished report.
fn status(global: &GlobalArgs, report: &AnalysisReport) -> ExitCode {
    if global.gate && report.is_copositive() == Some(false) {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let g = &cli.global;
    match &cli.command {
        Command::Analyze(input) => {
            let report = run_pipeline(&g.matrix(input)?, &g.pipeline(None))?;
            if g.json {
                emit(&format!("{}\n", report.to_json()));
            } else {
                emit(&report::render_text(&report));
            }
            Ok(status(g, &report))
        }
        Command::CheckCopositive(input) => {
            let x = g.matrix(input)?;
            let verdict = copzero::copositivity::check_copositive(&x)?;
            if g.json {
                print_json(&json!({ "schema_version": SCHEMA_VERSION, "copositivity": verdict }));
            } else {
                emit(&report::text_copositivity(Some(&verdict)));
            }
            Ok(if g.gate && !verdict.is_copositive {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::MinimalZeros(input)
        | Command::Cliques(input)
        | Command::Representation(input)
        | Command::Graph { input, .. } => {
            let options = PipelineOptions {
                verify: false,
                ..g.pipeline(None)
            };
            let report = run_pipeline(&g.matrix(input)?, &options)?;
            if report.gated {
                if g.json {
                    print_json(
                        &json!({ "schema_version": SCHEMA_VERSION, "copositivity": report.copositivity, "gated": true }),
                    );
                } else {
                    emit(&report::text_copositivity(report.copositivity.as_ref()));
                }
                return Ok(ExitCode::from(2));
            }
            stage_output(&cli.command, g, &report);
            Ok(ExitCode::SUCCESS)
        }
        Command::Membership { input, point } => {
            let x = g.matrix(input)?;
            let coords = parse_vector(&read_source(Some(point))?)?;
            if coords.len() != x.dim() {
                bail!(
                    "point has {} entries, matrix dimension is {}",
                    coords.len(),
                    x.dim()
                );
            }
            let t = SimplexPoint::new(coords.into_iter().map(|v| v.to_mode(x.mode())).collect())?;
            let zeros = enumerate_minimal_zeros(&x);
            let cliques = maximal_cliques(&build_graph(&extended_support_set(&x, &zeros)));
            let rep = build_representation(&x, &zeros, &cliques);
            let zero = is_zero(&x, &t);
            let components: Vec<usize> = component_membership(&rep, &x, &t)
                .iter()
                .map(|s| s + 1)
                .collect();
            if g.json {
                print_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "point": t.coords(),
                    "support": t.support(&x),
                    "is_zero": zero,
                    "components": components,
                }));
            } else {
                let list: Vec<String> = components.iter().map(ToString::to_string).collect();
                emit(&format!(
                    "support {}\nzero: {}\ncomponents: {{{}}}\n",
                    t.support(&x),
                    if zero { "yes" } else { "no" },
                    list.join(", ")
                ));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { input, grid } => {
            let report = run_pipeline(&g.matrix(input)?, &g.pipeline(Some(*grid)))?;
            if report.gated {
                emit(&report::text_copositivity(report.copositivity.as_ref()));
                return Ok(ExitCode::from(2));
            }
            if g.json {
                print_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "verification": report.verification,
                    "tags": report.tags,
                }));
            } else {
                emit(&report::text_verification(&report));
            }
            Ok(if report.verification_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::FromGraph { edgelist } => {
            let graph = PlainGraph::parse_edge_list(&read_source(Some(edgelist))?)?;
            let y = matrix_from_graph(&graph)?;
            if g.json {
                print_json(&json!({ "p": y.dim(), "rows": y.rows() }));
            } else {
                emit(&format_matrix(&y));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn stage_output(command: &Command, g: &GlobalArgs, report: &AnalysisReport) {
    let header = |value: serde_json::Value| {
        let mut v = json!({ "schema_version": SCHEMA_VERSION, "tags": report.tags });
        if let (Some(out), Some(extra)) = (v.as_object_mut(), value.as_object()) {
            out.extend(extra.clone());
        }
        v
    };
    match command {
        Command::MinimalZeros(_) => {
            if g.json {
                print_json(&header(json!({ "minimal_zeros": report.minimal_zeros })));
            } else {
                emit(&report::text_minimal_zeros(report));
            }
        }
        Command::Graph { dot: true, .. } => {
            let supports: Vec<_> = report.minimal_zeros.iter().map(|z| z.support).collect();
            let edges = report.graph.edges.iter().map(|[a, b]| (a - 1, b - 1));
            let graph = copzero::zerograph::ZerosGraph::new(report.graph.vertices.len(), edges)
                .expect("report graph is valid");
            emit(&graph.to_dot(&supports));
        }
        Command::Graph { .. } => {
            if g.json {
                print_json(&header(json!({
                    "extended_support_set": report.extended_support_set,
                    "graph": report.graph,
                })));
            } else {
                emit(&report::text_extended(report));
                emit(&report::text_graph(report));
            }
        }
        Command::Cliques(_) => {
            if g.json {
                print_json(&header(
                    json!({ "maximal_cliques": report.maximal_cliques }),
                ));
            } else {
                emit(&report::text_cliques(report));
            }
        }
        _ => {
            if g.json {
                print_json(&header(json!({ "representation": report.representation })));
            } else {
                emit(&report::text_representation(report));
            }
        }
    }
    if !g.json {
        for tag in &report.tags {
            eprintln!("note: {tag}");
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Status 2 is reserved for a gate rejection.
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
