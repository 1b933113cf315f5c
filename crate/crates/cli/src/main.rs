//! Command-line surface: group inspection, clique/chromatic numbers, stable
//! colorings, Berge certification, psi tables, graph export, and the full
//! reproduction suite. Machine-readable JSON goes to stdout, one-line human
//! summaries to stderr. Exit codes: 0 success/certified, 1 theorem-check
//! failure or witness found, 2 input error, 3 resource cap.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use powergraph::arith::{factorize, psi, psi_closed_form, ArithError};
use powergraph::coloring::{color_group, verify_weak_stability, ColoringError};
use powergraph::graph::{
    build_power_graph, export, BitGraph, ExportFormat, GraphError, PowerGraph,
};
use powergraph::group::{group_from_named_tokens, group_from_spec_json, FiniteGroup, GroupError};
use powergraph::oracle::{chromatic_number_exact, max_clique_exact, OracleError};
use powergraph::perfectness::{certify_berge, BergeError};
use powergraph::verification::run_all;

const EXIT_THEOREM: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INPUT, message: message.into() }
    }
    fn theorem(message: impl Into<String>) -> Self {
        CliError { code: EXIT_THEOREM, message: message.into() }
    }
    fn resource(message: impl Into<String>) -> Self {
        CliError { code: EXIT_RESOURCE, message: message.into() }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::SizeCapExceeded { .. }
            | GroupError::ClosureCapExceeded { .. }
            | GroupError::DegreeCapExceeded { .. } => CliError::resource(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::resource(e.to_string())
    }
}

impl From<ArithError> for CliError {
    fn from(e: ArithError) -> Self {
        match e {
            ArithError::Overflow => CliError::resource(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<ColoringError> for CliError {
    fn from(e: ColoringError) -> Self {
        match e {
            ColoringError::ModulusTooLarge { .. } => CliError::resource(e.to_string()),
            ColoringError::TheoremViolation { .. } => CliError::theorem(e.to_string()),
            ColoringError::Oracle(o) => CliError::from(o),
            ColoringError::Arith(a) => CliError::from(a),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<BergeError> for CliError {
    fn from(e: BergeError) -> Self {
        CliError::resource(e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::input(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "powergraph",
    version,
    about = "Power graphs of finite groups: cliques, stable colorings, Berge certification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GroupInput {
    /// JSON group spec file
    #[arg(long, value_name = "FILE")]
    spec: Option<PathBuf>,
    /// Named constructor with parameters, e.g. --named cyclic 12
    #[arg(long, num_args = 1.., value_name = "NAME [PARAMS]")]
    named: Option<Vec<String>>,
}

impl GroupInput {
    fn load(&self) -> Result<FiniteGroup, CliError> {
        match (&self.spec, &self.named) {
            (Some(path), None) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
                Ok(group_from_spec_json(&text)?)
            }
            (None, Some(tokens)) => Ok(group_from_named_tokens(tokens)?),
            _ => Err(CliError::input("provide exactly one of --spec or --named")),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Order, exponent, and full-exponent status of a group
    Group {
        #[command(flatten)]
        input: GroupInput,
        /// Also print the element-order histogram
        #[arg(long)]
        inspect: bool,
    },
    /// Clique number of the power graph, with its witness element
    Omega {
        #[command(flatten)]
        input: GroupInput,
    },
    /// Chromatic number of the power graph
    Chi {
        #[command(flatten)]
        input: GroupInput,
    },
    /// Construct the coloring report
    Color {
        #[command(flatten)]
        input: GroupInput,
        /// Write the report to a file instead of stdout
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Cross-check against both oracles and the weak-stability check
        #[arg(long)]
        verify: bool,
    },
    /// Search the power graph for odd holes and antiholes
    VerifyBerge {
        #[command(flatten)]
        input: BergeInput,
        /// Longest cycle length to search for
        #[arg(long, value_name = "N")]
        max_cycle: Option<usize>,
    },
    /// Evaluate psi by the recurrence and the closed form
    Psi {
        /// Single argument to evaluate
        n: Option<u64>,
        /// Print a table for 1..=MAX instead
        #[arg(long, value_name = "MAX", conflicts_with = "n")]
        table: Option<u64>,
    },
    /// Export the power graph
    Export {
        #[command(flatten)]
        input: GroupInput,
        #[arg(long, value_enum)]
        format: FormatArg,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Run the full reproduction suite and print a pass/fail table
    ReproducePaper,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct BergeInput {
    /// JSON group spec file
    #[arg(long, value_name = "FILE")]
    spec: Option<PathBuf>,
    /// Named constructor with parameters
    #[arg(long, num_args = 1.., value_name = "NAME [PARAMS]")]
    named: Option<Vec<String>>,
    /// Raw graph JSON file: {"vertices": N, "edges": [[u, v], ...]}
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
}

fn emit(value: &impl Serialize, out: Option<&PathBuf>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::input(e.to_string()))?;
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| CliError::input(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn power_graph_of(input: &GroupInput) -> Result<(FiniteGroup, PowerGraph), CliError> {
    let g = input.load()?;
    let p = build_power_graph(&g);
    Ok((g, p))
}

fn cmd_group(input: &GroupInput, inspect: bool) -> Result<(), CliError> {
    let g = input.load()?;
    let mut value = json!({
        "name": g.name(),
        "order": g.order(),
        "exponent": g.exponent(),
        "full_exponent": g.is_full_exponent(),
    });
    if inspect {
        let histogram: Vec<(u64, usize)> = g.order_histogram();
        value["order_histogram"] = json!(histogram);
        value["associativity_exhaustive"] = json!(!g.associativity_sampled());
    }
    emit(&value, None)?;
    eprintln!(
        "{}: order {}, exponent {}, {}",
        g.name(),
        g.order(),
        g.exponent(),
        if g.is_full_exponent() { "full exponent" } else { "not full exponent" }
    );
    Ok(())
}

fn cmd_omega(input: &GroupInput) -> Result<(), CliError> {
    let (g, p) = power_graph_of(input)?;
    let (omega, witness) = p.omega();
    emit(
        &json!({
            "group": g.name(),
            "omega": omega,
            "witness": witness,
            "witness_label": g.label(witness),
        }),
        None,
    )?;
    eprintln!("omega({}) = {omega}, witness element {witness}", g.name());
    Ok(())
}

fn cmd_chi(input: &GroupInput) -> Result<(), CliError> {
    let g = input.load()?;
    let chi = powergraph::coloring::chi(&g)?;
    emit(&json!({ "group": g.name(), "chi": chi }), None)?;
    eprintln!("chi({}) = {chi}", g.name());
    Ok(())
}

fn cmd_color(input: &GroupInput, out: Option<&PathBuf>, verify: bool) -> Result<(), CliError> {
    let (g, p) = power_graph_of(input)?;
    let coloring = color_group(&g)?;
    if !verify {
        emit(&coloring, out)?;
        eprintln!("{}: {} colors over {} vertices", g.name(), coloring.palette_size, g.order());
        return Ok(());
    }
    let (omega, _) = p.omega();
    let clique = max_clique_exact(p.undirected())?;
    let chromatic = chromatic_number_exact(p.undirected())?;
    let proper = p
        .undirected()
        .edges()
        .iter()
        .all(|&(u, v)| coloring.assignment[u] != coloring.assignment[v]);
    let weakly_stable = verify_weak_stability(&g, &coloring.assignment).is_ok();
    let verified = proper
        && weakly_stable
        && coloring.palette_size as u64 == omega
        && clique.size as u64 == omega
        && chromatic == coloring.palette_size;
    emit(
        &json!({
            "coloring": coloring,
            "verification": {
                "omega": omega,
                "oracle_clique": clique.size,
                "oracle_chromatic": chromatic,
                "proper": proper,
                "weakly_stable": weakly_stable,
                "verified": verified,
            }
        }),
        out,
    )?;
    if verified {
        eprintln!(
            "{}: {} colors, verified against both oracles and weak stability",
            g.name(),
            coloring.palette_size
        );
        Ok(())
    } else {
        Err(CliError::theorem(format!(
            "{}: palette {} / omega {omega} / oracle clique {} / oracle chromatic {chromatic}, proper={proper}, weakly stable={weakly_stable}",
            g.name(),
            coloring.palette_size,
            clique.size
        )))
    }
}

fn cmd_verify_berge(input: &BergeInput, max_cycle: Option<usize>) -> Result<(), CliError> {
    let (source, graph) = match (&input.spec, &input.named, &input.graph) {
        (_, _, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            (path.display().to_string(), BitGraph::from_json(&text)?)
        }
        (spec, named, None) => {
            let group_input = GroupInput { spec: spec.clone(), named: named.clone() };
            let (g, p) = power_graph_of(&group_input)?;
            (g.name().to_string(), p.undirected().clone())
        }
    };
    let report = certify_berge(&graph, max_cycle)?;
    emit(&json!({ "source": source, "report": report }), None)?;
    if report.certified {
        eprintln!(
            "{source}: certified Berge up to cycle length {} ({})",
            report.max_cycle_length,
            if report.exhaustive { "exhaustive" } else { "bounded" }
        );
        Ok(())
    } else {
        let witness = report.witness.expect("uncertified report carries a witness");
        Err(CliError::theorem(format!(
            "{source}: found {:?} {:?}",
            witness.kind, witness.vertices
        )))
    }
}

fn psi_row(n: u64) -> Result<(u64, u64, bool), CliError> {
    let f = factorize(n)?;
    let a = psi(&f);
    let b = psi_closed_form(&f);
    Ok((a, b, a == b))
}

fn cmd_psi(n: Option<u64>, table: Option<u64>) -> Result<(), CliError> {
    match (n, table) {
        (Some(n), None) => {
            let (a, b, agree) = psi_row(n)?;
            emit(&json!({ "n": n, "psi": a, "closed_form": b, "agree": agree }), None)?;
            if agree {
                eprintln!("psi({n}) = {a}, both methods agree");
                Ok(())
            } else {
                Err(CliError::theorem(format!("psi({n}): recurrence {a} != closed form {b}")))
            }
        }
        (None, Some(max)) => {
            if max == 0 {
                return Err(CliError::input("--table MAX must be at least 1"));
            }
            let mut rows = Vec::new();
            let mut disagreements = 0u64;
            for k in 1..=max {
                let (a, b, agree) = psi_row(k)?;
                if !agree {
                    disagreements += 1;
                }
                rows.push(json!({ "n": k, "psi": a, "closed_form": b, "agree": agree }));
            }
            emit(&rows, None)?;
            eprintln!("{max} rows, {disagreements} disagreements");
            if disagreements == 0 {
                Ok(())
            } else {
                Err(CliError::theorem(format!("{disagreements} psi disagreements up to {max}")))
            }
        }
        _ => Err(CliError::input("provide N or --table MAX")),
    }
}

fn cmd_export(input: &GroupInput, format: FormatArg, out: Option<&PathBuf>) -> Result<(), CliError> {
    let (g, p) = power_graph_of(input)?;
    let text = match format {
        FormatArg::Dot => export(&p, ExportFormat::Dot),
        FormatArg::Json => export(&p, ExportFormat::Json),
    };
    match out {
        Some(path) => fs::write(path, &text)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    eprintln!("exported power graph of {} ({} vertices)", g.name(), g.order());
    Ok(())
}

fn cmd_reproduce_paper() -> Result<(), CliError> {
    let reports = run_all();
    let rows: Vec<serde_json::Value> = reports
        .iter()
        .enumerate()
        .map(|(i, r)| {
            json!({
                "criterion": i + 1,
                "name": r.name,
                "pass": r.pass,
                "details": r.details,
            })
        })
        .collect();
    emit(&rows, None)?;
    let mut failures = 0;
    for (i, r) in reports.iter().enumerate() {
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        eprintln!("criterion {}: {verdict} [{} ms] {}", i + 1, r.elapsed_ms, r.name);
        if !r.pass {
            failures += 1;
        }
    }
    if failures == 0 {
        eprintln!("all {} criteria pass", reports.len());
        Ok(())
    } else {
        Err(CliError::theorem(format!("{failures} criteria failed")))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Group { input, inspect } => cmd_group(&input, inspect),
        Command::Omega { input } => cmd_omega(&input),
        Command::Chi { input } => cmd_chi(&input),
        Command::Color { input, out, verify } => cmd_color(&input, out.as_ref(), verify),
        Command::VerifyBerge { input, max_cycle } => cmd_verify_berge(&input, max_cycle),
        Command::Psi { n, table } => cmd_psi(n, table),
        Command::Export { input, format, out } => cmd_export(&input, format, out.as_ref()),
        Command::ReproducePaper => cmd_reproduce_paper(),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "error: {}", e.message);
            std::process::exit(e.code as i32);
        }
    }
}
