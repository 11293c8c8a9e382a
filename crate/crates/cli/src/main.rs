use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use unchain::chain::{self, BridgeScenario, ChainError, ChainedReading, ModerateScenario};
use unchain::io::{read_matrix_csv, EdgeList};
use unchain::linkage::{agglomerate, single_linkage_components, LinkageKind};
use unchain::unchaining::{sl_alpha, sl_star_alpha, UnchainingError};
use unchain::{dbscan, fixtures, Alpha, Dendrogram, FiniteMetricSpace};

#[derive(Parser)]
#[command(name = "unchain", version, about = "Hierarchical clustering with density-sensitive unchaining")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a dendrogram.
    Cluster {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        alpha: Option<usize>,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Label points as DBSCAN clusters, noise and ambiguous borders.
    Dbscan {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        min_pts: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Detect a chaining structure or check a method against a scenario.
    Analyze {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        check: Check,
        #[command(flatten)]
        subsets: Subsets,
        /// Method whose dendrogram is checked.
        #[arg(long, value_enum, default_value_t = Method::Sl)]
        method: Method,
        #[arg(long)]
        alpha: Option<usize>,
        /// Use the larger of both connectivity thresholds as `b`.
        #[arg(long)]
        symmetric: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print a named fixture as edge-list JSON, or list the catalog.
    Fixture { name: Option<String> },
}

#[derive(Args)]
struct Source {
    /// Distance-matrix CSV or edge-list JSON.
    #[arg(long, conflicts_with = "fixture", required_unless_present = "fixture")]
    input: Option<PathBuf>,
    #[arg(long)]
    fixture: Option<String>,
    /// Input format; inferred from the file extension when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

/// Label lists are comma separated; `--chain`, `--left` and `--right` take
/// blocks separated by `;`.
#[derive(Args)]
struct Subsets {
    #[arg(long)]
    b1: Option<String>,
    #[arg(long)]
    b2: Option<String>,
    #[arg(long)]
    n1: Option<String>,
    #[arg(long)]
    n2: Option<String>,
    /// Bridge chain z_0..z_k in order.
    #[arg(long)]
    z: Option<String>,
    #[arg(long, default_value = "")]
    x: String,
    #[arg(long, default_value = "")]
    y: String,
    #[arg(long)]
    chain: Option<String>,
    #[arg(long, default_value = "")]
    left: String,
    #[arg(long, default_value = "")]
    right: String,
    #[arg(long)]
    tj: Option<f64>,
    #[arg(long)]
    ti: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Matrix,
    Graph,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Sl,
    Cl,
    Al,
    SlAlpha,
    SlStar,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Json,
    Newick,
    Text,
    Ultrametric,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Chained,
    SingleEdge,
    SmallerBlocks,
    Strongly,
    Completely,
    Weakly,
    Bridge,
    Moderate,
}

fn load(source: &Source) -> Result<FiniteMetricSpace> {
    if let Some(name) = &source.fixture {
        return match fixtures::find(name) {
            Some(f) => Ok(f.space()),
            None => bail!("unknown fixture {name:?}; available: {}", fixtures::names().join(", ")),
        };
    }
    let path = source.input.as_ref().expect("clap requires input or fixture");
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let format = source.format.unwrap_or_else(|| {
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => Format::Matrix,
            _ => Format::Graph,
        }
    });
    let space = match format {
        Format::Matrix => read_matrix_csv(&text, true)?,
        Format::Graph => EdgeList::from_json(&text)?.to_space()?,
    };
    Ok(space)
}

fn alpha_for(method: Method, alpha: Option<usize>) -> Result<Option<Alpha>> {
    match (method, alpha) {
        (Method::SlAlpha | Method::SlStar, None) => bail!("--alpha is required for this method"),
        (_, Some(a)) => Ok(Some(Alpha::new(a)?)),
        (_, None) => Ok(None),
    }
}

fn require_alpha(alpha: Option<usize>) -> Result<Alpha> {
    Ok(Alpha::new(alpha.ok_or_else(|| anyhow!("--alpha is required for this check"))?)?)
}

fn run_method(space: &FiniteMetricSpace, method: Method, alpha: Option<Alpha>) -> Result<Dendrogram> {
    Ok(match method {
        Method::Sl => single_linkage_components(space),
        Method::Cl => agglomerate(space, LinkageKind::Complete),
        Method::Al => agglomerate(space, LinkageKind::Average),
        Method::SlAlpha => sl_alpha(space, alpha.expect("checked by alpha_for")),
        Method::SlStar => sl_star_alpha(space, alpha.expect("checked by alpha_for"))?,
    })
}

fn labels(list: &str) -> Vec<String> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

fn blocks(list: &str) -> Vec<Vec<String>> {
    list.split(';').map(labels).filter(|b| !b.is_empty()).collect()
}

fn required(flag: &str, value: &Option<String>) -> Result<Vec<String>> {
    value
        .as_deref()
        .map(labels)
        .ok_or_else(|| anyhow!("--{flag} is required for this check"))
}

fn write_out(output: &Option<PathBuf>, text: &str) -> Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => Ok(std::io::stdout().write_all(text.as_bytes())?),
    }
}

fn pretty(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

fn analyze(
    space: &FiniteMetricSpace,
    check: Check,
    s: &Subsets,
    method: Method,
    alpha: Option<usize>,
    symmetric: bool,
) -> Result<String> {
    let detection = |name: &str, report: Option<chain::ChainReport>| {
        pretty(&json!({ "check": name, "present": report.is_some(), "report": report }))
    };
    let dendrogram = || -> Result<Dendrogram> {
        let a = alpha_for(method, alpha)?;
        run_method(space, method, a)
    };
    let out = match check {
        Check::Chained => {
            let reading = if symmetric { ChainedReading::Symmetric } else { ChainedReading::Literal };
            let r = chain::detect_chained_with(space, &required("b1", &s.b1)?, &required("b2", &s.b2)?, reading)?;
            detection("chained", r)
        }
        Check::SingleEdge => {
            let r = chain::detect_single_edge_chained(space, &required("b1", &s.b1)?, &required("b2", &s.b2)?)?;
            detection("single_edge", r)
        }
        Check::SmallerBlocks => {
            let bl = blocks(s.chain.as_deref().ok_or_else(|| anyhow!("--chain is required"))?);
            let refs: Vec<&[String]> = bl.iter().map(Vec::as_slice).collect();
            let r = chain::detect_smaller_block_chained(space, &refs, require_alpha(alpha)?)?;
            detection("smaller_blocks", r)
        }
        Check::Strongly => {
            let (b1, b2) = (required("b1", &s.b1)?, required("b2", &s.b2)?);
            pretty(&chain::verify_strongly_chaining(&dendrogram()?, space, &b1, &b2)?)
        }
        Check::Completely => {
            let bl = blocks(s.chain.as_deref().ok_or_else(|| anyhow!("--chain is required"))?);
            let refs: Vec<&[String]> = bl.iter().map(Vec::as_slice).collect();
            let a = require_alpha(alpha)?;
            pretty(&chain::verify_completely_chaining(&dendrogram()?, space, &refs, a)?)
        }
        Check::Weakly => {
            let a = require_alpha(alpha)?;
            let c = chain::verify_weakly_unchaining(
                &dendrogram()?,
                space,
                &required("b1", &s.b1)?,
                &required("b2", &s.b2)?,
                &required("n1", &s.n1)?,
                &required("n2", &s.n2)?,
                a,
            )?;
            pretty(&c)
        }
        Check::Bridge => {
            let scenario = BridgeScenario {
                b1: required("b1", &s.b1)?,
                b2: required("b2", &s.b2)?,
                z: required("z", &s.z)?,
                x: labels(&s.x),
                y: labels(&s.y),
            };
            let a = require_alpha(alpha)?;
            pretty(&chain::verify_bridge_unchaining(&dendrogram()?, space, &scenario, a)?)
        }
        Check::Moderate => {
            let scenario = ModerateScenario {
                chain: blocks(s.chain.as_deref().ok_or_else(|| anyhow!("--chain is required"))?),
                left: blocks(&s.left),
                right: blocks(&s.right),
                t_j: s.tj.ok_or_else(|| anyhow!("--tj is required"))?,
                t_i: s.ti.ok_or_else(|| anyhow!("--ti is required"))?,
            };
            pretty(&chain::verify_moderate_bridge_theorem(space, require_alpha(alpha)?, &scenario)?)
        }
    };
    Ok(out)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Cluster { source, method, alpha, emit, output } => {
            let a = alpha_for(method, alpha)?;
            let space = load(&source)?;
            let d = run_method(&space, method, a)?;
            let text = match emit {
                Emit::Json => d.to_json(),
                Emit::Newick => d.to_newick(),
                Emit::Text => d.render_text(),
                Emit::Ultrametric => d.to_ultrametric()?.to_csv(),
            };
            write_out(&output, &text)
        }
        Command::Dbscan { source, eps, min_pts, output } => {
            let space = load(&source)?;
            write_out(&output, &pretty(&dbscan::dbscan(&space, eps, min_pts)?))
        }
        Command::Analyze { source, check, subsets, method, alpha, symmetric, output } => {
            let space = load(&source)?;
            write_out(&output, &analyze(&space, check, &subsets, method, alpha, symmetric)?)
        }
        Command::Fixture { name: None } => {
            let lines: Vec<String> = fixtures::CATALOG
                .iter()
                .map(|f| format!("{}\t{}", f.name, f.doc))
                .collect();
            write_out(&None, &lines.join("\n"))
        }
        Command::Fixture { name: Some(name) } => match fixtures::find(&name) {
            Some(f) => write_out(&None, &f.edge_list().to_json()),
            None => bail!("unknown fixture {name:?}; available: {}", fixtures::names().join(", ")),
        },
    }
}

fn is_internal(err: &anyhow::Error) -> bool {
    err.chain().any(|e| {
        matches!(e.downcast_ref::<UnchainingError>(), Some(UnchainingError::Internal(_)))
            || matches!(
                e.downcast_ref::<ChainError>(),
                Some(ChainError::Unchaining(UnchainingError::Internal(_)))
            )
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(if is_internal(&err) { 3 } else { 2 })
        }
    }
}
