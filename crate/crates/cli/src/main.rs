use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fcentrality::io::{OutputFormat, SymmetrizePolicy};
use fcentrality::StoppingNorm;

mod commands;
mod output;

/// Nonlinear f-eigenvector centrality for multiplex networks.
///
/// Exit status: 0 on success, 2 on invalid input or parameters, 3 when the
/// iteration stops before reaching the tolerance (results are still written).
#[derive(Debug, Parser)]
#[command(name = "fcentrality", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Node and layer f-eigenvector centralities.
    Centrality {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// One of the linear eigenvector-based measures.
    Baseline {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        measure: Measure,
        #[command(flatten)]
        linear: LinearArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Pearson table, isim curves and scatter data between measures.
    Compare {
        #[command(flatten)]
        input: InputArgs,
        /// Measures to compare; `f` is the f-eigenvector centrality.
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "f,eig_ver,eig_cen,agg_eig,agg_deg"
        )]
        measures: Vec<CompareMeasure>,
        /// Length of the isim curves (default: all nodes).
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        linear: LinearArgs,
        /// Directory for pearson.csv, isim.csv and scatter.csv; the Pearson table goes to stdout otherwise.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Contraction factor and a priori iteration count.
    Bound {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 2.1)]
        alpha: f64,
        #[arg(long, default_value_t = 2.0)]
        beta: f64,
        /// Target max-norm error.
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
    },
    /// Sizes, isolated nodes and connectivity.
    Info {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Rankings and iteration counts over a list of alpha values.
    Sweep {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_delimiter = ',', default_value = "2.1,2.5,2.7,3,4,5,10")]
        alphas: Vec<f64>,
        #[arg(long, default_value_t = 2.0)]
        beta: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 1000)]
        max_iter: usize,
        #[arg(long, default_value = "euclidean")]
        norm: StoppingNorm,
        #[arg(long)]
        unsafe_params: bool,
        /// Directory for sweep.csv and spaghetti.csv; the summary goes to stdout otherwise.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Edge list: `layer node node [weight]` per line, 1-based.
    input: PathBuf,
    /// Number of nodes, when larger than the largest index in the file.
    #[arg(long)]
    n: Option<usize>,
    /// Number of layers, when larger than the largest layer in the file.
    #[arg(long)]
    layers: Option<usize>,
    #[arg(long, value_enum, default_value = "mirror")]
    symmetrize: Symmetrize,
    /// Treat every listed edge as weight 1.
    #[arg(long)]
    unweighted: bool,
    /// File of `id label` lines used for the label column.
    #[arg(long)]
    node_labels: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SolverArgs {
    #[arg(long, default_value_t = 2.1)]
    alpha: f64,
    #[arg(long, default_value_t = 2.0)]
    beta: f64,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 1000)]
    max_iter: usize,
    /// Norm used in the stopping rule: euclidean, one or max.
    #[arg(long, default_value = "euclidean")]
    norm: StoppingNorm,
    /// Run even when 2/beta < alpha - 1 fails.
    #[arg(long)]
    unsafe_params: bool,
    /// Start from a random positive pair instead of the uniform one.
    #[arg(long)]
    random_start: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct LinearArgs {
    /// Layer weights, comma separated (default: all ones).
    #[arg(long, value_delimiter = ',')]
    omega: Option<Vec<f64>>,
    /// Layer influence matrix for the heterogeneous measures: identity, ones or a file of L rows.
    #[arg(long, default_value = "ones")]
    influence: String,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write files here instead of printing the node table.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum Symmetrize {
    Mirror,
    Max,
    Error,
}

impl From<Symmetrize> for SymmetrizePolicy {
    fn from(s: Symmetrize) -> Self {
        match s {
            Symmetrize::Mirror => SymmetrizePolicy::Mirror,
            Symmetrize::Max => SymmetrizePolicy::Max,
            Symmetrize::Error => SymmetrizePolicy::Error,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
#[value(rename_all = "snake_case")]
enum Measure {
    EigCen,
    AggEig,
    AggDeg,
    EigVer,
    LocalHet,
    GlobalHet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
#[value(rename_all = "snake_case")]
enum CompareMeasure {
    F,
    EigVer,
    EigCen,
    AggEig,
    AggDeg,
}

/// Errors mapped to exit status 2.
pub(crate) type CliResult<T> = anyhow::Result<T>;

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Status {
    Done,
    NotConverged,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(Status::Done) => ExitCode::SUCCESS,
        Ok(Status::NotConverged) => {
            eprintln!("warning: tolerance not reached");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
