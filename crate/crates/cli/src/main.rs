//! `pmrq`: evaluate path queries and post-process path multiset
//! representations from the command line.

mod commands;
mod error;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pmr_core::automata::DEFAULT_STATE_CAP;
use pmr_core::pmr::DEFAULT_PATH_CAP;

#[derive(Parser)]
#[command(
    name = "pmrq",
    version,
    about = "Path multiset queries over edge-labeled graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a query, or load a stored PMR, and print it.
    Eval(EvalArgs),
    /// Print the number of answer paths (`inf` when infinite).
    Count(InputArgs),
    /// Print the subgraph used by the answer paths, in graph file format.
    Project(InputArgs),
    /// Compare two stored PMRs; exit status 0 if equivalent, 1 if not.
    Equiv(EquivArgs),
    /// Draw answer paths uniformly at random.
    Sample(SampleArgs),
    /// Merge bisimilar rep-nodes. Keeps the path set, not multiplicities.
    Minimize(InputArgs),
}

/// Where the answer comes from: a query evaluated against the graph, or a
/// stored PMR document.
#[derive(Args, Clone)]
pub struct InputArgs {
    /// Graph file.
    #[arg(long)]
    pub graph: PathBuf,
    /// Query text.
    #[arg(long, conflicts_with_all = ["query_file", "pmr"])]
    pub query: Option<String>,
    /// File holding the query text.
    #[arg(long, conflicts_with = "pmr")]
    pub query_file: Option<PathBuf>,
    /// Stored PMR document instead of a query.
    #[arg(long)]
    pub pmr: Option<PathBuf>,
    /// Automaton for `@NAME` in the query, as NAME=FILE. Repeatable.
    #[arg(long = "automaton", value_name = "NAME=FILE")]
    pub automata: Vec<String>,
    /// Accept ambiguous automata. The path set stays right, multiplicities
    /// may not.
    #[arg(long)]
    pub set_semantics: bool,
    /// State cap for regex compilation.
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    pub det_cap: usize,
    /// Path cap for the simple and trail modes.
    #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
    pub path_cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    /// PMR document (JSON).
    Pmr,
    /// Tab-separated rows `src tgt path`.
    Table,
    /// Number of paths.
    Count,
    /// Projected subgraph.
    Graph,
}

#[derive(Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = OutFormat::Table)]
    pub out: OutFormat,
    /// Stop the table after this many rows.
    #[arg(long)]
    pub limit: Option<usize>,
    /// Only list paths of at most this many edges.
    #[arg(long)]
    pub max_length: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EquivMode {
    Multiset,
    Set,
}

#[derive(Args)]
pub struct EquivArgs {
    #[arg(long)]
    pub graph: PathBuf,
    pub left: PathBuf,
    pub right: PathBuf,
    #[arg(long, value_enum, default_value_t = EquivMode::Multiset)]
    pub mode: EquivMode,
    /// State cap for the subset construction in set mode.
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    pub det_cap: usize,
}

#[derive(Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Sample among paths of exactly this length.
    #[arg(long)]
    pub length: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of draws.
    #[arg(long, default_value_t = 1)]
    pub samples: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Eval(a) => commands::eval(&a, &mut out),
        Command::Count(a) => commands::count(&a, &mut out),
        Command::Project(a) => commands::project(&a, &mut out),
        Command::Equiv(a) => commands::equiv(&a, &mut out),
        Command::Sample(a) => commands::sample(&a, &mut out),
        Command::Minimize(a) => commands::minimize(&a, &mut out),
    };
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(code), Ok(())) => ExitCode::from(code),
        (Ok(_), Err(e)) => {
            eprintln!("pmrq: {e}");
            ExitCode::from(error::EXIT_SEMANTIC)
        }
        (Err(e), _) => {
            eprintln!("pmrq: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
