//! Command-line front end. Each subcommand returns a [`RunReport`];
//! errors map to exit status 1 and violated guaranteed invariants to 2.

mod commands;
mod report;

pub use commands::{cmd_cost, cmd_index, cmd_query, cmd_transform, cmd_verify, CliError};
pub use report::{parse_machine_block, InputDigest, Outcome, RunReport, MACHINE_MARKER};

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::vsm::Weighting;

#[derive(Debug, Parser)]
#[command(
    name = "gvsm",
    version,
    about = "tf-idf retrieval with matrix group actions on the term space"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an index from a corpus file, one document per line.
    Index {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, value_parser = parse_weighting)]
        weighting: Weighting,
        /// Whitespace separated term list fixing the basis order.
        #[arg(long)]
        vocab: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rank the indexed documents against a query.
    Query {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        text: String,
        #[arg(long, default_value_t = 10)]
        top: usize,
        /// Transform the query by this element first, for use with a
        /// transformed index.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Apply a group element to every document vector.
    Transform {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the invariants a group element should preserve on an index.
    Verify {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Total cost of documents under a per-term cost functional.
    Cost {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        costs: PathBuf,
        #[arg(long)]
        doc: Option<usize>,
    },
}

fn parse_weighting(s: &str) -> Result<Weighting, String> {
    s.parse()
}

pub fn execute(command: &Command) -> Result<RunReport, CliError> {
    match command {
        Command::Index {
            corpus,
            weighting,
            vocab,
            out,
        } => cmd_index(corpus, *weighting, vocab.as_deref(), out),
        Command::Query {
            index,
            text,
            top,
            matrix,
        } => cmd_query(index, text, *top, matrix.as_deref()),
        Command::Transform { index, matrix, out } => cmd_transform(index, matrix, out),
        Command::Verify { index, matrix } => cmd_verify(index, matrix),
        Command::Cost { index, costs, doc } => cmd_cost(index, costs, *doc),
    }
}

/// Parses `args`, runs the command, prints its report and returns the
/// process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            print!("{report}");
            report.outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
