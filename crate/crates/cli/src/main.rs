//! `edgewise`: build, query, verify and export edgewise subdivisions.
//!
//! Exit codes: 0 success, 1 a checked invariant failed, 2 bad arguments,
//! 3 an exhaustive route exceeded its capacity.

mod commands;
mod error;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use edgewise::{LatticeVertex, Partition, DEFAULT_MAX_FACETS};

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "edgewise", version, about = "Edgewise subdivisions T_{k,q} of a simplex")]
pub struct Cli {
    /// Number of vertices of the subdivided simplex.
    #[arg(short = 'k', global = true)]
    pub k: Option<u32>,
    /// Subdivision parameter.
    #[arg(short = 'q', global = true)]
    pub q: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout (a directory for `tables`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest number of facets an exhaustive route may enumerate.
    #[arg(long, default_value_t = DEFAULT_MAX_FACETS, global = true)]
    pub max_facets: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Off,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Facet codes and vertices of T_{k,q}.
    Build,
    /// The h-vector by every route, with an agreement verdict.
    Hvector,
    /// The shelling order and its verified certificate.
    Shell,
    /// The link of a vertex or face, or the model complex K_λ.
    Link {
        /// A vertex such as 1,2,3.
        #[arg(long, conflicts_with_all = ["face", "partition"])]
        vertex: Option<LatticeVertex>,
        /// A vertex of the face; repeat once per vertex.
        #[arg(long, conflicts_with = "partition")]
        face: Vec<LatticeVertex>,
        /// Describe K_λ for a partition such as 3,2,1.
        #[arg(long)]
        partition: Option<Partition>,
    },
    /// Counts of link types; `--table` gives the closed-form tables.
    ClassifyLinks {
        #[arg(long)]
        table: bool,
        /// Largest dimension listed in the Q_s and distinct-link tables.
        #[arg(long, default_value_t = 9)]
        max_dim: u32,
    },
    /// The star cluster of a facet F(v, Id) with its shelling.
    StarCluster {
        /// Base vertex v; defaults to (1, 2, .., k-1).
        #[arg(long)]
        vertex: Option<LatticeVertex>,
    },
    /// Regenerate every table as CSV files in the `--out` directory.
    Tables,
    /// Geometric realization of T_{k,q}.
    Export {
        /// Emit OFF (the only export format).
        #[arg(long)]
        off: bool,
    },
}

fn run(cli: &Cli) -> CliResult<()> {
    let report = commands::dispatch(cli)?;
    if let Some(body) = &report.body {
        match &cli.out {
            Some(path) => std::fs::write(path, body)
                .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?,
            None => match std::io::stdout().write_all(body.as_bytes()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                r => r?,
            },
        }
    }
    match report.breach {
        Some(msg) => Err(CliError::Invariant(msg)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("edgewise: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
