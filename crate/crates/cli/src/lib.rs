//! Command-line front end: JSON in, JSON or text out.
//!
//! Exit status is 0 on success, 2 when the input is rejected (bad arguments,
//! malformed JSON, or a domain error), and 1 when a file cannot be read or
//! written.

mod commands;
mod render;
mod seeds;

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use render::{density_svg, graph_dot, graph_svg, polygon_svg};
pub use seeds::parse_seed;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Domain(_) => 2,
        }
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(format!("{}: {e}", stringify!($t).rsplit("::").next().unwrap_or_default()))
            }
        }
    )*};
}

domain_from!(
    graph_core::GraphError,
    dh_measure::DhError,
    toric_geometry::ToricError,
    blowup_calculus::BlowupError,
    classify::ClassifyError,
    homology::HomologyError,
    serde_json::Error
);

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Shift,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Svg,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Graph,
    Polygon,
    Density,
}

#[derive(Debug, Parser)]
#[command(name = "s1graph", version, about = "Decorated graphs of Hamiltonian circle actions on 4-manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct Io {
    /// Input file, standard input when absent.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Output file, standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the structural and consistency rules of a graph.
    Validate {
        #[command(flatten)]
        io: Io,
    },
    /// Decide whether two graphs are isomorphic.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
    },
    /// Print the Duistermaat-Heckman density of a graph.
    Dh {
        #[command(flatten)]
        io: Io,
        /// Also plot the density.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Graph of a Delzant polygon with the circle acting on the second factor.
    Polygon2graph {
        #[command(flatten)]
        io: Io,
    },
    /// Delzant polygon realizing a genus-zero graph.
    Graph2polygon {
        #[command(flatten)]
        io: Io,
    },
    /// Blow up at a vertex, or list the sites and their maximal sizes.
    Blowup {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        vertex: Option<String>,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Blow down at a numbered site, or list the sites.
    Blowdown {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        site: Option<usize>,
    },
    /// Reduce to a minimal graph and name its family.
    Minimal {
        #[command(flatten)]
        io: Io,
    },
    /// Write every class reachable from the seeds.
    Enumerate {
        /// FAMILY:params, for example cp2:1,2 or ruled:0,1,1,1.
        #[arg(long = "seed", required = true)]
        seeds: Vec<String>,
        #[arg(long, default_value_t = 1)]
        max_blowups: usize,
        /// Directory for one JSON file per class and an index.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Normal-form polygon of a graph with isolated fixed points.
    Classify {
        #[command(flatten)]
        io: Io,
    },
    /// Intersection pairing of a graph with two fixed surfaces.
    Homology {
        #[command(flatten)]
        io: Io,
    },
    /// Draw a graph, polygon or density.
    Render {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value = "graph")]
        kind: Kind,
        #[arg(long, value_enum, default_value = "svg")]
        format: Format,
    },
}

/// Runs one command line and returns the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match commands::dispatch(cli.command, stdin, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
