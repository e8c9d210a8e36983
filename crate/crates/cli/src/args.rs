use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "necklace",
    version,
    about = "Build and analyse necklace-type wild Cantor sets"
)]
pub struct Cli {
    /// Seed for the rigid-class allocator; random when omitted.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a sequence realising a group such as `Z^2 x Z/2 x Z/4`.
    Build {
        spec: String,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Report symmetry group, genus, unsplittability and index facts.
    Analyze {
        path: PathBuf,
        /// Exit with status 5 unless the group is isomorphic to this one.
        #[arg(long)]
        expect: Option<String>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two sequences are equivalent stage by stage.
    CheckEquiv { a: PathBuf, b: PathBuf },
    /// Export the linking structure as Graphviz DOT or canonical JSON.
    Export {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = ExportFormat::Dot)]
        format: ExportFormat,
        /// Number of chain levels to draw; all of them when omitted.
        #[arg(long)]
        depth: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Dot,
    Json,
}
