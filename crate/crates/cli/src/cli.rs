use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lifted_walk::boundary::BoundaryKind;
use lifted_walk::walk::Scaling;

use crate::dataset::Format;
use crate::figures::FigureId;
use crate::initial::InitialSpec;

#[derive(Debug, Parser)]
#[command(
    name = "lifted-walk",
    version,
    about = "Hadamard walks through a four-state Markov lift"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every lift identity and print the residuals.
    Verify {
        /// Seed of the ChaCha8 stream used for random starts.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Evolve a walk and write one row per site.
    Run(RunArgs),
    /// Compare the projected lifted walk to the unitary walk.
    Compare(CompareArgs),
    /// Write the dataset behind a figure.
    Figure {
        id: FigureId,
        #[arg(long, default_value = ".")]
        output_dir: PathBuf,
    },
    /// Time the structural and dense engines.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        sites: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        steps: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub steps: usize,
    /// Number of sites, or `auto` for 2n+3 sites centered on label 0.
    #[arg(long, default_value = "auto")]
    pub sites: Sites,
    #[arg(long, default_value = "none")]
    pub boundary: BoundaryKind,
    /// `point:SITE:(RE,IM),(RE,IM)` or `uniform:FIRST-LAST:(RE,IM),(RE,IM)`.
    #[arg(long, allow_hyphen_values = true)]
    pub initial: InitialSpec,
    #[arg(long, value_enum, default_value_t = ScalingArg::Sqrt2Step)]
    pub scaling: ScalingArg,
    /// Destination file; standard output when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub sites: usize,
    #[arg(long)]
    pub steps: usize,
    #[arg(long, default_value = "none")]
    pub boundary: BoundaryKind,
    #[arg(long, allow_hyphen_values = true)]
    pub initial: InitialSpec,
}

/// Lattice size as given on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sites {
    Auto,
    Count(usize),
}

impl FromStr for Sites {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(Self::Auto);
        }
        s.parse()
            .map(Self::Count)
            .map_err(|_| format!("expected a site count or auto, got {s:?}"))
    }
}

impl fmt::Display for Sites {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Auto => f.write_str("auto"),
            Self::Count(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScalingArg {
    #[value(name = "sqrt2-step")]
    Sqrt2Step,
    Unscaled,
}

impl From<ScalingArg> for Scaling {
    fn from(s: ScalingArg) -> Self {
        match s {
            ScalingArg::Sqrt2Step => Scaling::PerStepSqrt2,
            ScalingArg::Unscaled => Scaling::Unscaled,
        }
    }
}
