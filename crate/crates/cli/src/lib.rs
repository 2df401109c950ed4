//! Command-line front end for `lifted_walk`: runs walks, checks the lift
//! identities, compares the lifted and unitary engines, writes the figure
//! datasets and times the engines.

use std::io;

use lifted_walk::WalkError;

pub mod cli;
pub mod commands;
pub mod dataset;
pub mod figures;
pub mod initial;

pub use cli::{Cli, Command};
pub use commands::execute;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// A request that parsed but violates an invariant.
    #[error("{field}: {message}")]
    Usage {
        field: &'static str,
        message: String,
    },

    #[error("{}: {}", walk_field(.0), .0)]
    Walk(#[from] WalkError),

    #[error("io: {0}")]
    Io(#[from] io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn usage(field: &'static str, message: impl Into<String>) -> Self {
        Self::Usage {
            field,
            message: message.into(),
        }
    }

    /// 2 for requests that cannot be carried out, 1 for runtime failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage { .. } | Self::Walk(_) => 2,
            Self::Io(_) | Self::Csv(_) | Self::Json(_) => 1,
        }
    }
}

/// Command-line field a library error is attributed to.
fn walk_field(e: &WalkError) -> &'static str {
    match e {
        WalkError::TooFewSites { .. }
        | WalkError::LatticeMismatch { .. }
        | WalkError::DimensionMismatch { .. } => "sites",
        WalkError::SiteOutOfRange { .. }
        | WalkError::BoundaryStart { .. }
        | WalkError::ComplexPopulation { .. } => "initial",
        WalkError::InvalidBoundary(_) => "boundary",
        WalkError::ScaleOverflow { .. } => "scaling",
        WalkError::LimitExceeded { what, .. } => what,
        WalkError::EmptyDistribution | WalkError::NegativeMass { .. } => "initial",
    }
}
