use thiserror::Error;

/// Errors raised by walk construction, evolution and the reference oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum WalkError {
    #[error("lattice needs at least {min} sites, got {sites}")]
    TooFewSites { sites: usize, min: usize },

    #[error("site {site} is outside a lattice of {sites} sites")]
    SiteOutOfRange { site: usize, sites: usize },

    #[error("invalid boundary: {0}")]
    InvalidBoundary(String),

    #[error("state has {state} sites but the operator was built for {operator}")]
    LatticeMismatch { state: usize, operator: usize },

    #[error("vector length {got} does not match dimension {expected}")]
    DimensionMismatch { got: usize, expected: usize },

    #[error("unscaled quantum readout at step {step} would need 2^{step}; limit is {limit}")]
    ScaleOverflow { step: usize, limit: usize },

    #[error("{what} = {got} exceeds the limit {limit}")]
    LimitExceeded {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("classical reading needs real populations; site {site} has a nonzero imaginary part")]
    ComplexPopulation { site: usize },

    #[error("start site {site} lies on a boundary")]
    BoundaryStart { site: usize },

    #[error("distribution has no mass")]
    EmptyDistribution,

    #[error("distribution entry {index} is negative ({value})")]
    NegativeMass { index: usize, value: f64 },
}

pub type Result<T, E = WalkError> = std::result::Result<T, E>;
