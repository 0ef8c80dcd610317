//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors for phase-space construction, decompositions, channels, and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not symmetric (defect {defect:.3e} > tol {tol:.3e})")]
    NotSymmetric { defect: f64, tol: f64 },

    #[error("structure violation: {0}")]
    Structure(String),

    #[error("unphysical thermal level eta = {0} (must be >= 1)")]
    UnphysicalTemperature(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("state violates the uncertainty relation (min eig of V + i*Omega = {min_eig:.3e})")]
    UncertaintyViolated { min_eig: f64 },

    #[error("ill-conditioned input: {0}")]
    Conditioning(String),

    #[error("incompatible bath levels: {0} vs {1}")]
    IncompatibleBath(f64, f64),

    #[error("mode index {index} out of range for {modes} modes")]
    IndexOutOfRange { index: usize, modes: usize },

    #[error("reference thermal state is rank-deficient at eta = {0}; relative entropy undefined")]
    ReferenceRank(f64),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("{0}")]
    Other(String),
}
