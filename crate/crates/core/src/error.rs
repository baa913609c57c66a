use thiserror::Error;

/// Errors produced by the evaluation and root-finding routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The requested point lies outside the region where the method is defined.
    #[error("unsupported region: {0}")]
    UnsupportedRegion(String),

    /// An argument violates the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation at the pole s = 1.
    #[error("zeta has a pole at s = 1")]
    Pole,

    /// A ratio against a near-vanishing zeta value; the result would be noise.
    #[error("near-zero division: |zeta(1-s)| = {0:.3e} is below 1e-12")]
    NearZeroDivision(f64),

    /// A least-squares fit could not be carried out.
    #[error("fit error: {0}")]
    Fit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
