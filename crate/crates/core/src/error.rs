//! Crate-wide error type.

/// Errors surfaced by the simulation and estimation layers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument left its admissible domain (negative time, Hurst index
    /// outside `(0, 1)`, non-positive step, non-finite input, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The circulant embedding spectrum contains an eigenvalue more negative
    /// than the clamping tolerance and no fallback method is allowed.
    #[error(
        "circulant embedding failed: eigenvalue {min_eigenvalue:e} below tolerance -{tolerance:e}"
    )]
    EmbeddingFailed { min_eigenvalue: f64, tolerance: f64 },

    /// The requested generation method cannot run at this problem size.
    #[error("method unavailable: {0}")]
    MethodUnavailable(String),

    /// The fGn covariance matrix lost positive definiteness during Cholesky
    /// factorization (should not happen for Hurst indices in `(0, 1)`).
    #[error("covariance matrix is not positive definite at pivot {0}")]
    NotPositiveDefinite(usize),

    /// A path with zero quadratic variation was handed to an estimator that
    /// divides by it; this can only happen for exactly constant observations.
    #[error("degenerate path: quadratic variation is zero")]
    DegeneratePath,

    /// Every replication of an experiment cell produced an invalid estimate.
    #[error("all {invalid_count} replications of cell {cell_index} were invalid")]
    AllInvalid {
        cell_index: usize,
        invalid_count: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
