use thiserror::Error;

/// Failure modes shared by every evaluation route.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// The generic closed form is ill-conditioned at this angle; use `zero_limit`.
    #[error("phi = {phi:e} is inside the zero band, use zero_limit instead")]
    ZeroRedirect { phi: f64 },

    #[error("overflow: {0}")]
    Overflow(String),

    /// A series or quadrature ran out of budget. The best estimate is kept.
    #[error("no convergence after {work} terms/nodes: best = {best}, est. error = {est_error:e}")]
    NonConvergence {
        best: f64,
        est_error: f64,
        work: u64,
    },

    #[error("internal inconsistency: {what} (residual {residual:e})")]
    Inconsistent { what: String, residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
