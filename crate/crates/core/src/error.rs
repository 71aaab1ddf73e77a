use thiserror::Error;

/// Errors raised by state construction, the numerical engines and the file/CLI layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("superposition must contain at least one branch")]
    EmptyState,

    #[error("state has zero norm (<psi|psi> = {norm_sqr:e})")]
    ZeroNormState { norm_sqr: f64 },

    #[error("operation requires a normalized state")]
    UnnormalizedState,

    #[error("truncation at n_max = {n_max} leaves norm deficit {deficit:e}")]
    TruncationTooSevere { n_max: usize, deficit: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("concurrence is defined for exactly two branches, got {0}")]
    UnsupportedBranchCount(usize),

    #[error(
        "{what} quadrature too coarse: {coarse} vs {refined} at the other resolution (tol {tol:e})"
    )]
    QuadratureTooCoarse {
        what: &'static str,
        coarse: f64,
        refined: f64,
        tol: f64,
    },

    #[error("phase grid too small: integral of W = {integral} (|1 - integral| > {tol:e})")]
    GridTooSmall { integral: f64, tol: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for the numerical-convergence failures (CLI exit code 3).
    pub fn is_convergence(&self) -> bool {
        matches!(
            self,
            Error::GridTooSmall { .. }
                | Error::QuadratureTooCoarse { .. }
                | Error::TruncationTooSevere { .. }
        )
    }
}
