use thiserror::Error;

/// Errors produced by the model, solver and simulation layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error(
        "adiabatic-elimination regime violated: gamma0*|delta0| = {lhs:.6e} but must be >= \
         {threshold} * {limiting} = {rhs:.6e}"
    )]
    RegimeViolation {
        lhs: f64,
        rhs: f64,
        threshold: f64,
        /// Name of the rate that dominates the bound.
        limiting: &'static str,
    },

    #[error("invalid model parameter: {0}")]
    InvalidParameter(String),

    #[error("below threshold: mu = {mu} < 1, no nontrivial stationary structure")]
    BelowThreshold { mu: f64 },

    #[error("bright soliton requires sigma = +1")]
    UnsupportedBranch,

    #[error("no localized solution: beta^2 = {beta_sq:.6e} <= 0")]
    NoLocalizedSolution { beta_sq: f64 },

    #[error("grid mismatch: fields live on different grids ({0} vs {1} points)")]
    GridMismatch(usize, usize),

    #[error("Newton iteration did not converge after {iterations} steps (residual {residual:.3e})")]
    NewtonDidNotConverge { iterations: usize, residual: f64 },

    #[error(
        "background is linearly unstable: max Re(lambda) = {max_re:.6e} exceeds {tolerance:.1e}"
    )]
    Unstable { max_re: f64, tolerance: f64 },

    #[error(
        "eigenpair matching ambiguous near lambda = {lambda_re:.6e}{lambda_im:+.6e}i: \
         {forward} forward vs {adjoint} adjoint eigenvalues in the cluster"
    )]
    DefectiveCluster {
        lambda_re: f64,
        lambda_im: f64,
        forward: usize,
        adjoint: usize,
    },

    #[error("biorthonormalisation failed: max |<w_i|v_j> - delta_ij| = {deviation:.3e}")]
    BiorthogonalityLoss { deviation: f64 },

    #[error("no eigenvalue within {tolerance:.1e} of {target} found in the spectrum")]
    MissingEigenvalue { target: f64, tolerance: f64 },

    #[error(
        "marginal mode pair ({p}, {q}): Re(lambda_p + lambda_q) = {sum_re:.3e}, \
         stationary moments undefined"
    )]
    MarginalPair { p: usize, q: usize, sum_re: f64 },

    #[error("local-oscillator field has zero norm")]
    ZeroNormLof,

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    #[error("soliton tracking lost: integrated intensity {intensity:.3e} below {floor:.3e}")]
    TrackingLost { intensity: f64, floor: f64 },

    #[error("only {surviving} of {total} trajectories survived; at least {required} required")]
    InsufficientTrajectories {
        surviving: usize,
        total: usize,
        required: usize,
    },

    #[error("invalid simulation configuration: {0}")]
    InvalidConfig(String),

    #[error("snapshot format error: {0}")]
    SnapshotFormat(String),

    #[error(transparent)]
    Linalg(#[from] ndarray_linalg::error::LinalgError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
