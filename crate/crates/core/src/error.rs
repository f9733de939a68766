use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad failure classes, used by the command-line front end to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad input: parameters, configuration files, command-line usage.
    Validation,
    /// The requested operating point is not physical or not usable.
    Physics,
    /// An independent cross-check disagreed with the analytic result.
    Verification,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Validation => 1,
            ErrorKind::Physics => 2,
            ErrorKind::Verification => 3,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    InvalidParameter(String),

    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("no physical steady state (no non-negative real root of the photon-number polynomial)")]
    NoSteadyState,

    #[error("steady state is not single-valued: {stable} stable physical roots")]
    NotSingleValued { stable: usize },

    #[error("singular operating point: {0}")]
    SingularOperatingPoint(String),

    #[error("stale root: |alpha|^2 = {alpha_sq} but n = {n_bar}")]
    StaleRoot { n_bar: f64, alpha_sq: f64 },

    #[error("linearization invalid: {0}")]
    LinearizationInvalid(String),

    #[error("resonance singularity: |J[{omega}]| = {magnitude} is below threshold")]
    ResonanceSingularity { omega: f64, magnitude: f64 },

    #[error("unstable system: eigenvalues {eig1}, {eig2}")]
    Unstable { eig1: Complex64, eig2: Complex64 },

    #[error("grid too narrow: gain never falls to half of its zero-frequency value")]
    GridTooNarrow,

    #[error("no transduction: forward gain vanishes at phi_h = {phi_h}")]
    NoTransduction { phi_h: f64 },

    #[error("inconsistent spectra: S_zz * S_FF = {product} < (Re S_zF)^2 = {re_sq}")]
    InconsistentSpectra { product: f64, re_sq: f64 },

    #[error("oracle precondition: {0}")]
    OraclePrecondition(String),

    #[error("oracle fit did not converge: relative residual {0}")]
    FitNotConverged(f64),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidParameter(_)
            | Error::DivisionByZero(_)
            | Error::Unsupported(_)
            | Error::OraclePrecondition(_)
            | Error::Config(_)
            | Error::Io(_) => ErrorKind::Validation,
            Error::FitNotConverged(_) | Error::Verification(_) => ErrorKind::Verification,
            _ => ErrorKind::Physics,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind().exit_code()
    }
}
