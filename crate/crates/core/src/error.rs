use num_complex::Complex64;
use thiserror::Error;

/// Errors produced anywhere in the laboratory.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index {m} requested but only indices up to {max} are supported")]
    Capability { m: usize, max: usize },

    #[error("argument outside the domain of {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    #[error("{func} has a pole at {at}")]
    Pole { func: &'static str, at: i64 },

    #[error("no convergence after {evals} evaluations: best estimate {estimate} with error {abs_err:e}")]
    Convergence {
        estimate: Complex64,
        abs_err: f64,
        evals: usize,
    },

    #[error("integral diverges: {0}")]
    Divergence(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("root refinement failed in bracket [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("winding number {value} is not within 0.1 of an integer")]
    Resolution { value: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Capability { .. } => "capability",
            Error::Domain { .. } => "domain",
            Error::Pole { .. } => "pole",
            Error::Convergence { .. } => "convergence",
            Error::Divergence(_) => "divergence",
            Error::Precondition(_) => "precondition",
            Error::Bracket { .. } => "bracket",
            Error::Resolution { .. } => "resolution",
            Error::Numerical(_) => "numerical",
            Error::Invalid(_) => "invalid",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
