use thiserror::Error;

/// Everything that can go wrong while building states, evaluating moments or
/// writing results.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} = {value} is outside its domain ({domain})")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("truncation too small: {0}")]
    Truncation(String),

    #[error("degenerate postselection: success probability {0:e}")]
    DegeneratePostselection(f64),

    #[error("{quantity} is undefined: {reason}")]
    Undefined {
        quantity: &'static str,
        reason: &'static str,
    },

    #[error("imaginary residue {residue:e} in {field} exceeds {limit:e}")]
    ImaginaryResidue {
        field: &'static str,
        residue: f64,
        limit: f64,
    },

    #[error("conjugate partners disagree for {field}: |difference| = {difference:e}")]
    ConjugateMismatch {
        field: &'static str,
        difference: f64,
    },

    #[error("shape mismatch: {0:?} vs {1:?}")]
    ShapeMismatch((usize, usize), (usize, usize)),

    #[error("invalid sweep: {0}")]
    Sweep(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors caused by bad inputs rather than by a backend.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Domain { .. } | Error::Sweep(_) | Error::Config(_)
        )
    }

    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_) | Error::Csv(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
