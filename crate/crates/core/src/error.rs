use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid size {0} is not supported: need an even number of points, at least 4")]
    InvalidGrid(usize),

    #[error("incompatible discretizations: grid of {left} points vs grid of {right} points")]
    GridMismatch { left: usize, right: usize },

    #[error("degenerate initial mass {0}: the mass correction divides by M0, which must be positive")]
    DegenerateMass(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("oracle needs at least one substep")]
    ZeroSubsteps,

    #[error("non-finite field after step {step}")]
    BlowUp { step: usize },

    #[error("order fit needs at least 3 usable points, got {usable}")]
    InsufficientData { usable: usize },

    #[error("cannot plot an empty table")]
    EmptyTable,

    #[error("{scheme} at tau = {tau:e}: {source}")]
    Run {
        scheme: String,
        tau: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: malformed field file: {source}", path.display())]
    FieldFormat {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// The innermost error, looking through run context.
    pub fn root(&self) -> &Error {
        match self {
            Error::Run { source, .. } => source.root(),
            other => other,
        }
    }

    pub fn is_blow_up(&self) -> bool {
        matches!(self.root(), Error::BlowUp { .. })
    }

    pub fn is_io(&self) -> bool {
        matches!(
            self.root(),
            Error::Io { .. } | Error::FieldFormat { .. } | Error::Csv { .. }
        )
    }
}
