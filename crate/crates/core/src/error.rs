use thiserror::Error;

/// Errors raised by the library and surfaced by the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The operation is only defined for sequences of π pulses (and, for the
    /// net phase, odd length).
    #[error("unsupported sequence: {0}")]
    UnsupportedSequence(String),

    #[error("unknown sequence name `{0}`")]
    UnknownName(String),

    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),

    /// The log-log slope did not land close enough to an integer.
    #[error("indeterminate order: fitted slope {slope:.4} is not within {tolerance} of an integer")]
    IndeterminateOrder { slope: f64, tolerance: f64 },

    #[error("insufficient signal: only {retained} ladder points above the discard threshold")]
    InsufficientSignal { retained: usize },

    #[error("root not found: {0}")]
    RootNotFound(String),

    #[error("optimizer converged to a nonzero minimum {value:.3e} ({context})")]
    ConvergedToNonzero { value: f64, context: String },

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed sequence file: {0}")]
    Parse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
