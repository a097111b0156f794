use thiserror::Error;

/// Errors produced by the library.
///
/// Axiom violations are *not* errors: checkers return a [`crate::report::Report`]
/// listing defects. Errors are reserved for malformed inputs and for internal
/// inconsistencies that indicate a convention bug (closure or well-definedness
/// failures, failed calibrations).
#[derive(Debug, Error)]
pub enum AlgError {
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("cannot parse rational `{0}`")]
    BadRational(String),

    #[error("cannot parse basis label `{0}`")]
    BadLabel(String),

    #[error("invalid algebra table: {0}")]
    InvalidTable(String),

    #[error("invalid spec file {path}: {message}")]
    InvalidSpec { path: String, message: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("split bilinear map shape violation: {0}")]
    ShapeViolation(String),

    #[error("calibration failed: {0}")]
    Calibration(String),

    #[error("derivation space is not closed under the super-commutator: {0}")]
    ClosureFailure(String),

    #[error("quotient bracket is not well defined: {0}")]
    WellDefinedness(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no osp(1|2) identification found for `{0}`")]
    NoIsomorphism(String),
}

pub type Result<T> = std::result::Result<T, AlgError>;
