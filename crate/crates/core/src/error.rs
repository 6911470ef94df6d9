use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid order {order}: {reason}")]
    InvalidOrder { order: usize, reason: &'static str },

    #[error("graph capacity exceeded: {requested} vertices requested, at most {max} supported")]
    Capacity { requested: usize, max: usize },

    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("edge state error on {u}-{v}: {reason}")]
    EdgeState {
        u: usize,
        v: usize,
        reason: &'static str,
    },

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("unsupported minor pattern: {0}")]
    UnsupportedMinor(String),

    #[error("eta undefined at isolated vertex {0}")]
    UndefinedEta(usize),

    #[error("power iteration did not converge after {iterations} iterations (best q = {best_q}, residual = {residual:e})")]
    Convergence {
        best_q: f64,
        residual: f64,
        iterations: usize,
    },

    #[error("parameter domain error: {0}")]
    Domain(String),

    #[error("construction produced a graph outside its class: {0}")]
    Construction(String),

    #[error("precondition not met ({kind}): {clause}")]
    Precondition {
        kind: PreconditionKind,
        clause: String,
    },

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("unknown check: {0}")]
    UnknownCheck(String),

    #[error("io: {0}")]
    Io(String),

    #[error("json: {0}")]
    Json(String),
}

/// Distinguishes why a guarded rewrite refused to fire.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreconditionKind {
    /// A purely combinatorial hypothesis failed.
    Structural,
    /// The Perron vector comparison failed or was too close to call.
    Perron,
}

impl std::fmt::Display for PreconditionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PreconditionKind::Structural => f.write_str("structural"),
            PreconditionKind::Perron => f.write_str("perron"),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
