use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown symbol '{name}' at {line}:{col}")]
    UnknownSymbol { name: String, line: usize, col: usize },
    #[error("non-polynomial expression at {line}:{col}: {msg}")]
    NonPolynomial { line: usize, col: usize, msg: String },
    #[error("rate expression at {line}:{col} depends on species copy numbers")]
    NonConstantCoefficient { line: usize, col: usize },
    #[error("reaction '{0}' has a non-positive rate")]
    NegativeRate(String),
    #[error("propensity of degree {0} exceeds the supported maximum of 2")]
    DegreeTooHigh(u32),
    #[error("duplicate name '{0}'")]
    Duplicate(String),
    #[error("invalid network: {0}")]
    Invalid(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SparsityError {
    #[error("reaction '{reaction}': constructed unused set violates the product condition ({a} * {b} lies in the support set)")]
    Consistency {
        reaction: String,
        a: String,
        b: String,
    },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SdpError {
    #[error("objective has degree {degree}, but truncation order {mu} only provides moments up to degree {}", mu + 1)]
    ObjectiveDegree { degree: u32, mu: u32 },
    #[error("moment equation for a multi-index of degree {degree} is outside 1..={mu}")]
    AlphaOutOfRange { degree: u32, mu: u32 },
    #[error("truncation order must be at least 1")]
    ZeroTruncation,
    #[error("moment {moment} of reaction '{reaction}' has no admissible matrix entry")]
    Allocation { reaction: String, moment: String },
    #[error(transparent)]
    Sparsity(#[from] SparsityError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SsaError {
    #[error("invalid simulation config: {0}")]
    Config(String),
    #[error("reaction '{reaction}' has negative propensity {value} at state {state:?}")]
    NegativePropensity {
        reaction: String,
        value: f64,
        state: Vec<i64>,
    },
    #[error("copy number of species {species} exceeded 1e9 at t={time} (trajectory {trajectory}); the chain looks explosive")]
    Explosion {
        species: String,
        time: f64,
        trajectory: usize,
    },
}

/// Top-level error for file-driven workflows.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Sparsity(#[from] SparsityError),
    #[error(transparent)]
    Sdp(#[from] SdpError),
    #[error(transparent)]
    Ssa(#[from] SsaError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}
