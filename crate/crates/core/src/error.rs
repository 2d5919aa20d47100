use thiserror::Error;

/// Position-tagged failure while reading the facet-list text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: vertex {vertex} is outside [1, {m}]")]
    VertexOutOfRange {
        line: usize,
        column: usize,
        vertex: i64,
        m: usize,
    },
    #[error("line {line}, column {column}: empty facet")]
    EmptyFacet { line: usize, column: usize },
    #[error("line {line}, column {column}: {message}")]
    Malformed {
        line: usize,
        column: usize,
        message: String,
    },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("simplicial: {0}")]
    Parse(#[from] ParseError),
    #[error("simplicial: {0}")]
    Complex(String),
    #[error("moment_angle: {0}")]
    MomentAngle(String),
    #[error("cohomology_ring: {0}")]
    Ring(String),
    #[error("orbit: {0}")]
    Orbit(String),
    #[error("bounds: {0}")]
    Bounds(String),
    #[error("{module}: resource budget exceeded: {message}")]
    Budget {
        module: &'static str,
        message: String,
    },
    #[error("field: {0}")]
    Field(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn budget(module: &'static str, message: impl Into<String>) -> Self {
        Error::Budget {
            module,
            message: message.into(),
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
