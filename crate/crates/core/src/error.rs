use thiserror::Error;

/// Everything that can go wrong across the library.
///
/// Each variant maps to a short, stable reason code (see [`Error::code`]) so
/// front ends can report failures in a machine-parsable way.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),

    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),

    #[error("edge `{0}` is a self-loop")]
    SelfLoop(String),

    #[error("edge `{edge}` has a non-finite amplitude")]
    NonFiniteAmplitude { edge: String },

    #[error("graph is not bipartite; odd cycle {}", .cycle.join("-"))]
    NotBipartite { cycle: Vec<String> },

    #[error("scale limit exceeded: {what} is {actual}, limit {limit}")]
    ScaleLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("all amplitudes cancel; the state is fully frustrated")]
    FullyFrustrated,

    #[error("{0}")]
    Domain(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    /// Stable machine-readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::DuplicateVertex(_) => "duplicate-vertex",
            Error::DuplicateEdge(_) => "duplicate-edge",
            Error::UnknownVertex(_) => "unknown-vertex",
            Error::UnknownEdge(_) => "unknown-edge",
            Error::SelfLoop(_) => "self-loop",
            Error::NonFiniteAmplitude { .. } => "non-finite-amplitude",
            Error::NotBipartite { .. } => "not-bipartite",
            Error::ScaleLimit { .. } => "scale-limit",
            Error::FullyFrustrated => "fully-frustrated",
            Error::Domain(_) => "domain",
        }
    }

    pub fn is_scale_limit(&self) -> bool {
        matches!(self, Error::ScaleLimit { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
