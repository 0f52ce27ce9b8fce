use thiserror::Error;

/// Errors produced by graph construction, seeding, metrics and sweeps.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied parameter is outside its admissible range.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// A degree sequence with an odd stub total was handed to the matcher.
    #[error("degree sequence has odd stub count {0}; run parity fixing first")]
    OddStubCount(usize),

    /// An edge-list line could not be parsed.
    #[error("edge list parse error at line {line}: {reason}")]
    EdgeListParse { line: usize, reason: String },

    /// State mixing is undefined on a graph without edges.
    #[error("graph has no edges; state mixing is undefined")]
    DegenerateGraph,

    /// A sweep realization failed; carries the grid position for context.
    #[error("realization {index} at p_z = {pz} failed: {source}")]
    Realization {
        pz: f64,
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
