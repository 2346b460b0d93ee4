use thiserror::Error;

use crate::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("edge references unknown vertex {0}")]
    UnknownEndpoint(VertexId),
    #[error("edge joins vertex {0} to itself")]
    SelfLoop(VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("invalid graph: {0}")]
    Invalid(String),
    #[error("no extension: {0}")]
    NoExtension(String),
    #[error("surface of genus {0} admits no toric extension")]
    NonzeroGenus(u32),
    #[error("malformed graph document: {0}")]
    Json(String),
    #[error("malformed rational {0:?}")]
    Rational(String),
}
