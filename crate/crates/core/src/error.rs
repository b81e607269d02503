use crate::graph::{Pair, Vertex};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a pair needs two distinct vertices, got {0} twice")]
    SelfLoop(Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("pair {0} is not an allowed pair of the board")]
    NotAllowed(Pair),
    #[error("pair {0} is already determined")]
    AlreadyDetermined(Pair),
    #[error("malformed graph6: {0}")]
    Graph6(String),
    #[error("unsupported size: {what} is {got}, bound is {bound}")]
    UnsupportedSize { what: &'static str, got: usize, bound: usize },
    #[error("undecidable at this bound: {undetermined} undetermined pairs exceed the enumeration bound {bound}")]
    Undecidable { undetermined: usize, bound: usize },
    #[error("protocol violation at turn {turn}: {reason}")]
    Protocol { turn: usize, reason: String },
    #[error("{0} is not a bridge of the allowed graph")]
    NotBridge(Pair),
    #[error("not braided / unsupported kind: {0}")]
    NotBraided(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot parse {what} `{input}`: expected {expected}")]
    Parse {
        what: &'static str,
        input: String,
        expected: &'static str,
    },
    #[error("probe {0} lies outside the hidden graph's domain")]
    OutsideDomain(Pair),
    #[error("unknown-exhausted: {0}")]
    UnknownExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
