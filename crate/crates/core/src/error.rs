use thiserror::Error;

use crate::graph::Dist;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("invalid window: {0}")]
    BadWindow(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("not a morphism: {0}")]
    NotAMorphism(String),
    #[error("graph has {count} vertices, the cap is {cap}")]
    TooLarge { count: usize, cap: usize },
    #[error("product would have {size} vertices, the cap is {cap}")]
    SizeOverflow { size: u128, cap: usize },
    #[error("verified radius (doubled) is {verified}, window needs {required}")]
    RadiusTooSmall { verified: Dist, required: Dist },
    #[error("not a simplicial map: {0}")]
    NotASimplicialMap(String),
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("search budget of {budget} nodes exhausted; value lies in [{lower}, {upper}]")]
    Timeout {
        lower: usize,
        upper: usize,
        budget: u64,
    },
    #[error("coefficient fields differ: {0} vs {1}")]
    FieldMismatch(String, String),
}
