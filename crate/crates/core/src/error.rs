use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("label {label} on {a}-{b} is below 2")]
    LabelBelowTwo { a: String, b: String, label: u32 },
    #[error("conflicting labels {first} and {second} on {a}-{b}")]
    AsymmetricLabel { a: String, b: String, first: u32, second: u32 },
    #[error("generator {0} labels an edge to itself")]
    SelfLoop(String),
    #[error("duplicate generator {0}")]
    DuplicateGenerator(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("at most {max} generators are supported, got {got}")]
    TooManyGenerators { max: usize, got: usize },
    #[error("generator subset is not contained in the graph")]
    SubsetNotInGraph,
    #[error("standard parabolic subgroup on {0} is not of spherical type")]
    NotSpherical(String),
    #[error("word is empty")]
    EmptyWord,
    #[error("word is not freely reduced")]
    NotFreelyReduced,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search budget exhausted: {0}")]
    Budget(String),
}
