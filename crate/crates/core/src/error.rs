use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("top face {face:?} has {found} distinct vertices, expected {expected}")]
    NonUniformCardinality { face: Vec<u32>, found: usize, expected: usize },
    #[error("duplicate top face {0:?}")]
    DuplicateTopFace(Vec<u32>),
    #[error("invalid top weights: {0}")]
    BadWeights(String),
    #[error("face {0:?} is not in the complex")]
    UnknownFace(Vec<u32>),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(u32),
    #[error("dimension {dim} out of range for a complex of dimension {max}")]
    BadDimension { dim: isize, max: isize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands belong to different complexes or groups: {0}")]
    Mismatch(String),
    #[error("group element {index} out of range for a group of order {order}")]
    GroupMismatch { index: usize, order: usize },
    #[error("non-abelian {dim}-cochains cannot be evaluated on odd orderings")]
    NonAbelianOrientation { dim: usize },
    #[error("operation requires an abelian group, got {0}")]
    NonAbelianGroup(String),
    #[error("no coboundary out of the top dimension {0}")]
    TopDimension(usize),
    #[error("inconsistent orientation for face {0:?}")]
    InconsistentOrientation(Vec<u32>),
    #[error("coboundary undefined for non-abelian {0}-cochains")]
    UndefinedCoboundary(usize),
    #[error("complex dimension {0} too low for this operation")]
    DimensionTooLow(isize),
    #[error("dimension {0} too high for this operation")]
    DimensionTooHigh(isize),
    #[error("underlying graph of the link of {face:?} is disconnected (lambda = 1)")]
    DisconnectedGraph { face: Vec<u32> },
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("unknown variant {0:?}")]
    UnknownVariant(String),
    #[error("set is not non-local at the given parameters")]
    NotNonLocal,
    #[error("set is not weakly non-local at the given parameters")]
    NotWeaklyNonLocal,
    #[error("parameter precondition violated: {0}")]
    ParameterViolation(String),
    #[error("enumeration of {states} states exceeds the budget {budget}")]
    BudgetExceeded { states: String, budget: u64 },
    #[error("cochain is already locally minimal")]
    AlreadyLocallyMinimal,
    #[error("wrong dimension: {0}")]
    WrongDimension(String),
    #[error("premise failed: {0}")]
    PremiseFailed(String),
    #[error("unknown group spec {0:?}")]
    UnknownGroup(String),
    #[error("invalid group table: {0}")]
    BadGroupTable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
