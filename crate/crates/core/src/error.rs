use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed face: {0}")]
    MalformedFace(String),

    #[error("facet list is empty")]
    EmptyFacetList,

    #[error("gluing error: {0}")]
    Gluing(String),

    #[error("vertex label collision: {0}")]
    LabelCollision(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("chain is not a cycle in dimension {0}")]
    NotACycle(usize),

    #[error("construction integrity: {0}")]
    ConstructionIntegrity(String),

    #[error("coloring is not total: vertex {0} has no color")]
    PartialColoring(String),

    #[error("coloring is not proper: edge {0} is monochromatic")]
    ImproperColoring(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resampling budget of {budget} exhausted with {violated} bad events still occurring")]
    SearchFailure { budget: usize, violated: usize },

    #[error("census integrity: {0}")]
    CensusIntegrity(String),

    #[error("not a 2-group: {0}")]
    NotTwoGroup(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
