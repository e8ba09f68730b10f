use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("requested depth {requested} exceeds certified depth {certified}")]
    DepthExceeded { requested: usize, certified: usize },
    #[error("word is not admissible: {0}")]
    InadmissibleWord(String),
    #[error("no table entry for window {0}")]
    InadmissibleWindow(String),
    #[error("image is not admissible in the target: {0}")]
    InadmissibleImage(String),
    #[error("window length mismatch: expected {expected}, got {got}")]
    WindowMismatch { expected: usize, got: usize },
    #[error("graph or system is not left-resolving")]
    NotLeftResolving,
    #[error("not irreducible: {0}")]
    NotIrreducible(String),
    #[error("subshift has no finite presentation: {0}")]
    NotSofic(String),
    #[error("not synchronizing: {0}")]
    NotSynchronizing(String),
    #[error("bad matrix: {0}")]
    BadMatrix(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("expansion of 1 could not be classified to depth {0}")]
    Unclassified(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("enumeration limit of {0} cells exceeded (set LAMGRAPH_MAX_CELLS to raise it)")]
    LimitExceeded(usize),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
