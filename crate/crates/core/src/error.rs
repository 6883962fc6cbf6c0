use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("edges are not composable at position {position}")]
    NotComposable { position: usize },
    #[error("a path given only by edges must be nonempty")]
    EmptyPath,
    #[error("index {index} out of range for a path of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("operands belong to different graphs")]
    GraphMismatch,
    #[error("not a closed path")]
    NotClosed,
    #[error("closed path is a proper power of a shorter closed path")]
    NotPrimitive,
    #[error("malformed path spec: {0}")]
    MalformedSpec(String),
    #[error("invalid recurrent edge set: {0}")]
    InvalidRecurrentSet(String),
    #[error(
        "irrational path is only determined for {determined} edges but {requested} were probed; \
         supply a longer prefix"
    )]
    Undetermined { determined: usize, requested: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported for irrational classes: {0}")]
    IrrationalUnsupported(&'static str),
    #[error("count exceeds 64 bits")]
    CountOverflow,
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
