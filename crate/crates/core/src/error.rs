use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {detail}")]
    DimensionMismatch { detail: String },
    #[error("composition of differentials is not zero")]
    CompositionNotZero,
    #[error("word is not composable at position {position}")]
    NotComposable { position: usize },
    #[error("arity {arity} exceeds the structure's bound {max_arity}")]
    ArityExceeded { arity: usize, max_arity: usize },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("degree mismatch: {detail}")]
    DegreeMismatch { detail: String },
    #[error("malformed entry: {0}")]
    Malformed(String),
    #[error(
        "a nonzero operation of arity {arity} is degree-admissible beyond max_arity {max_arity}"
    )]
    ArityBoundTooSmall { arity: usize, max_arity: usize },
    #[error("differential does not square to zero on `{location}`")]
    DifferentialNotSquareZero { location: String },
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("filtration subadditivity violated at {location}")]
    SubadditivityViolated { location: String },
    #[error("source/target mismatch: {0}")]
    SourceTargetMismatch(String),
    #[error("class is not representable with words of length at most {k}")]
    NotRepresentableAtLengthK { k: usize },
    #[error("no unit found for object `{0}`")]
    UnitNotFound(String),
    #[error("not a subcomplex: {0}")]
    NotASubcomplex(String),
    #[error("retraction orbit failed to descend at step {step}: {detail}")]
    NonTerminating { step: usize, detail: String },
    #[error("invalid disk model: {0}")]
    InvalidModel(String),
    #[error("model has no arc covering stop `{0}`")]
    MissingCoveringArc(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
