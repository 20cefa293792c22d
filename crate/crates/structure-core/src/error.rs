use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("universe must be nonempty")]
    EmptyUniverse,
    #[error("arity must be at least 1")]
    ZeroArity,
    #[error("element {element} out of range for universe of size {n}")]
    ElementOutOfRange { element: u32, n: u32 },
    #[error("tuple of length {found} in a relation of arity {expected}")]
    TupleArity { expected: usize, found: usize },
    #[error("relation `{0}` declared twice")]
    DuplicateRelation(String),
    #[error("`{0}` is reserved and cannot be declared")]
    ReservedName(String),
    #[error("relation `{name}` has arity {found}, expected {expected}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("relation `{0}` has no interpretation")]
    MissingRelation(String),
    #[error("enumerating all relations with n={n}, k={arity} exceeds the n^k <= 24 guard")]
    GuardExceeded { n: u32, arity: usize },
    #[error("tuple space n^k is too large (n={n}, k={arity})")]
    TupleSpaceTooLarge { n: u32, arity: usize },
    #[error("relations of different shape")]
    ShapeMismatch,
    #[error("relation letter of arity {arity} exceeds maximum arity {max}")]
    ArityTooLarge { arity: usize, max: usize },
    #[error("letter does not fit the structure: {0}")]
    ForeignLetter(String),
}
