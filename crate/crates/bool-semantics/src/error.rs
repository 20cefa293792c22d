use structure_core::StructureError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("`{name}` has arity {found}, used with {expected} argument(s)")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("value {value} of `{name}` is outside the universe")]
    OutOfUniverse { name: String, value: u32 },
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("fixed-point stages of `{0}` are not increasing")]
    NonMonotone(String),
    #[error("fixed point of `{name}` took {stages} stages, more than the bound {bound}")]
    StageBound {
        name: String,
        stages: usize,
        bound: usize,
    },
    #[error("{0}")]
    Shape(String),
}
