use bool_semantics::EvalError;
use structure_core::StructureError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("no table for function symbol `{0}`")]
    UnknownFunction(String),
    #[error("fixed point `{0}` needs a fixed-point evaluator")]
    LfpNode(String),
    #[error("{0}")]
    Shape(String),
    #[error("fixed point `{name}` diverged after {iterations} iterations")]
    Diverged { name: String, iterations: usize },
    #[error("fixed point `{name}` needed {iterations} iterations, more than {bound}")]
    ChainBound {
        name: String,
        iterations: usize,
        bound: usize,
    },
}

impl From<StructureError> for ExplError {
    fn from(e: StructureError) -> Self {
        ExplError::Eval(EvalError::Structure(e))
    }
}
