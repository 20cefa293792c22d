use thiserror::Error;

use counting_machines::MachineError;
use formula_ast::FormulaError;
use structure_core::StructureError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error("instance too large: {0}")]
    Scale(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Machine(#[from] MachineError),
}
