use std::path::PathBuf;

use thiserror::Error;

use counting_machines::MachineError;
use expl_semantics::ExplError;
use formula_ast::FormulaError;
use problem_compilers::CompileError;
use structure_core::StructureError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Structure { path: PathBuf, source: StructureError },
    #[error("{path}: {source}")]
    Formula { path: PathBuf, source: FormulaError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Expl(#[from] ExplError),
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Machine(#[from] MachineError),
    #[error(transparent)]
    StructureValue(#[from] StructureError),
}
