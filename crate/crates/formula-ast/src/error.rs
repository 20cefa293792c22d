use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: numeric literal `{text}` is not a formula")]
    NumericLiteral {
        line: usize,
        col: usize,
        text: String,
    },
    #[error("{line}:{col}: `{name}` expects {expected} argument(s), found {found}")]
    ArityMismatch {
        line: usize,
        col: usize,
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("{line}:{col}: {msg}")]
    Scope { line: usize, col: usize, msg: String },
    #[error("formula is not in the expected grammar: {0}")]
    NotInGrammar(String),
    #[error("normal form needs more than {0} guarded recursive summands")]
    TooManySummands(usize),
}
