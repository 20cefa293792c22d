use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("undefined state `{0}`")]
    UnknownState(String),
    #[error("state `{0}` declared twice")]
    DuplicateState(String),
    #[error("more than two actions for ({state}, {input}, {work})")]
    TooManyActions { state: String, input: char, work: char },
    #[error("two transition lines for ({state}, {input}, {work})")]
    Conflict { state: String, input: char, work: char },
    #[error("output on a transition of a machine that is not a transducer")]
    OutputWithoutTransducer,
    #[error("transition out of the accepting state `{0}`")]
    AcceptingNotHalting(String),
    #[error("missing `{0}` line")]
    Missing(&'static str),
    #[error("clock must be at least 1")]
    ZeroClock,
    #[error("input symbol `{0}` is not a bit")]
    BadInput(char),
    #[error("some path runs past the clock of {0} steps")]
    ClockExceeded(usize),
    #[error("computation tree has more than {0} nodes")]
    TreeTooLarge(u64),
}
