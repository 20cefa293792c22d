//! Binary-branching nondeterministic Turing machines and transducers.
//!
//! A [`MachineSpec`] has a read-only input tape and one work tape over
//! `{0, 1, _}`. [`run_tree`] explores the whole computation tree under a
//! step clock and reports the counting functions `acc`, `tot` and `span`.

mod error;
pub mod machines;
mod run;
mod spec;

pub use error::MachineError;
pub use run::{run_tree, tot_count, RunStats, MAX_NODES};
pub use spec::{parse_machine, Action, MachineSpec, Move, Sym};
