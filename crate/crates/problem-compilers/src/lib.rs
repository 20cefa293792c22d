//! Counting problems compiled into structures and counting formulae.
//!
//! Each template turns an instance into a finite structure and a formula
//! whose number of strings is the answer; [`oracle`] computes the same
//! numbers by brute force. [`compile_tm_to_tot`] does the same for the
//! number of branchings of a small nondeterministic machine.

mod error;
pub mod oracle;
pub mod random;
mod spec;
mod templates;
mod tm;

pub use error::CompileError;
pub use spec::{parse_dnf, parse_graph, parse_nfa, DnfSpec, GraphSpec, NfaSpec};
pub use templates::{
    compile_dnf, dnf_text, is_fo_text, is_lfp_text, template_census, template_clique, template_is, template_sinks,
    Instance, CENSUS, CLIQUE, SINKS,
};
pub use oracle::{oracle_count, Problem};
pub use tm::{compile_tm_to_tot, TmCompilation};
