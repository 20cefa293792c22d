//! Finite ordered structures over `{0..n-1}`, relation values, and words
//! over elements and relations.

mod error;
mod parse;
mod relation;
mod structure;
mod symbol;

pub use error::StructureError;
pub use parse::parse_structure;
pub use relation::{
    advance, enumerate_relations, tuple_space, RelationValue, Relations, ENUMERATION_GUARD,
    MAX_TUPLE_SPACE,
};
pub use structure::{Structure, Vocabulary};
pub use symbol::{ceil_log2, encode_string, Symbol, SymbolString};
