//! Syntax of boolean and quantitative counting formulae.

pub mod ast;
mod error;
pub mod fragment;
pub mod macros;
pub mod normalize;
mod parser;
mod print;
pub mod shapes;

pub use ast::{BoolFormula, Name, QFormula};
pub use error::FormulaError;
pub use fragment::{classify_fragment, satisfies, FragmentTag};
pub use macros::Fresh;
pub use normalize::{normalize_totp_fo, TotpGuard, TotpNormalForm, MAX_GUARDS};
pub use parser::{
    is_upper_name, parse_bool, parse_bool_with, parse_qformula, parse_qformula_in, parse_qformula_with, FunKind,
};
pub use print::formula_length;
pub use shapes::{recognize_define, recognize_extend, Define, Extend};
