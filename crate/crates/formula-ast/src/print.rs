use std::fmt;

use crate::ast::{BoolFormula, QFormula};

fn bool_atomic(f: &BoolFormula) -> bool {
    matches!(
        f,
        BoolFormula::RelApp(..)
            | BoolFormula::SOApp(..)
            | BoolFormula::Eq(..)
            | BoolFormula::Leq(..)
            | BoolFormula::True
            | BoolFormula::False
    )
}

struct BoolChild<'a>(&'a BoolFormula);

impl fmt::Display for BoolChild<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if bool_atomic(self.0) {
            write!(f, "{}", self.0)
        } else {
            write!(f, "({})", self.0)
        }
    }
}

impl fmt::Display for BoolFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use BoolFormula::*;
        match self {
            RelApp(r, args) | SOApp(r, args) => write!(f, "{r}({})", args.join(",")),
            Eq(x, y) => write!(f, "{x} = {y}"),
            Leq(x, y) => write!(f, "{x} <= {y}"),
            True => f.write_str("true"),
            False => f.write_str("false"),
            Not(a) => write!(f, "!{}", BoolChild(a)),
            And(a, b) => write!(f, "{} & {}", BoolChild(a), BoolChild(b)),
            Or(a, b) => write!(f, "{} | {}", BoolChild(a), BoolChild(b)),
            Implies(a, b) => write!(f, "{} -> {}", BoolChild(a), BoolChild(b)),
            Iff(a, b) => write!(f, "{} <-> {}", BoolChild(a), BoolChild(b)),
            ForallFO(x, a) => write!(f, "forall {x}. {}", BoolChild(a)),
            ExistsFO(x, a) => write!(f, "exists {x}. {}", BoolChild(a)),
            ForallSO(x, k, a) => write!(f, "ForallR {x}:{k}. {}", BoolChild(a)),
            ExistsSO(x, k, a) => write!(f, "ExistsR {x}:{k}. {}", BoolChild(a)),
            LfpRel {
                pred,
                params,
                body,
                args,
            } => write!(
                f,
                "lfpR {pred}({}) = {} in {pred}({})",
                params.join(","),
                BoolChild(body),
                args.join(",")
            ),
        }
    }
}

struct QChild<'a>(&'a QFormula);

impl fmt::Display for QChild<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use QFormula::*;
        match self.0 {
            FOVar(_) | SOVar(_) | Bool(_) | FunAppFO(..) | FunAppSO(..) => write!(f, "{}", self.0),
            other => write!(f, "({other})"),
        }
    }
}

impl fmt::Display for QFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use QFormula::*;
        match self {
            FOVar(x) => f.write_str(x),
            SOVar(x) => write!(f, "${x}"),
            Bool(b) => write!(f, "[{b}]"),
            Add(a, b) => write!(f, "{} + {}", QChild(a), QChild(b)),
            Mul(a, b) => write!(f, "{} * {}", QChild(a), QChild(b)),
            SumFO(x, a) => write!(f, "sum {x}. {}", QChild(a)),
            SumSO(x, k, a) => write!(f, "Sum {x}:{k}. {}", QChild(a)),
            FunAppFO(g, args) => write!(f, "{g}({})", args.join(",")),
            FunAppSO(g, x) => write!(f, "{g}({x})"),
            LfpFO {
                func,
                params,
                body,
                args,
            } => write!(
                f,
                "lfp {func}({}) = {} in {func}({})",
                params.join(","),
                QChild(body),
                args.join(",")
            ),
            LfpSO {
                func,
                param,
                arity,
                body,
                arg,
            } => write!(
                f,
                "lfp {func}({param}:{arity}) = {} in {func}({arg})",
                QChild(body)
            ),
        }
    }
}

/// The recursive formula length: letters and boolean leaves count one,
/// each binary connective, sum and fixed-point binder adds one.
pub fn formula_length(alpha: &QFormula) -> usize {
    use QFormula::*;
    match alpha {
        FOVar(_) | SOVar(_) | Bool(_) | FunAppFO(..) | FunAppSO(..) => 1,
        Add(a, b) | Mul(a, b) => formula_length(a) + formula_length(b) + 1,
        SumFO(_, a) | SumSO(_, _, a) => formula_length(a) + 1,
        LfpFO { body, .. } | LfpSO { body, .. } => formula_length(body) + 1,
    }
}
