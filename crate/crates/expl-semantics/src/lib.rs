//! The set-of-strings semantics of quantitative formulae.
//!
//! [`expl`] computes the set of strings a formula explains over a structure
//! and [`count`] its cardinality. Fixed-point nodes are delegated to an
//! [`LfpHandler`]; without one they are an error.

mod compile;
mod error;
mod eval;
mod table;
mod value;

use std::rc::Rc;

use bool_semantics::{Assignment, Frame};
use formula_ast::QFormula;
use structure_core::Structure;

pub use compile::{free_functions, Leaf, LfpKind, LfpQ, QCompiler, QCounters, QNode, QScope, SumSoNode};
pub use error::ExplError;
pub use eval::{Evaluator, ExplStats, LfpHandler};
pub use table::{FunArg, FunDomain, FunEnv, FunTable};
pub use value::{concat_sets, Count, ExplValue};

/// A formula compiled against a structure, an assignment and tables for
/// its free function symbols.
pub struct Prepared<'s> {
    pub root: QNode,
    pub frame: Frame,
    pub eval: Evaluator<'s>,
}

impl<'s> Prepared<'s> {
    pub fn new(
        alpha: &QFormula,
        structure: &'s Structure,
        asg: &Assignment,
        funs: &FunEnv,
    ) -> Result<Self, ExplError> {
        asg.validate(structure.universe_size())?;
        let mut qc = QCompiler::new(structure);
        let (fo, so) = asg.bind(&mut qc.vars);
        let fids: Vec<(usize, FunTable)> = funs
            .iter()
            .map(|(name, t)| (qc.declare_fun(name, t.domain()), t.clone()))
            .collect();
        let root = qc.compile(alpha)?;
        let counters = qc.counters();
        let mut frame = qc.vars.new_frame();
        for (s, a) in fo {
            frame.fo[s] = a;
        }
        for (s, r) in so {
            frame.so[s] = Some(r);
        }
        let mut eval = Evaluator::new(structure, counters);
        for (fid, t) in fids {
            eval.set_table(fid, t);
        }
        Ok(Prepared { root, frame, eval })
    }

    pub fn with_handler(mut self, handler: Rc<dyn LfpHandler>) -> Self {
        self.eval = self.eval.with_handler(handler);
        self
    }

    pub fn run(&mut self) -> Result<ExplValue, ExplError> {
        self.eval.eval(&self.root, &mut self.frame)
    }
}

/// The set of strings `alpha` explains.
pub fn expl(
    alpha: &QFormula,
    structure: &Structure,
    asg: &Assignment,
    funs: &FunEnv,
) -> Result<ExplValue, ExplError> {
    Prepared::new(alpha, structure, asg, funs)?.run()
}

/// `|expl(alpha)|`.
pub fn count(
    alpha: &QFormula,
    structure: &Structure,
    asg: &Assignment,
    funs: &FunEnv,
) -> Result<Count, ExplError> {
    expl(alpha, structure, asg, funs).map(|v| v.count())
}
