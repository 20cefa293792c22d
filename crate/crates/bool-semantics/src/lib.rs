//! Model checking of boolean formulae over finite ordered structures.
//!
//! Formulae are compiled to a slot-indexed form ([`compile`]) and evaluated
//! by [`BoolEval`]. Fixed points are computed by stage iteration from the
//! empty relation and cached per valuation of their free variables.

pub mod compile;
mod error;
mod eval;

use std::collections::BTreeMap;

use formula_ast::{recognize_define, recognize_extend, BoolFormula, Name};
use structure_core::{RelationValue, Structure};

pub use compile::{BNode, CompiledShape, Compiler, Counters, Frame, RelSrc, Scope};
pub use error::EvalError;
pub use eval::{BoolEval, BoolStats};

/// First- and second-order assignments.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    pub fo: BTreeMap<Name, u32>,
    pub so: BTreeMap<Name, RelationValue>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_fo(mut self, x: &str, a: u32) -> Self {
        self.fo.insert(x.to_string(), a);
        self
    }

    pub fn with_so(mut self, x: &str, r: RelationValue) -> Self {
        self.so.insert(x.to_string(), r);
        self
    }

    /// Checks that every value fits a universe of size `n`.
    pub fn validate(&self, n: u32) -> Result<(), EvalError> {
        for (x, &a) in &self.fo {
            if a >= n {
                return Err(EvalError::OutOfUniverse {
                    name: x.clone(),
                    value: a,
                });
            }
        }
        for (x, r) in &self.so {
            if r.universe_size() != n {
                return Err(EvalError::Shape(format!(
                    "relation `{x}` is over a universe of size {}, expected {n}",
                    r.universe_size()
                )));
            }
        }
        Ok(())
    }

    /// Binds every assigned variable in `compiler` as an outer scope and
    /// returns the slots in the order fo, then so.
    pub fn bind(&self, compiler: &mut Compiler) -> (Vec<(usize, u32)>, Vec<(usize, RelationValue)>) {
        let fo = self
            .fo
            .iter()
            .map(|(x, &a)| (compiler.bind_fo(x), a))
            .collect();
        let so = self
            .so
            .iter()
            .map(|(x, r)| (compiler.bind_so(x, r.arity()), r.clone()))
            .collect();
        (fo, so)
    }
}

/// A formula compiled against a structure and an assignment.
struct Prepared {
    node: BNode,
    frame: Frame,
    eval: BoolEval,
}

fn prepare(
    phi: &BoolFormula,
    structure: &Structure,
    asg: &Assignment,
) -> Result<Prepared, EvalError> {
    asg.validate(structure.universe_size())?;
    let mut c = Compiler::new(structure);
    let (fo, so) = asg.bind(&mut c);
    let node = c.compile_bool(phi)?;
    let mut frame = c.new_frame();
    for (s, a) in fo {
        frame.fo[s] = a;
    }
    for (s, r) in so {
        frame.so[s] = Some(r);
    }
    Ok(Prepared {
        node,
        frame,
        eval: BoolEval::new(structure.universe_size()),
    })
}

/// Decides `structure, asg |= phi`.
pub fn eval_bool(phi: &BoolFormula, structure: &Structure, asg: &Assignment) -> Result<bool, EvalError> {
    let mut p = prepare(phi, structure, asg)?;
    p.eval.eval(&p.node, &mut p.frame)
}

fn shape_result(
    phi: &BoolFormula,
    structure: &Structure,
    asg: &Assignment,
    target: &str,
    arity: usize,
    shape: impl FnOnce(&mut Compiler) -> Result<CompiledShape, EvalError>,
) -> Result<Option<RelationValue>, EvalError> {
    asg.validate(structure.universe_size())?;
    let mut c = Compiler::new(structure);
    let (fo, so) = asg.bind(&mut c);
    let slot = c.bind_so(target, arity);
    let shape = shape(&mut c)?;
    let node = c.compile_bool(phi)?;
    let mut frame = c.new_frame();
    for (s, a) in fo {
        frame.fo[s] = a;
    }
    for (s, r) in so {
        frame.so[s] = Some(r);
    }
    let mut ev = BoolEval::new(structure.universe_size());
    let Some(candidate) = ev.shape_candidate(&shape, &mut frame)? else {
        return Ok(None);
    };
    frame.so[slot] = Some(candidate.clone());
    Ok(ev.eval(&node, &mut frame)?.then_some(candidate))
}

/// The unique relation `B` with `structure, asg[B/Y] |= phi` when `phi`
/// syntactically defines `Y`.
pub fn unique_define(
    phi: &BoolFormula,
    structure: &Structure,
    asg: &Assignment,
) -> Result<Option<RelationValue>, EvalError> {
    let d = recognize_define(phi)
        .ok_or_else(|| EvalError::Shape("formula does not define a relation".into()))?;
    let k = d.vars.len();
    shape_result(phi, structure, asg, &d.defined, k, |c| c.compile_define(&d))
}

/// The unique relation `C` with `structure, asg[C/Y] |= phi` when `phi`
/// (strictly) extends `X` to `Y`. Absent when a strict extension is
/// impossible.
pub fn unique_extend(
    phi: &BoolFormula,
    structure: &Structure,
    asg: &Assignment,
) -> Result<Option<RelationValue>, EvalError> {
    let e = recognize_extend(phi)
        .ok_or_else(|| EvalError::Shape("formula does not extend a relation".into()))?;
    let k = e.vars.len();
    shape_result(phi, structure, asg, &e.extended, k, |c| c.compile_extend(&e))
}

/// Stage count of every fixed point evaluated while checking `phi`.
pub fn eval_bool_with_stats(
    phi: &BoolFormula,
    structure: &Structure,
    asg: &Assignment,
) -> Result<(bool, BoolStats), EvalError> {
    let mut p = prepare(phi, structure, asg)?;
    let v = p.eval.eval(&p.node, &mut p.frame)?;
    Ok((v, p.eval.stats))
}
