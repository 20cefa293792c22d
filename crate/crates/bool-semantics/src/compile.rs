//! Slot-indexed form of boolean formulae. Every binder owns a distinct slot
//! in a [`Frame`], so evaluation never looks names up.

use formula_ast::{BoolFormula as B, Define, Extend, Name};
use structure_core::{RelationValue, Structure};

use crate::error::EvalError;

#[derive(Clone, Debug)]
pub enum RelSrc {
    Const(RelationValue),
    Slot(usize),
}

#[derive(Clone, Debug)]
pub enum BNode {
    Const(bool),
    Rel { src: RelSrc, args: Vec<usize> },
    Eq(usize, usize),
    Leq(usize, usize),
    IsMin(usize),
    IsMax(usize),
    /// `a <= b + 1`
    LeqSucc(usize, usize),
    Not(Box<BNode>),
    And(Vec<BNode>),
    Or(Vec<BNode>),
    Implies(Box<BNode>, Box<BNode>),
    Iff(Box<BNode>, Box<BNode>),
    Forall(usize, Box<BNode>),
    Exists(usize, Box<BNode>),
    ForallSO(usize, usize, Box<BNode>),
    ExistsSO(usize, usize, Box<BNode>),
    Lfp(Box<LfpNode>),
}

#[derive(Clone, Debug)]
pub struct LfpNode {
    pub id: usize,
    pub name: Name,
    pub pred: usize,
    pub arity: usize,
    pub params: Vec<usize>,
    pub body: BNode,
    pub args: Vec<usize>,
    pub key_fo: Vec<usize>,
    pub key_so: Vec<usize>,
}

/// A definition or extension shape with its matrix compiled over fresh
/// slots for the bound tuple.
#[derive(Clone, Debug)]
pub struct CompiledShape {
    pub target: usize,
    pub arity: usize,
    pub vars: Vec<usize>,
    pub matrix: BNode,
    pub base: Option<RelSrc>,
    pub strict: bool,
}

/// Values of every slot.
#[derive(Clone, Debug, Default)]
pub struct Frame {
    pub fo: Vec<u32>,
    pub so: Vec<Option<RelationValue>>,
}

impl Frame {
    pub fn new(fo_slots: usize, so_slots: usize) -> Self {
        Frame {
            fo: vec![0; fo_slots],
            so: vec![None; so_slots],
        }
    }

    /// Grows the frame to at least the given slot counts.
    pub fn ensure(&mut self, fo_slots: usize, so_slots: usize) {
        if self.fo.len() < fo_slots {
            self.fo.resize(fo_slots, 0);
        }
        if self.so.len() < so_slots {
            self.so.resize(so_slots, None);
        }
    }
}

/// Names visible at some point of a formula, with their slots.
#[derive(Clone, Debug, Default)]
pub struct Scope {
    fo: Vec<(Name, usize)>,
    so: Vec<(Name, usize, usize)>,
}

/// Allocation counters; resuming with them keeps slots and fixed-point
/// ids unique across separately compiled pieces.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    pub fo_slots: usize,
    pub so_slots: usize,
    pub lfp_ids: usize,
}

pub struct Compiler<'s> {
    structure: &'s Structure,
    fo_scope: Vec<(Name, usize)>,
    so_scope: Vec<(Name, usize, usize)>,
    fo_slots: usize,
    so_slots: usize,
    lfp_ids: usize,
    /// Fixed points compiled so far with their key slots; equal ones share
    /// an id and so a cached value.
    lfp_seen: Vec<(B, Vec<usize>, Vec<usize>, usize)>,
}

impl<'s> Compiler<'s> {
    pub fn new(structure: &'s Structure) -> Self {
        Compiler {
            structure,
            fo_scope: Vec::new(),
            so_scope: Vec::new(),
            fo_slots: 0,
            so_slots: 0,
            lfp_ids: 0,
            lfp_seen: Vec::new(),
        }
    }

    /// Continues compiling inside `scope` with fresh slots from `counters`.
    pub fn resume(structure: &'s Structure, scope: Scope, counters: Counters) -> Self {
        Compiler {
            structure,
            fo_scope: scope.fo,
            so_scope: scope.so,
            fo_slots: counters.fo_slots,
            so_slots: counters.so_slots,
            lfp_ids: counters.lfp_ids,
            lfp_seen: Vec::new(),
        }
    }

    pub fn scope(&self) -> Scope {
        Scope {
            fo: self.fo_scope.clone(),
            so: self.so_scope.clone(),
        }
    }

    pub fn counters(&self) -> Counters {
        Counters {
            fo_slots: self.fo_slots,
            so_slots: self.so_slots,
            lfp_ids: self.lfp_ids,
        }
    }

    pub fn structure(&self) -> &'s Structure {
        self.structure
    }

    pub fn slot_counts(&self) -> (usize, usize) {
        (self.fo_slots, self.so_slots)
    }

    pub fn new_frame(&self) -> Frame {
        Frame::new(self.fo_slots, self.so_slots)
    }

    pub fn bind_fo(&mut self, name: &str) -> usize {
        let slot = self.fo_slots;
        self.fo_slots += 1;
        self.fo_scope.push((name.to_string(), slot));
        slot
    }

    pub fn unbind_fo(&mut self, count: usize) {
        let keep = self.fo_scope.len() - count;
        self.fo_scope.truncate(keep);
    }

    pub fn bind_so(&mut self, name: &str, arity: usize) -> usize {
        let slot = self.so_slots;
        self.so_slots += 1;
        self.so_scope.push((name.to_string(), slot, arity));
        slot
    }

    pub fn unbind_so(&mut self, count: usize) {
        let keep = self.so_scope.len() - count;
        self.so_scope.truncate(keep);
    }

    pub fn fo_slot(&self, name: &str) -> Result<usize, EvalError> {
        self.fo_scope
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|&(_, s)| s)
            .ok_or_else(|| EvalError::Unbound(name.to_string()))
    }

    /// Slot and arity of a second-order variable in scope.
    pub fn so_slot(&self, name: &str) -> Option<(usize, usize)> {
        self.so_scope
            .iter()
            .rev()
            .find(|(n, _, _)| n == name)
            .map(|&(_, s, k)| (s, k))
    }

    /// Resolves a relation name: scope first, then the structure.
    pub fn relation(&self, name: &str) -> Result<(RelSrc, usize), EvalError> {
        if let Some((slot, k)) = self.so_slot(name) {
            return Ok((RelSrc::Slot(slot), k));
        }
        match self.structure.relation(name) {
            Some(r) => Ok((RelSrc::Const(r.clone()), r.arity())),
            None => Err(EvalError::Unbound(name.to_string())),
        }
    }

    fn slots(&self, names: &[Name]) -> Result<Vec<usize>, EvalError> {
        names.iter().map(|x| self.fo_slot(x)).collect()
    }

    fn app(&self, name: &str, args: &[Name]) -> Result<BNode, EvalError> {
        let (src, k) = self.relation(name)?;
        if k != args.len() {
            return Err(EvalError::ArityMismatch {
                name: name.to_string(),
                expected: args.len(),
                found: k,
            });
        }
        Ok(BNode::Rel {
            src,
            args: self.slots(args)?,
        })
    }

    /// Order macros compiled to constant-time checks.
    fn order_shortcut(&self, w: &str, body: &B) -> Option<BNode> {
        let slot = |x: &Name| (x != w).then(|| self.fo_slot(x).ok()).flatten();
        match body {
            B::Leq(x, v) if v == w => slot(x).map(BNode::IsMin),
            B::Leq(v, x) if v == w => slot(x).map(BNode::IsMax),
            B::Or(a, b) => match (a.as_ref(), b.as_ref()) {
                (B::Leq(v1, x), B::Leq(y, v2)) if v1 == w && v2 == w => {
                    Some(BNode::LeqSucc(slot(y)?, slot(x)?))
                }
                _ => None,
            },
            _ => None,
        }
    }

    pub fn compile_bool(&mut self, f: &B) -> Result<BNode, EvalError> {
        Ok(match f {
            B::RelApp(r, args) | B::SOApp(r, args) => self.app(r, args)?,
            B::Eq(x, y) => BNode::Eq(self.fo_slot(x)?, self.fo_slot(y)?),
            B::Leq(x, y) => BNode::Leq(self.fo_slot(x)?, self.fo_slot(y)?),
            B::True => BNode::Const(true),
            B::False => BNode::Const(false),
            B::Not(a) => BNode::Not(Box::new(self.compile_bool(a)?)),
            B::And(..) => BNode::And(
                f.conjuncts()
                    .into_iter()
                    .map(|c| self.compile_bool(c))
                    .collect::<Result<_, _>>()?,
            ),
            B::Or(..) => BNode::Or(
                f.disjuncts()
                    .into_iter()
                    .map(|c| self.compile_bool(c))
                    .collect::<Result<_, _>>()?,
            ),
            B::Implies(a, b) => BNode::Implies(
                Box::new(self.compile_bool(a)?),
                Box::new(self.compile_bool(b)?),
            ),
            B::Iff(a, b) => BNode::Iff(
                Box::new(self.compile_bool(a)?),
                Box::new(self.compile_bool(b)?),
            ),
            B::ForallFO(w, body) => {
                if let Some(node) = self.order_shortcut(w, body) {
                    return Ok(node);
                }
                let slot = self.bind_fo(w);
                let body = self.compile_bool(body);
                self.unbind_fo(1);
                BNode::Forall(slot, Box::new(body?))
            }
            B::ExistsFO(w, body) => {
                let slot = self.bind_fo(w);
                let body = self.compile_bool(body);
                self.unbind_fo(1);
                BNode::Exists(slot, Box::new(body?))
            }
            B::ForallSO(x, k, body) | B::ExistsSO(x, k, body) => {
                let slot = self.bind_so(x, *k);
                let body = self.compile_bool(body);
                self.unbind_so(1);
                let body = Box::new(body?);
                if matches!(f, B::ForallSO(..)) {
                    BNode::ForallSO(slot, *k, body)
                } else {
                    BNode::ExistsSO(slot, *k, body)
                }
            }
            B::LfpRel {
                pred,
                params,
                body,
                args,
            } => {
                let args = self.slots(args)?;
                let inner = B::LfpRel {
                    pred: pred.clone(),
                    params: params.clone(),
                    body: body.clone(),
                    args: params.clone(),
                };
                let mut key_fo: Vec<usize> = Vec::new();
                for x in inner.free_fo().iter().filter(|x| !params.contains(x)) {
                    key_fo.push(self.fo_slot(x)?);
                }
                let key_so: Vec<usize> = inner
                    .free_relations()
                    .iter()
                    .filter_map(|r| self.so_slot(r).map(|(s, _)| s))
                    .collect();
                let pslot = self.bind_so(pred, params.len());
                let pslots: Vec<usize> = params.iter().map(|p| self.bind_fo(p)).collect();
                let body = self.compile_bool(body);
                self.unbind_fo(params.len());
                self.unbind_so(1);
                let seen = self
                    .lfp_seen
                    .iter()
                    .find(|(f, fo, so, _)| *f == inner && *fo == key_fo && *so == key_so);
                let id = match seen {
                    Some(&(.., id)) => id,
                    None => {
                        let id = self.lfp_ids;
                        self.lfp_ids += 1;
                        self.lfp_seen.push((inner, key_fo.clone(), key_so.clone(), id));
                        id
                    }
                };
                BNode::Lfp(Box::new(LfpNode {
                    id,
                    name: pred.clone(),
                    pred: pslot,
                    arity: params.len(),
                    params: pslots,
                    body: body?,
                    args,
                    key_fo,
                    key_so,
                }))
            }
        })
    }

    fn compile_matrix(&mut self, vars: &[Name], matrix: &B) -> Result<(Vec<usize>, BNode), EvalError> {
        let slots: Vec<usize> = vars.iter().map(|v| self.bind_fo(v)).collect();
        let node = self.compile_bool(matrix);
        self.unbind_fo(vars.len());
        Ok((slots, node?))
    }

    /// Compiles a definition of a variable currently in scope.
    pub fn compile_define(&mut self, d: &Define) -> Result<CompiledShape, EvalError> {
        let (target, arity) = self
            .so_slot(&d.defined)
            .ok_or_else(|| EvalError::Unbound(d.defined.clone()))?;
        check_arity(&d.defined, arity, d.vars.len())?;
        let (vars, matrix) = self.compile_matrix(&d.vars, &d.chi)?;
        Ok(CompiledShape {
            target,
            arity,
            vars,
            matrix,
            base: None,
            strict: false,
        })
    }

    /// Compiles an extension of a base relation to a variable in scope.
    pub fn compile_extend(&mut self, e: &Extend) -> Result<CompiledShape, EvalError> {
        let (target, arity) = self
            .so_slot(&e.extended)
            .ok_or_else(|| EvalError::Unbound(e.extended.clone()))?;
        check_arity(&e.extended, arity, e.vars.len())?;
        let (base, base_arity) = self.relation(&e.base)?;
        check_arity(&e.base, base_arity, arity)?;
        let (vars, matrix) = self.compile_matrix(&e.vars, &e.psi)?;
        Ok(CompiledShape {
            target,
            arity,
            vars,
            matrix,
            base: Some(base),
            strict: e.strict,
        })
    }
}

fn check_arity(name: &str, found: usize, expected: usize) -> Result<(), EvalError> {
    if found == expected {
        Ok(())
    } else {
        Err(EvalError::ArityMismatch {
            name: name.to_string(),
            expected,
            found,
        })
    }
}
