//! Slot-indexed form of quantitative formulae, sharing slots with the
//! boolean leaves they contain.

use std::collections::BTreeSet;

use bool_semantics::{BNode, CompiledShape, Compiler, Counters, RelSrc, Scope};
use formula_ast::{formula_length, recognize_define, recognize_extend, BoolFormula as B, Name, QFormula as Q};
use structure_core::Structure;

use crate::error::ExplError;
use crate::table::FunDomain;

#[derive(Clone, Debug)]
pub struct Leaf {
    pub id: usize,
    pub node: BNode,
    /// Free slots of a quantified leaf, whose value is memoized on them.
    pub memo: Option<(Vec<usize>, Vec<usize>)>,
}

#[derive(Clone, Debug)]
pub struct SumSoNode {
    pub slot: usize,
    pub arity: usize,
    pub body: QNode,
    /// A define or extend conjunct of a boolean factor of the body, which
    /// leaves at most one candidate for the bound variable.
    pub shortcut: Option<CompiledShape>,
}

#[derive(Clone, Debug)]
pub enum LfpKind {
    Fo { params: Vec<usize>, args: Vec<usize> },
    So { param: usize, arity: usize, arg: RelSrc },
}

#[derive(Clone, Debug)]
pub struct LfpQ {
    pub id: usize,
    pub fid: usize,
    pub name: Name,
    pub kind: LfpKind,
    pub body: QNode,
    /// The fixed-point subformula as written.
    pub source: Q,
    /// Outer slots the fixed point depends on.
    pub key_fo: Vec<usize>,
    pub key_so: Vec<usize>,
    /// The body applies no function symbol other than its own.
    pub closed: bool,
    /// Scope inside the binder, for compiling pieces of the body.
    pub scope: QScope,
}

impl LfpQ {
    pub fn domain(&self) -> FunDomain {
        match &self.kind {
            LfpKind::Fo { params, .. } => FunDomain::Fo(params.len()),
            LfpKind::So { arity, .. } => FunDomain::So(*arity),
        }
    }
}

#[derive(Clone, Debug)]
pub enum QNode {
    FoVar(usize),
    SoVar(RelSrc),
    Bool(Box<Leaf>),
    Add(Vec<QNode>),
    /// Boolean factors first, then the remaining factors in order.
    Mul(Vec<Leaf>, Vec<QNode>),
    SumFo(usize, Box<QNode>),
    SumSo(Box<SumSoNode>),
    FunFo { fid: usize, args: Vec<usize> },
    FunSo { fid: usize, arg: RelSrc },
    Lfp(Box<LfpQ>),
    /// A function-free subformula whose strings are checked against its
    /// length.
    Checked { bound: usize, node: Box<QNode> },
}

#[derive(Clone, Debug, Default)]
pub struct QScope {
    pub vars: Scope,
    funs: Vec<(Name, usize, FunDomain)>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct QCounters {
    pub vars: Counters,
    pub fids: usize,
    pub leaves: usize,
    pub lfps: usize,
}

pub struct QCompiler<'s> {
    pub vars: Compiler<'s>,
    funs: Vec<(Name, usize, FunDomain)>,
    fids: usize,
    leaves: usize,
    lfps: usize,
}

/// Function symbols applied freely in `q`.
pub fn free_functions(q: &Q) -> BTreeSet<Name> {
    fn walk(q: &Q, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match q {
            Q::FOVar(_) | Q::SOVar(_) | Q::Bool(_) => {}
            Q::Add(a, b) | Q::Mul(a, b) => {
                walk(a, bound, out);
                walk(b, bound, out);
            }
            Q::SumFO(_, body) | Q::SumSO(_, _, body) => walk(body, bound, out),
            Q::FunAppFO(f, _) | Q::FunAppSO(f, _) => {
                if !bound.contains(f) {
                    out.insert(f.clone());
                }
            }
            Q::LfpFO { func, body, .. } | Q::LfpSO { func, body, .. } => {
                bound.push(func.clone());
                walk(body, bound, out);
                bound.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    walk(q, &mut Vec::new(), &mut out);
    out
}

fn is_atom(q: &Q) -> bool {
    matches!(q, Q::FOVar(_) | Q::SOVar(_) | Q::Bool(_))
}

fn is_quantified(b: &B) -> bool {
    !matches!(
        b,
        B::RelApp(..) | B::SOApp(..) | B::Eq(..) | B::Leq(..) | B::True | B::False
    )
}

impl<'s> QCompiler<'s> {
    pub fn new(structure: &'s Structure) -> Self {
        QCompiler {
            vars: Compiler::new(structure),
            funs: Vec::new(),
            fids: 0,
            leaves: 0,
            lfps: 0,
        }
    }

    pub fn resume(structure: &'s Structure, scope: &QScope, counters: QCounters) -> Self {
        QCompiler {
            vars: Compiler::resume(structure, scope.vars.clone(), counters.vars),
            funs: scope.funs.clone(),
            fids: counters.fids,
            leaves: counters.leaves,
            lfps: counters.lfps,
        }
    }

    pub fn scope(&self) -> QScope {
        QScope {
            vars: self.vars.scope(),
            funs: self.funs.clone(),
        }
    }

    pub fn counters(&self) -> QCounters {
        QCounters {
            vars: self.vars.counters(),
            fids: self.fids,
            leaves: self.leaves,
            lfps: self.lfps,
        }
    }

    /// Declares a function symbol and returns its id.
    pub fn declare_fun(&mut self, name: &str, domain: FunDomain) -> usize {
        let fid = self.fids;
        self.fids += 1;
        self.funs.push((name.to_string(), fid, domain));
        fid
    }

    fn fun(&self, name: &str, domain: FunDomain) -> Result<usize, ExplError> {
        let &(_, fid, d) = self
            .funs
            .iter()
            .rev()
            .find(|(n, _, _)| n == name)
            .ok_or_else(|| ExplError::UnknownFunction(name.to_string()))?;
        if d != domain {
            return Err(ExplError::Shape(format!(
                "`{name}` takes {d:?}, applied to {domain:?}"
            )));
        }
        Ok(fid)
    }

    pub fn leaf(&mut self, b: &B) -> Result<Leaf, ExplError> {
        let node = self.vars.compile_bool(b)?;
        let memo = if is_quantified(b) {
            let fo = b
                .free_fo()
                .iter()
                .map(|x| self.vars.fo_slot(x))
                .collect::<Result<_, _>>()?;
            let so = b
                .free_relations()
                .iter()
                .filter_map(|r| self.vars.so_slot(r).map(|(s, _)| s))
                .collect();
            Some((fo, so))
        } else {
            None
        };
        let id = self.leaves;
        self.leaves += 1;
        Ok(Leaf { id, node, memo })
    }

    /// Compiles `q`, wrapping maximal function-free subformulae in length
    /// checks.
    pub fn compile(&mut self, q: &Q) -> Result<QNode, ExplError> {
        self.compile_at(q, true)
    }

    fn compile_at(&mut self, q: &Q, check: bool) -> Result<QNode, ExplError> {
        if check && !is_atom(q) && !q.has_function_symbols() {
            let node = self.compile_at(q, false)?;
            return Ok(QNode::Checked {
                bound: formula_length(q),
                node: Box::new(node),
            });
        }
        let check = check && q.has_function_symbols();
        Ok(match q {
            Q::FOVar(x) => QNode::FoVar(self.vars.fo_slot(x)?),
            Q::SOVar(x) => QNode::SoVar(self.vars.relation(x)?.0),
            Q::Bool(b) => QNode::Bool(Box::new(self.leaf(b)?)),
            Q::Add(..) => QNode::Add(
                q.summands()
                    .into_iter()
                    .map(|s| self.compile_at(s, check))
                    .collect::<Result<_, _>>()?,
            ),
            Q::Mul(..) => {
                let mut guards = Vec::new();
                let mut parts = Vec::new();
                for f in q.factors() {
                    match f {
                        Q::Bool(b) => guards.push(self.leaf(b)?),
                        other => parts.push(self.compile_at(other, check)?),
                    }
                }
                QNode::Mul(guards, parts)
            }
            Q::SumFO(x, body) => {
                let slot = self.vars.bind_fo(x);
                let body = self.compile_at(body, check);
                self.vars.unbind_fo(1);
                QNode::SumFo(slot, Box::new(body?))
            }
            Q::SumSO(y, k, body) => {
                let slot = self.vars.bind_so(y, *k);
                let node = self.sum_so(y, *k, slot, body, check);
                self.vars.unbind_so(1);
                node?
            }
            Q::FunAppFO(f, args) => QNode::FunFo {
                fid: self.fun(f, FunDomain::Fo(args.len()))?,
                args: args
                    .iter()
                    .map(|a| self.vars.fo_slot(a))
                    .collect::<Result<_, _>>()?,
            },
            Q::FunAppSO(f, x) => {
                let (arg, k) = self.vars.relation(x)?;
                QNode::FunSo {
                    fid: self.fun(f, FunDomain::So(k))?,
                    arg,
                }
            }
            Q::LfpFO { .. } | Q::LfpSO { .. } => QNode::Lfp(Box::new(self.lfp(q, check)?)),
        })
    }

    fn sum_so(&mut self, y: &str, k: usize, slot: usize, body: &Q, check: bool) -> Result<QNode, ExplError> {
        let mut shortcut = None;
        'search: for f in body.factors() {
            let Q::Bool(b) = f else { continue };
            for c in b.conjuncts() {
                if let Some(d) = recognize_define(c) {
                    if d.defined == y && d.vars.len() == k {
                        shortcut = Some(self.vars.compile_define(&d)?);
                        break 'search;
                    }
                }
                if let Some(e) = recognize_extend(c) {
                    if e.extended == y && e.base != y && e.vars.len() == k {
                        shortcut = Some(self.vars.compile_extend(&e)?);
                        break 'search;
                    }
                }
            }
        }
        let body = self.compile_at(body, check)?;
        Ok(QNode::SumSo(Box::new(SumSoNode {
            slot,
            arity: k,
            body,
            shortcut,
        })))
    }

    fn lfp(&mut self, q: &Q, check: bool) -> Result<LfpQ, ExplError> {
        let outer_funs = free_functions(q);
        let closed = outer_funs.is_empty();
        let id = self.lfps;
        self.lfps += 1;
        match q {
            Q::LfpFO {
                func,
                params,
                body,
                args,
            } => {
                let arg_slots = args
                    .iter()
                    .map(|a| self.vars.fo_slot(a))
                    .collect::<Result<Vec<_>, _>>()?;
                let inner = Q::LfpFO {
                    func: func.clone(),
                    params: params.clone(),
                    body: body.clone(),
                    args: params.clone(),
                };
                let (key_fo, key_so) = self.key(&inner, params)?;
                let fid = self.declare_fun(func, FunDomain::Fo(params.len()));
                let param_slots: Vec<usize> = params.iter().map(|p| self.vars.bind_fo(p)).collect();
                let scope = self.scope();
                let body_node = self.compile_at(body, check);
                self.vars.unbind_fo(params.len());
                self.funs.pop();
                Ok(LfpQ {
                    id,
                    fid,
                    name: func.clone(),
                    kind: LfpKind::Fo {
                        params: param_slots,
                        args: arg_slots,
                    },
                    body: body_node?,
                    source: q.clone(),
                    key_fo,
                    key_so,
                    closed,
                    scope,
                })
            }
            Q::LfpSO {
                func,
                param,
                arity,
                body,
                arg,
            } => {
                let (arg_src, k) = self.vars.relation(arg)?;
                if k != *arity {
                    return Err(ExplError::Shape(format!(
                        "`{func}` takes arity {arity}, applied to `{arg}` of arity {k}"
                    )));
                }
                let inner = Q::LfpSO {
                    func: func.clone(),
                    param: param.clone(),
                    arity: *arity,
                    body: body.clone(),
                    arg: param.clone(),
                };
                let (key_fo, key_so) = self.key(&inner, &[])?;
                let fid = self.declare_fun(func, FunDomain::So(*arity));
                let param_slot = self.vars.bind_so(param, *arity);
                let scope = self.scope();
                let body_node = self.compile_at(body, check);
                self.vars.unbind_so(1);
                self.funs.pop();
                Ok(LfpQ {
                    id,
                    fid,
                    name: func.clone(),
                    kind: LfpKind::So {
                        param: param_slot,
                        arity: *arity,
                        arg: arg_src,
                    },
                    body: body_node?,
                    source: q.clone(),
                    key_fo,
                    key_so,
                    closed,
                    scope,
                })
            }
            _ => unreachable!("not a fixed point"),
        }
    }

    fn key(&self, inner: &Q, params: &[Name]) -> Result<(Vec<usize>, Vec<usize>), ExplError> {
        let fo = inner
            .free_fo()
            .iter()
            .filter(|x| !params.contains(x))
            .map(|x| self.vars.fo_slot(x))
            .collect::<Result<_, _>>()?;
        let so = inner
            .free_so()
            .iter()
            .filter_map(|x| self.vars.so_slot(x).map(|(s, _)| s))
            .collect();
        Ok((fo, so))
    }
}
