use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use bool_semantics::{BoolEval, Frame, RelSrc};
use structure_core::{enumerate_relations, RelationValue, Structure, Symbol, SymbolString};

use crate::compile::{Leaf, LfpQ, QCompiler, QCounters, QNode, QScope};
use crate::error::ExplError;
use crate::table::{FunArg, FunTable};
use crate::value::{concat_sets, ExplValue};

/// Evaluation of fixed-point nodes, supplied by a fixed-point engine.
pub trait LfpHandler {
    fn eval_lfp(&self, ev: &mut Evaluator<'_>, lfp: &LfpQ, frame: &mut Frame) -> Result<ExplValue, ExplError>;
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExplStats {
    /// Strings compared against the length of the subformula producing them.
    pub length_checks: u64,
    /// Strings longer than that length.
    pub length_violations: u64,
    pub leaf_evals: u64,
    pub memo_hits: u64,
    /// Second-order sums resolved by a define or extend conjunct.
    pub shortcut_sums: u64,
    /// Second-order sums resolved by enumeration.
    pub enumerated_sums: u64,
}

type MemoKey = (usize, Vec<u32>, Vec<Option<RelationValue>>);

pub struct Evaluator<'s> {
    structure: &'s Structure,
    pub bool_eval: BoolEval,
    tables: Vec<Option<FunTable>>,
    memo: HashMap<MemoKey, bool>,
    handler: Option<Rc<dyn LfpHandler>>,
    discover: Vec<(usize, BTreeSet<FunArg>)>,
    counters: QCounters,
    pub stats: ExplStats,
}

impl<'s> Evaluator<'s> {
    pub fn new(structure: &'s Structure, counters: QCounters) -> Self {
        Evaluator {
            structure,
            bool_eval: BoolEval::new(structure.universe_size()),
            tables: Vec::new(),
            memo: HashMap::new(),
            handler: None,
            discover: Vec::new(),
            counters,
            stats: ExplStats::default(),
        }
    }

    pub fn with_handler(mut self, handler: Rc<dyn LfpHandler>) -> Self {
        self.handler = Some(handler);
        self
    }

    pub fn structure(&self) -> &'s Structure {
        self.structure
    }

    pub fn universe_size(&self) -> u32 {
        self.structure.universe_size()
    }

    pub fn table(&self, fid: usize) -> Option<&FunTable> {
        self.tables.get(fid).and_then(Option::as_ref)
    }

    pub fn set_table(&mut self, fid: usize, table: FunTable) {
        if self.tables.len() <= fid {
            self.tables.resize(fid + 1, None);
        }
        self.tables[fid] = Some(table);
    }

    pub fn take_table(&mut self, fid: usize) -> Option<FunTable> {
        self.tables.get_mut(fid).and_then(Option::take)
    }

    /// Compiles more formulae inside `scope`, with slots that do not clash
    /// with anything compiled before. Grow frames with [`Self::fit`].
    pub fn compile_in<T>(
        &mut self,
        scope: &QScope,
        f: impl FnOnce(&mut QCompiler<'s>) -> Result<T, ExplError>,
    ) -> Result<T, ExplError> {
        let mut qc = QCompiler::resume(self.structure, scope, self.counters);
        let out = f(&mut qc);
        self.counters = qc.counters();
        out
    }

    pub fn fit(&self, frame: &mut Frame) {
        frame.ensure(self.counters.vars.fo_slots, self.counters.vars.so_slots);
    }

    /// Runs `f` with applications of `fid` answering `{ε}` and returns the
    /// arguments they were applied to: a superset of the arguments any
    /// table for `fid` could be consulted at. Calls nest.
    pub fn discover(
        &mut self,
        fid: usize,
        f: impl FnOnce(&mut Self) -> Result<(), ExplError>,
    ) -> Result<BTreeSet<FunArg>, ExplError> {
        self.discover.push((fid, BTreeSet::new()));
        let res = f(self);
        let (_, found) = self.discover.pop().expect("pushed above");
        res.map(|()| found)
    }

    /// Whether applications of `fid` are currently being collected.
    pub fn discovering(&self, fid: usize) -> bool {
        self.discover.iter().any(|(t, _)| *t == fid)
    }

    pub fn rel(&self, src: &RelSrc, frame: &Frame) -> Result<RelationValue, ExplError> {
        match src {
            RelSrc::Const(r) => Ok(r.clone()),
            RelSrc::Slot(s) => frame.so[*s]
                .clone()
                .ok_or_else(|| ExplError::Unbound(format!("relation slot {s}"))),
        }
    }

    fn leaf(&mut self, leaf: &Leaf, frame: &mut Frame) -> Result<bool, ExplError> {
        let Some((fo, so)) = &leaf.memo else {
            self.stats.leaf_evals += 1;
            return Ok(self.bool_eval.eval(&leaf.node, frame)?);
        };
        let key = (
            leaf.id,
            fo.iter().map(|&s| frame.fo[s]).collect(),
            so.iter().map(|&s| frame.so[s].clone()).collect(),
        );
        if let Some(&v) = self.memo.get(&key) {
            self.stats.memo_hits += 1;
            return Ok(v);
        }
        self.stats.leaf_evals += 1;
        let v = self.bool_eval.eval(&leaf.node, frame)?;
        self.memo.insert(key, v);
        Ok(v)
    }

    fn apply(&mut self, fid: usize, arg: FunArg) -> Result<ExplValue, ExplError> {
        if let Some((_, found)) = self.discover.iter_mut().rev().find(|(t, _)| *t == fid) {
            found.insert(arg);
            return Ok(ExplValue::epsilon());
        }
        match self.table(fid) {
            Some(t) => Ok(t.value(&arg)),
            None => Err(ExplError::UnknownFunction(format!("#{fid}"))),
        }
    }

    pub fn eval(&mut self, node: &QNode, frame: &mut Frame) -> Result<ExplValue, ExplError> {
        Ok(match node {
            QNode::FoVar(s) => ExplValue::singleton(SymbolString::elems(&[frame.fo[*s]])),
            QNode::SoVar(src) => ExplValue::singleton(SymbolString::letter(Symbol::Rel(self.rel(src, frame)?))),
            QNode::Bool(leaf) => {
                if self.leaf(leaf, frame)? {
                    ExplValue::epsilon()
                } else {
                    ExplValue::empty()
                }
            }
            QNode::Add(parts) => {
                let mut acc = ExplValue::empty();
                for p in parts {
                    acc.union_with(self.eval(p, frame)?);
                    if acc.is_infinite() {
                        break;
                    }
                }
                acc
            }
            QNode::Mul(guards, parts) => {
                for g in guards {
                    if !self.leaf(g, frame)? {
                        return Ok(ExplValue::empty());
                    }
                }
                let mut acc = ExplValue::epsilon();
                for p in parts {
                    let v = self.eval(p, frame)?;
                    if v.is_empty() {
                        return Ok(ExplValue::empty());
                    }
                    acc = concat_sets(&acc, &v);
                }
                acc
            }
            QNode::SumFo(slot, body) => {
                let saved = frame.fo[*slot];
                let mut acc = ExplValue::empty();
                for a in 0..self.universe_size() {
                    frame.fo[*slot] = a;
                    match self.eval(body, frame) {
                        Ok(v) => acc.union_with(v),
                        Err(e) => {
                            frame.fo[*slot] = saved;
                            return Err(e);
                        }
                    }
                }
                frame.fo[*slot] = saved;
                acc
            }
            QNode::SumSo(sum) => {
                let saved = frame.so[sum.slot].take();
                let res = self.sum_so(sum, frame);
                frame.so[sum.slot] = saved;
                res?
            }
            QNode::FunFo { fid, args } => {
                let t = args.iter().map(|&s| frame.fo[s]).collect();
                self.apply(*fid, FunArg::Fo(t))?
            }
            QNode::FunSo { fid, arg } => {
                let r = self.rel(arg, frame)?;
                self.apply(*fid, FunArg::So(r))?
            }
            QNode::Lfp(lfp) => {
                let handler = self
                    .handler
                    .clone()
                    .ok_or_else(|| ExplError::LfpNode(lfp.name.clone()))?;
                handler.eval_lfp(self, lfp, frame)?
            }
            QNode::Checked { bound, node } => {
                let v = self.eval(node, frame)?;
                if let Some(strings) = v.strings() {
                    self.stats.length_checks += strings.len() as u64;
                    self.stats.length_violations +=
                        strings.iter().filter(|s| s.len() > *bound).count() as u64;
                }
                v
            }
        })
    }

    fn sum_so(&mut self, sum: &crate::compile::SumSoNode, frame: &mut Frame) -> Result<ExplValue, ExplError> {
        if let Some(shape) = &sum.shortcut {
            self.stats.shortcut_sums += 1;
            return match self.bool_eval.shape_candidate(shape, frame)? {
                None => Ok(ExplValue::empty()),
                Some(c) => {
                    frame.so[sum.slot] = Some(c);
                    self.eval(&sum.body, frame)
                }
            };
        }
        self.stats.enumerated_sums += 1;
        let mut acc = ExplValue::empty();
        for r in enumerate_relations(self.universe_size(), sum.arity)? {
            frame.so[sum.slot] = Some(r);
            acc.union_with(self.eval(&sum.body, frame)?);
        }
        Ok(acc)
    }
}
