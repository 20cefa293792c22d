//! Iteration of fixed-point nodes from the empty table.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};

use bool_semantics::Frame;
use expl_semantics::{Evaluator, ExplError, ExplValue, FunArg, FunDomain, FunTable, LfpHandler, LfpKind, LfpQ};
use formula_ast::{satisfies, FragmentTag};
use structure_core::{advance, tuple_space, RelationValue};

use crate::graph::ConnectionGraph;
use crate::policy::{chain_bound, default_cap, LfpPolicy};

/// Largest number of arguments tabulated for one fixed point.
pub const MAX_DOMAIN: usize = 1 << 20;

/// Default limit on the letters held by one table, summed over its
/// strings, before iteration is reported as diverging.
pub const LETTER_BUDGET: u64 = 200_000;

/// One evaluation of a fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LfpRun {
    pub name: String,
    pub policy: LfpPolicy,
    /// Arguments tabulated.
    pub domain: usize,
    /// The first `i` with `h_i = h_{i+1}`, or the iteration at which the
    /// run stopped.
    pub iterations: usize,
    /// `n^k + 1` for argument arity `k`.
    pub chain_bound: usize,
    /// Nonempty entries of `h_1`, `h_2`, ...
    pub support: Vec<usize>,
    /// Every iterate contained the previous one.
    pub increasing: bool,
    /// The detector found the value at the argument infinite.
    pub infinite: bool,
}

type CacheKey = (usize, Vec<u32>, Vec<Option<RelationValue>>);

struct Solved {
    domain: BTreeSet<FunArg>,
    table: FunTable,
}

/// An [`LfpHandler`] iterating every fixed point under one policy.
pub struct LfpEngine {
    policy: LfpPolicy,
    budget: u64,
    runs: RefCell<Vec<LfpRun>>,
    cache: RefCell<HashMap<CacheKey, Solved>>,
    resolved: RefCell<HashMap<usize, LfpPolicy>>,
}

enum Outcome {
    Table(Solved),
    Infinite,
}

impl LfpEngine {
    pub fn new(policy: LfpPolicy) -> Self {
        LfpEngine {
            policy,
            budget: LETTER_BUDGET,
            runs: RefCell::default(),
            cache: RefCell::default(),
            resolved: RefCell::default(),
        }
    }

    /// Sets the letter budget of a single table.
    pub fn with_budget(mut self, letters: u64) -> Self {
        self.budget = letters;
        self
    }

    pub fn runs(&self) -> Vec<LfpRun> {
        self.runs.borrow().clone()
    }

    fn policy_for(&self, lfp: &LfpQ, n: u32, k: usize) -> Result<LfpPolicy, ExplError> {
        if let Some(&p) = self.resolved.borrow().get(&lfp.id) {
            return Ok(p);
        }
        let p = match self.policy.resolve(&lfp.source, n, k) {
            LfpPolicy::RestrictedSo if !satisfies(&lfp.source, FragmentTag::RsoR_SsoSO) => {
                return Err(ExplError::Shape(format!(
                    "fixed point `{}` is not of the restricted second-order shape",
                    lfp.name
                )))
            }
            p => p,
        };
        self.resolved.borrow_mut().insert(lfp.id, p);
        Ok(p)
    }

    fn solve(
        &self,
        ev: &mut Evaluator<'_>,
        lfp: &LfpQ,
        frame: &mut Frame,
        seeds: Vec<FunArg>,
        arg: &FunArg,
    ) -> Result<Outcome, ExplError> {
        let n = ev.universe_size();
        let k = match lfp.domain() {
            FunDomain::Fo(k) | FunDomain::So(k) => k,
        };
        let policy = self.policy_for(lfp, n, k)?;
        let mut run = LfpRun {
            name: lfp.name.clone(),
            policy,
            domain: 0,
            iterations: 0,
            chain_bound: chain_bound(n, k),
            support: Vec::new(),
            increasing: true,
            infinite: false,
        };

        // Close the seeds under the arguments the body may consult.
        let mut nodes: Vec<FunArg> = Vec::new();
        let mut index: HashMap<FunArg, usize> = HashMap::new();
        let mut succ: Vec<Vec<usize>> = Vec::new();
        for s in seeds {
            intern(&mut nodes, &mut index, s);
        }
        let mut i = 0;
        while i < nodes.len() {
            bind(lfp, &nodes[i], frame);
            let found = ev.discover(lfp.fid, |ev| ev.eval(&lfp.body, frame).map(drop))?;
            let mut out = Vec::with_capacity(found.len());
            for a in found {
                out.push(intern(&mut nodes, &mut index, a));
            }
            succ.push(out);
            if nodes.len() > MAX_DOMAIN {
                return Err(ExplError::Shape(format!(
                    "fixed point `{}` consults more than {MAX_DOMAIN} arguments",
                    lfp.name
                )));
            }
            i += 1;
        }
        run.domain = nodes.len();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
        for (b, cs) in succ.iter().enumerate() {
            for &c in cs {
                preds[c].push(b);
            }
        }

        let limit = match policy {
            LfpPolicy::StrictChain => run.chain_bound,
            LfpPolicy::Capped(cap) => cap,
            LfpPolicy::RestrictedSo => default_cap(n, k).max(nodes.len() + 2),
            LfpPolicy::Auto => unreachable!("resolved above"),
        };
        let mut values: Vec<ExplValue> = vec![ExplValue::empty(); nodes.len()];
        ev.set_table(lfp.fid, FunTable::new(lfp.domain()));
        let mut dirty: Vec<usize> = (0..nodes.len()).collect();
        let mut stage = 0;
        let mut held: u64 = 0;
        let result = loop {
            let mut updates = Vec::new();
            for &d in &dirty {
                if values[d].is_infinite() {
                    continue;
                }
                bind(lfp, &nodes[d], frame);
                let v = ev.eval(&lfp.body, frame)?;
                if !values[d].is_subset(&v) {
                    run.increasing = false;
                }
                let new = values[d].clone().union(v);
                if new != values[d] {
                    updates.push((d, new));
                }
            }
            if stage == 0 && policy == LfpPolicy::RestrictedSo {
                let start = index[arg];
                let productive: BTreeSet<usize> = updates.iter().map(|(d, _)| *d).collect();
                if productive_cycle(&nodes, &succ, start, &productive) {
                    run.infinite = true;
                    break Outcome::Infinite;
                }
            }
            if updates.is_empty() {
                break Outcome::Table(Solved {
                    domain: nodes.iter().cloned().collect(),
                    table: ev.take_table(lfp.fid).expect("set above"),
                });
            }
            stage += 1;
            let mut table = ev.take_table(lfp.fid).expect("set above");
            let mut next = BTreeSet::new();
            for (d, v) in updates {
                table.set(nodes[d].clone(), v.clone())?;
                held = held - size(&values[d]) + size(&v);
                values[d] = v;
                next.extend(preds[d].iter().copied());
            }
            run.support.push(table.support());
            ev.set_table(lfp.fid, table);
            run.iterations = stage;
            if stage > limit || held > self.budget {
                ev.take_table(lfp.fid);
                self.runs.borrow_mut().push(run);
                return Err(match policy {
                    LfpPolicy::StrictChain if stage > limit => ExplError::ChainBound {
                        name: lfp.name.clone(),
                        iterations: stage,
                        bound: limit,
                    },
                    _ => ExplError::Diverged {
                        name: lfp.name.clone(),
                        iterations: stage,
                    },
                });
            }
            dirty = next.into_iter().collect();
        };
        self.runs.borrow_mut().push(run);
        Ok(result)
    }
}

fn size(v: &ExplValue) -> u64 {
    v.strings().map_or(0, |s| s.iter().map(|w| w.len() as u64).sum())
}

fn intern(nodes: &mut Vec<FunArg>, index: &mut HashMap<FunArg, usize>, a: FunArg) -> usize {
    *index.entry(a).or_insert_with_key(|a| {
        nodes.push(a.clone());
        nodes.len() - 1
    })
}

fn bind(lfp: &LfpQ, arg: &FunArg, frame: &mut Frame) {
    match (&lfp.kind, arg) {
        (LfpKind::Fo { params, .. }, FunArg::Fo(t)) => {
            for (&p, &a) in params.iter().zip(t) {
                frame.fo[p] = a;
            }
        }
        (LfpKind::So { param, .. }, FunArg::So(r)) => frame.so[*param] = Some(r.clone()),
        _ => unreachable!("arguments are checked against the domain"),
    }
}

/// The detector on the discovered graph: a cycle reachable from `start`
/// that reaches a node whose first iterate is nonempty.
fn productive_cycle(nodes: &[FunArg], succ: &[Vec<usize>], start: usize, productive: &BTreeSet<usize>) -> bool {
    let rel = |i: usize| match &nodes[i] {
        FunArg::So(r) => r.clone(),
        FunArg::Fo(_) => unreachable!("second-order fixed points only"),
    };
    let mut g = ConnectionGraph::new(0);
    for (b, cs) in succ.iter().enumerate() {
        g.add_node(rel(b));
        for &c in cs {
            g.add_edge(rel(b), rel(c));
        }
    }
    let productive: BTreeSet<RelationValue> = productive.iter().map(|&i| rel(i)).collect();
    g.productive_cycle_from(&rel(start), |d| productive.contains(d))
}

fn all_tuples(n: u32, k: usize) -> Result<Vec<FunArg>, ExplError> {
    let size = tuple_space(n, k).filter(|&s| s as usize <= MAX_DOMAIN).ok_or_else(|| {
        ExplError::Shape(format!("{n}^{k} arguments exceed the tabulation limit"))
    })?;
    let mut t = vec![0u32; k];
    let mut out = Vec::with_capacity(size as usize);
    for _ in 0..size {
        out.push(FunArg::Fo(t.clone()));
        advance(&mut t, n);
    }
    Ok(out)
}

impl LfpHandler for LfpEngine {
    fn eval_lfp(&self, ev: &mut Evaluator<'_>, lfp: &LfpQ, frame: &mut Frame) -> Result<ExplValue, ExplError> {
        let arg = match &lfp.kind {
            LfpKind::Fo { args, .. } => FunArg::Fo(args.iter().map(|&s| frame.fo[s]).collect()),
            LfpKind::So { arg, .. } => FunArg::So(ev.rel(arg, frame)?),
        };
        let key: CacheKey = (
            lfp.id,
            lfp.key_fo.iter().map(|&s| frame.fo[s]).collect(),
            lfp.key_so.iter().map(|&s| frame.so[s].clone()).collect(),
        );
        let mut seeds = Vec::new();
        if lfp.closed {
            if let Some(s) = self.cache.borrow().get(&key) {
                if s.domain.contains(&arg) {
                    return Ok(s.table.value(&arg));
                }
                seeds.extend(s.domain.iter().cloned());
            }
        }
        match lfp.domain() {
            FunDomain::Fo(k) => seeds = all_tuples(ev.universe_size(), k)?,
            FunDomain::So(_) => seeds.push(arg.clone()),
        }

        ev.fit(frame);
        let saved_fo: Vec<(usize, u32)> = match &lfp.kind {
            LfpKind::Fo { params, .. } => params.iter().map(|&p| (p, frame.fo[p])).collect(),
            LfpKind::So { .. } => Vec::new(),
        };
        let saved_so = match &lfp.kind {
            LfpKind::So { param, .. } => Some((*param, frame.so[*param].take())),
            LfpKind::Fo { .. } => None,
        };
        let outcome = self.solve(ev, lfp, frame, seeds, &arg);
        for (p, a) in saved_fo {
            frame.fo[p] = a;
        }
        if let Some((p, r)) = saved_so {
            frame.so[p] = r;
        }
        match outcome? {
            Outcome::Infinite => Ok(ExplValue::Infinite),
            Outcome::Table(solved) => {
                let v = solved.table.value(&arg);
                if lfp.closed {
                    self.cache.borrow_mut().insert(key, solved);
                }
                Ok(v)
            }
        }
    }
}
