use std::collections::HashMap;

use structure_core::{advance, enumerate_relations, tuple_space, RelationValue};

use crate::compile::{BNode, CompiledShape, Frame, LfpNode, RelSrc};
use crate::error::EvalError;

type LfpKey = (usize, Vec<u32>, Vec<Option<RelationValue>>);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoolStats {
    /// Fixed points computed (cache misses).
    pub fixpoints: u64,
    /// Largest number of stages any fixed point needed.
    pub max_stages: usize,
}

/// Evaluates compiled formulae over a universe of size `n`, caching
/// fixed-point relations by the values of their free variables.
pub struct BoolEval {
    n: u32,
    cache: HashMap<LfpKey, RelationValue>,
    /// The last value of each fixed point, checked before the cache.
    recent: HashMap<usize, (Vec<u32>, Vec<Option<RelationValue>>, RelationValue)>,
    pub stats: BoolStats,
}

fn rel_index(n: u32, frame: &Frame, args: &[usize]) -> usize {
    args.iter()
        .fold(0usize, |acc, &s| acc * n as usize + frame.fo[s] as usize)
}

impl BoolEval {
    pub fn new(n: u32) -> Self {
        BoolEval {
            n,
            cache: HashMap::new(),
            recent: HashMap::new(),
            stats: BoolStats::default(),
        }
    }

    pub fn universe_size(&self) -> u32 {
        self.n
    }

    fn rel<'f>(&self, src: &'f RelSrc, frame: &'f Frame) -> Result<&'f RelationValue, EvalError> {
        match src {
            RelSrc::Const(r) => Ok(r),
            RelSrc::Slot(s) => frame.so[*s]
                .as_ref()
                .ok_or_else(|| EvalError::Unbound(format!("relation slot {s}"))),
        }
    }

    pub fn eval(&mut self, node: &BNode, frame: &mut Frame) -> Result<bool, EvalError> {
        Ok(match node {
            BNode::Const(b) => *b,
            BNode::Rel { src, args } => {
                let idx = rel_index(self.n, frame, args);
                self.rel(src, frame)?.contains_index(idx)
            }
            BNode::Eq(a, b) => frame.fo[*a] == frame.fo[*b],
            BNode::Leq(a, b) => frame.fo[*a] <= frame.fo[*b],
            BNode::IsMin(a) => frame.fo[*a] == 0,
            BNode::IsMax(a) => frame.fo[*a] + 1 == self.n,
            BNode::LeqSucc(a, b) => frame.fo[*a] <= frame.fo[*b] + 1,
            BNode::Not(a) => !self.eval(a, frame)?,
            BNode::And(parts) => {
                for p in parts {
                    if !self.eval(p, frame)? {
                        return Ok(false);
                    }
                }
                true
            }
            BNode::Or(parts) => {
                for p in parts {
                    if self.eval(p, frame)? {
                        return Ok(true);
                    }
                }
                false
            }
            BNode::Implies(a, b) => !self.eval(a, frame)? || self.eval(b, frame)?,
            BNode::Iff(a, b) => self.eval(a, frame)? == self.eval(b, frame)?,
            BNode::Forall(slot, body) => {
                let saved = frame.fo[*slot];
                let mut result = true;
                for a in 0..self.n {
                    frame.fo[*slot] = a;
                    if !self.eval(body, frame)? {
                        result = false;
                        break;
                    }
                }
                frame.fo[*slot] = saved;
                result
            }
            BNode::Exists(slot, body) => {
                let saved = frame.fo[*slot];
                let mut result = false;
                for a in 0..self.n {
                    frame.fo[*slot] = a;
                    if self.eval(body, frame)? {
                        result = true;
                        break;
                    }
                }
                frame.fo[*slot] = saved;
                result
            }
            BNode::ForallSO(slot, k, body) | BNode::ExistsSO(slot, k, body) => {
                let universal = matches!(node, BNode::ForallSO(..));
                let saved = frame.so[*slot].take();
                let mut result = universal;
                for r in enumerate_relations(self.n, *k)? {
                    frame.so[*slot] = Some(r);
                    if self.eval(body, frame)? != universal {
                        result = !universal;
                        break;
                    }
                }
                frame.so[*slot] = saved;
                result
            }
            BNode::Lfp(lfp) => {
                let idx = rel_index(self.n, frame, &lfp.args);
                if let Some((fo, so, rel)) = self.recent.get(&lfp.id) {
                    let same = lfp.key_fo.iter().zip(fo).all(|(&s, &a)| frame.fo[s] == a)
                        && lfp.key_so.iter().zip(so).all(|(&s, r)| frame.so[s] == *r);
                    if same {
                        return Ok(rel.contains_index(idx));
                    }
                }
                let rel = self.fixpoint(lfp, frame)?;
                let member = rel.contains_index(idx);
                let fo = lfp.key_fo.iter().map(|&s| frame.fo[s]).collect();
                let so = lfp.key_so.iter().map(|&s| frame.so[s].clone()).collect();
                self.recent.insert(lfp.id, (fo, so, rel));
                member
            }
        })
    }

    /// Collects `{a : matrix(a)}` with the tuple bound to `vars`.
    pub fn collect(
        &mut self,
        vars: &[usize],
        matrix: &BNode,
        frame: &mut Frame,
    ) -> Result<RelationValue, EvalError> {
        let k = vars.len();
        let space = tuple_space(self.n, k).ok_or(structure_core::StructureError::TupleSpaceTooLarge {
            n: self.n,
            arity: k,
        })? as usize;
        let saved: Vec<u32> = vars.iter().map(|&s| frame.fo[s]).collect();
        let mut bits = Vec::with_capacity(space);
        let mut tuple = vec![0u32; k];
        for _ in 0..space {
            for (&s, &a) in vars.iter().zip(&tuple) {
                frame.fo[s] = a;
            }
            bits.push(self.eval(matrix, frame)?);
            advance(&mut tuple, self.n);
        }
        for (&s, a) in vars.iter().zip(saved) {
            frame.fo[s] = a;
        }
        let mut it = bits.into_iter();
        Ok(RelationValue::from_fn(self.n, k, |_| it.next().unwrap_or(false))?)
    }

    fn fixpoint(&mut self, lfp: &LfpNode, frame: &mut Frame) -> Result<RelationValue, EvalError> {
        let key: LfpKey = (
            lfp.id,
            lfp.key_fo.iter().map(|&s| frame.fo[s]).collect(),
            lfp.key_so.iter().map(|&s| frame.so[s].clone()).collect(),
        );
        if let Some(r) = self.cache.get(&key) {
            return Ok(r.clone());
        }
        let bound = tuple_space(self.n, lfp.arity).unwrap_or(u64::MAX) as usize + 1;
        let saved = frame.so[lfp.pred].take();
        let mut stage = RelationValue::empty(self.n, lfp.arity)?;
        let mut stages = 0;
        let result = loop {
            stages += 1;
            if stages > bound {
                frame.so[lfp.pred] = saved;
                return Err(EvalError::StageBound {
                    name: lfp.name.clone(),
                    stages,
                    bound,
                });
            }
            frame.so[lfp.pred] = Some(stage.clone());
            let next = self.collect(&lfp.params, &lfp.body, frame)?;
            if !stage.is_subset(&next) {
                frame.so[lfp.pred] = saved;
                return Err(EvalError::NonMonotone(lfp.name.clone()));
            }
            if next == stage {
                break next;
            }
            stage = next;
        };
        frame.so[lfp.pred] = saved;
        self.stats.fixpoints += 1;
        self.stats.max_stages = self.stats.max_stages.max(stages);
        self.cache.insert(key, result.clone());
        Ok(result)
    }

    /// The unique candidate a definition or extension allows for its
    /// target, or `None` when a strict extension adds nothing.
    pub fn shape_candidate(
        &mut self,
        shape: &CompiledShape,
        frame: &mut Frame,
    ) -> Result<Option<RelationValue>, EvalError> {
        let added = self.collect(&shape.vars, &shape.matrix, frame)?;
        let Some(base) = &shape.base else {
            return Ok(Some(added));
        };
        let base = self.rel(base, frame)?.clone();
        let c = base.union(&added)?;
        if shape.strict && c == base {
            return Ok(None);
        }
        Ok(Some(c))
    }
}
