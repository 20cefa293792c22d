//! Graphs of connections between relations of one arity.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use bool_semantics::{eval_bool, unique_define, unique_extend, Assignment};
use expl_semantics::ExplError;
use formula_ast::{recognize_define, recognize_extend, BoolFormula};
use structure_core::{enumerate_relations, RelationValue, Structure};

/// Nodes are relations; an edge `B -> C` means the step formula holds with
/// the source at `B` and the target at `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionGraph {
    arity: usize,
    adjacency: BTreeMap<RelationValue, BTreeSet<RelationValue>>,
}

impl ConnectionGraph {
    pub fn new(arity: usize) -> Self {
        ConnectionGraph {
            arity,
            adjacency: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add_node(&mut self, b: RelationValue) {
        self.adjacency.entry(b).or_default();
    }

    pub fn add_edge(&mut self, b: RelationValue, c: RelationValue) {
        self.add_node(c.clone());
        self.adjacency.entry(b).or_default().insert(c);
    }

    pub fn nodes(&self) -> impl Iterator<Item = &RelationValue> {
        self.adjacency.keys()
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.values().map(BTreeSet::len).sum()
    }

    pub fn successors(&self, b: &RelationValue) -> impl Iterator<Item = &RelationValue> {
        self.adjacency.get(b).into_iter().flatten()
    }

    pub fn has_edge(&self, b: &RelationValue, c: &RelationValue) -> bool {
        self.adjacency.get(b).is_some_and(|s| s.contains(c))
    }

    /// Nodes reachable from `b`, including `b`.
    pub fn reachable(&self, b: &RelationValue) -> BTreeSet<RelationValue> {
        let mut seen = BTreeSet::from([b.clone()]);
        let mut queue = VecDeque::from([b.clone()]);
        while let Some(x) = queue.pop_front() {
            for y in self.successors(&x) {
                if seen.insert(y.clone()) {
                    queue.push_back(y.clone());
                }
            }
        }
        seen
    }

    /// `c` lies on a cycle of at least one edge.
    pub fn on_cycle(&self, c: &RelationValue) -> bool {
        self.successors(c).any(|d| self.reachable(d).contains(c))
    }

    pub fn is_acyclic(&self) -> bool {
        !self.nodes().any(|c| self.on_cycle(c))
    }

    /// Some node reachable from `start` lies on a cycle from which a
    /// `productive` node is reachable.
    pub fn productive_cycle_from(&self, start: &RelationValue, productive: impl Fn(&RelationValue) -> bool) -> bool {
        self.reachable(start)
            .iter()
            .filter(|c| self.on_cycle(c))
            .any(|c| self.reachable(c).iter().any(&productive))
    }
}

/// Whether `c` is reachable from `b` (every node reaches itself).
pub fn reach(g: &ConnectionGraph, b: &RelationValue, c: &RelationValue) -> bool {
    g.reachable(b).contains(c)
}

/// The graph of connections of `phi(x, y)` for relations of arity `k`.
///
/// With `from` set only the part reachable from it is built. Extend and
/// define shapes give at most one successor per node without enumerating
/// candidates; any other `phi` enumerates all relations of arity `k`.
pub fn build_connection_graph(
    phi: &BoolFormula,
    x: &str,
    y: &str,
    k: usize,
    structure: &Structure,
    asg: &Assignment,
    from: Option<&RelationValue>,
) -> Result<ConnectionGraph, ExplError> {
    let n = structure.universe_size();
    let single = recognize_extend(phi).is_some_and(|e| e.base == x && e.extended == y && e.vars.len() == k)
        || recognize_define(phi).is_some_and(|d| d.defined == y && d.vars.len() == k);
    let successors = |b: &RelationValue| -> Result<Vec<RelationValue>, ExplError> {
        let asg = asg.clone().with_so(x, b.clone());
        if single {
            let c = match recognize_extend(phi) {
                Some(_) => unique_extend(phi, structure, &asg)?,
                None => unique_define(phi, structure, &asg)?,
            };
            return Ok(c.into_iter().collect());
        }
        let mut out = Vec::new();
        for c in enumerate_relations(n, k)? {
            if eval_bool(phi, structure, &asg.clone().with_so(y, c.clone()))? {
                out.push(c);
            }
        }
        Ok(out)
    };
    let mut g = ConnectionGraph::new(k);
    match from {
        Some(b) => {
            let mut queue = VecDeque::from([b.clone()]);
            g.add_node(b.clone());
            let mut done = BTreeSet::new();
            while let Some(b) = queue.pop_front() {
                if !done.insert(b.clone()) {
                    continue;
                }
                for c in successors(&b)? {
                    queue.push_back(c.clone());
                    g.add_edge(b.clone(), c);
                }
            }
        }
        None => {
            for b in enumerate_relations(n, k)? {
                g.add_node(b.clone());
                for c in successors(&b)? {
                    g.add_edge(b.clone(), c);
                }
            }
        }
    }
    Ok(g)
}
