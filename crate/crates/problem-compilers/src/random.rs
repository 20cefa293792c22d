//! Seeded instance generators.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::spec::{DnfSpec, GraphSpec, NfaSpec};

/// A directed graph on `n` vertices, each ordered pair an edge with
/// probability `p`.
pub fn graph(rng: &mut impl Rng, n: u32, p: f64) -> GraphSpec {
    let edges = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    GraphSpec { n, edges, source: None }
}

/// An undirected loop-free graph, stored with both directions.
pub fn undirected_graph(rng: &mut impl Rng, n: u32, p: f64) -> GraphSpec {
    let edges = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    GraphSpec { n, edges, source: None }.symmetrized()
}

/// All `2^6` directed loop-free graphs on three vertices.
pub fn all_graphs_on_three() -> Vec<GraphSpec> {
    let pairs: Vec<(u32, u32)> = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
    (0..1u32 << pairs.len())
        .map(|mask| GraphSpec {
            n: 3,
            edges: pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect(),
            source: None,
        })
        .collect()
}

/// A formula with at most `vars` variables and `clauses` clauses, each of
/// one to three distinct literals.
pub fn dnf(rng: &mut impl Rng, vars: usize, clauses: usize) -> DnfSpec {
    let vars = rng.gen_range(1..=vars);
    let count = rng.gen_range(1..=clauses);
    let clauses = (0..count)
        .map(|_| {
            let mut pool: Vec<i32> = (1..=vars as i32).collect();
            pool.shuffle(rng);
            pool.truncate(rng.gen_range(1..=vars.min(3)));
            pool.into_iter().map(|v| if rng.gen_bool(0.5) { v } else { -v }).collect()
        })
        .collect();
    DnfSpec { vars, clauses }
}

/// An automaton with at most `states` states and length bound at most `m`.
pub fn nfa(rng: &mut impl Rng, states: u32, m: u32) -> NfaSpec {
    let states = rng.gen_range(1..=states);
    let mut edges = BTreeSet::new();
    for p in 0..states {
        for a in 0..2u8 {
            for q in 0..states {
                if rng.gen_bool(0.35) {
                    edges.insert((p, a, q));
                }
            }
        }
    }
    let accept = (0..states).filter(|_| rng.gen_bool(0.4)).collect();
    NfaSpec {
        states,
        edges,
        start: rng.gen_range(0..states),
        accept,
        m: rng.gen_range(1..=m),
    }
}

/// Accepts only `01`, along two different runs.
pub fn duplicate_path_nfa() -> NfaSpec {
    NfaSpec {
        states: 4,
        edges: BTreeSet::from([(0, 0, 1), (0, 0, 2), (1, 1, 3), (2, 1, 3)]),
        start: 0,
        accept: BTreeSet::from([3]),
        m: 2,
    }
}

/// A recursion `lfp f(X:1) = ... in f(B)` whose summands are an output
/// term and one or two steps `Sum Y:1. [phi(X, Y)] * $Y * f(Y)`.
#[derive(Clone, Debug)]
pub struct RestrictedRecursion {
    pub text: String,
    pub base: String,
    pub steps: Vec<String>,
}

pub fn restricted_recursion(rng: &mut impl Rng) -> RestrictedRecursion {
    let chi = ["X(v)", "!X(v)", "v = min", "v = max", "X(v) | v = min", "X(v) & v = max", "false", "true"];
    let phi = [
        "Y = X",
        "forall v. Y(v) <-> {chi}",
        "forall v. Y(v) <-> X(v) | {chi}",
        "(forall v. Y(v) <-> X(v) | {chi}) & exists v. !X(v) & Y(v)",
        "exists v. Y(v) & !X(v)",
        "forall v. Y(v) -> X(v)",
        "Y(min) <-> X(max)",
    ];
    let psi = ["X(min)", "!X(max)", "exists v. X(v)", "forall v. !X(v)", "true", "false"];
    let base = ["[{psi}]", "[{psi}] * $X", "$X"];
    let base = base.choose(rng).unwrap().replace("{psi}", psi.choose(rng).unwrap());
    let steps: Vec<String> = (0..rng.gen_range(1..=2))
        .map(|_| phi.choose(rng).unwrap().replace("{chi}", chi.choose(rng).unwrap()))
        .collect();
    let mut parts: Vec<String> = steps.iter().map(|p| format!("(Sum Y:1. [{p}] * $Y * f(Y))")).collect();
    parts.push(base.clone());
    parts.shuffle(rng);
    RestrictedRecursion {
        text: format!("lfp f(X:1) = {} in f(B)", parts.join(" + ")),
        base,
        steps,
    }
}
