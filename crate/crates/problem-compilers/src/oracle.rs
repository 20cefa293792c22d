//! Brute-force answers to the counting problems.

use std::collections::BTreeSet;

use counting_machines::{tot_count, MachineSpec};

use crate::error::CompileError;
use crate::spec::{DnfSpec, GraphSpec, NfaSpec};

/// Largest vertex, variable or word-length parameter enumerated.
pub const MAX_ENUMERATED: u32 = 20;

/// An instance of one of the counting problems.
#[derive(Clone, Debug)]
pub enum Problem {
    Cliques(GraphSpec),
    IndependentSets(GraphSpec),
    Dnf(DnfSpec),
    Census(NfaSpec),
    Sinks(GraphSpec),
    /// Branchings on the empty input within a clock.
    Branchings(MachineSpec, usize),
}

/// The answer to `p` by exhaustive search.
pub fn oracle_count(p: &Problem) -> Result<u64, CompileError> {
    let guard = |what: &str, v: u32| {
        if v > MAX_ENUMERATED {
            Err(CompileError::Scale(format!("{what} {v} exceeds {MAX_ENUMERATED}")))
        } else {
            Ok(())
        }
    };
    Ok(match p {
        Problem::Cliques(g) => {
            g.validate()?;
            guard("vertices", g.n)?;
            count_cliques(g)
        }
        Problem::IndependentSets(g) => {
            g.validate()?;
            guard("vertices", g.n)?;
            count_independent_sets(g)
        }
        Problem::Sinks(g) => {
            g.validate()?;
            count_reachable_sinks(g)
        }
        Problem::Dnf(d) => {
            d.validate()?;
            guard("variables", d.vars as u32)?;
            count_dnf_models(d)
        }
        Problem::Census(a) => {
            a.validate()?;
            guard("word length", a.m)?;
            count_accepted_words(a)
        }
        Problem::Branchings(m, clock) => tot_count(m, "", *clock)?,
    })
}

/// Subsets of the vertices whose distinct members are joined by edges in
/// both directions.
pub fn count_cliques(g: &GraphSpec) -> u64 {
    let n = g.n;
    (0..1u64 << n)
        .filter(|&set| {
            let members: Vec<u32> = (0..n).filter(|v| set >> v & 1 == 1).collect();
            members
                .iter()
                .all(|&a| members.iter().all(|&b| a == b || g.edges.contains(&(a, b))))
        })
        .count() as u64
}

/// Independent sets of the undirected graph underlying `g`, ignoring
/// self-loops.
pub fn count_independent_sets(g: &GraphSpec) -> u64 {
    let n = g.n;
    (0..1u64 << n)
        .filter(|&set| {
            g.edges
                .iter()
                .all(|&(a, b)| a == b || !(set >> a & 1 == 1 && set >> b & 1 == 1))
        })
        .count() as u64
}

/// Vertices without outgoing edges reachable from the source.
pub fn count_reachable_sinks(g: &GraphSpec) -> u64 {
    let Some(s) = g.source else { return 0 };
    let mut seen = BTreeSet::from([s]);
    let mut stack = vec![s];
    while let Some(v) = stack.pop() {
        for &(_, w) in g.edges.range((v, 0)..=(v, u32::MAX)) {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.iter()
        .filter(|&&v| g.edges.range((v, 0)..=(v, u32::MAX)).next().is_none())
        .count() as u64
}

/// Satisfying assignments of a formula in disjunctive normal form.
pub fn count_dnf_models(d: &DnfSpec) -> u64 {
    (0..1u64 << d.vars)
        .filter(|&a| {
            d.clauses.iter().any(|c| {
                c.iter().all(|&l| {
                    let value = a >> (l.unsigned_abs() - 1) & 1 == 1;
                    value == (l > 0)
                })
            })
        })
        .count() as u64
}

/// Words of length `0..=m` accepted by the automaton.
pub fn count_accepted_words(nfa: &NfaSpec) -> u64 {
    let step = |states: &BTreeSet<u32>, letter: u8| -> BTreeSet<u32> {
        nfa.edges
            .iter()
            .filter(|&&(p, a, _)| a == letter && states.contains(&p))
            .map(|&(_, _, q)| q)
            .collect()
    };
    let mut total = 0;
    for len in 0..=nfa.m {
        for word in 0..1u64 << len {
            let mut states = BTreeSet::from([nfa.start]);
            for i in 0..len {
                states = step(&states, (word >> i & 1) as u8);
            }
            if states.iter().any(|q| nfa.accept.contains(q)) {
                total += 1;
            }
        }
    }
    total
}
