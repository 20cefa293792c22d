//! Counting problems as structures and counting formulae.

use bool_semantics::Assignment;
use formula_ast::{parse_qformula, parse_qformula_with, QFormula};
use structure_core::{RelationValue, Structure};

use crate::error::CompileError;
use crate::spec::{DnfSpec, GraphSpec, NfaSpec};

/// A structure with a formula whose count answers the problem.
///
/// `formula` may have free variables, interpreted by `assignment`;
/// `closed` has none and picks the same values out of marker relations of
/// `structure`, so both count the same.
#[derive(Clone, Debug)]
pub struct Instance {
    pub structure: Structure,
    pub formula: QFormula,
    pub assignment: Assignment,
    pub closed: QFormula,
}

pub const CLIQUE: &str = "Sum X:1. [forall x. forall y. (X(x) & X(y) & !(x = y)) -> E(x,y) @ X]";

pub const SINKS: &str = "lfp f(x) = [forall y. !E(x,y)] * x + sum y. [E(x,y)] * f(y) in f(s)";

pub const CENSUS: &str = "lfp f(x, y) = [F(x)] + [y <= max] * sum u. sum v. [succ(y, v)] \
     * ([E0(x, u)] * min + [E1(x, u)] * (sum w. [succ(min, w)] * w)) * f(u, v) in f(s, t)";

fn graph_structure(g: &GraphSpec) -> Result<Structure, CompileError> {
    g.validate()?;
    let edges: Vec<[u32; 2]> = g.edges.iter().map(|&(a, b)| [a, b]).collect();
    Ok(Structure::new(g.n)?.with_relation("E", 2, edges)?)
}

fn plain(structure: Structure, text: &str) -> Result<Instance, CompileError> {
    let formula = parse_qformula(text)?;
    Ok(Instance {
        structure,
        closed: formula.clone(),
        formula,
        assignment: Assignment::new(),
    })
}

/// Cliques of a directed graph: sets whose distinct members are joined by
/// edges both ways, the empty set included.
pub fn template_clique(g: &GraphSpec) -> Result<Instance, CompileError> {
    plain(graph_structure(g)?, CLIQUE)
}

/// Sinks reachable from the source.
pub fn template_sinks(g: &GraphSpec) -> Result<Instance, CompileError> {
    let source = g
        .source
        .ok_or_else(|| CompileError::Invalid("the sinks template needs a source".into()))?;
    let structure = graph_structure(g)?.with_relation("Source", 1, [[source]])?;
    Ok(Instance {
        formula: parse_qformula(SINKS)?,
        assignment: Assignment::new().with_fo("s", source),
        closed: parse_qformula(&format!("sum s. [Source(s)] * ({SINKS})"))?,
        structure,
    })
}

/// Words of length at most `m` accepted by the automaton.
///
/// The universe is the states followed by `m + 1` padding elements marked
/// by `L`; the second argument of the recursion walks the padding, one
/// element per letter. `F` marks accepting states, so the empty word counts
/// when the start state accepts.
pub fn template_census(nfa: &NfaSpec) -> Result<Instance, CompileError> {
    nfa.validate()?;
    let (q, m) = (nfa.states, nfa.m);
    let n = q + m + 1;
    let edges = |letter: u8| -> Vec<[u32; 2]> {
        nfa.edges
            .iter()
            .filter(|e| e.1 == letter)
            .map(|&(p, _, r)| [p, r])
            .collect()
    };
    let structure = Structure::new(n)?
        .with_relation("L", 1, (q..n).map(|a| [a]))?
        .with_relation("E0", 2, edges(0))?
        .with_relation("E1", 2, edges(1))?
        .with_relation("F", 1, nfa.accept.iter().map(|&a| [a]))?
        .with_relation("Start", 1, [[nfa.start]])?;
    Ok(Instance {
        formula: parse_qformula(CENSUS)?,
        assignment: Assignment::new().with_fo("s", nfa.start).with_fo("t", q),
        closed: parse_qformula(&format!(
            "sum s. sum t. [Start(s) & L(t) & forall w. L(w) -> t <= w] * ({CENSUS})"
        ))?,
        structure,
    })
}

/// `phi(x)` of the independent-set recursion over the packed relation `P`:
/// row `min` is the set `I`, row `max` the examined vertices. It holds at
/// the least unexamined vertex that can be both added and left out, when
/// every unexamined vertex before it is adjacent to `I`.
fn is_phi(x: &str) -> String {
    format!(
        "(!P(max, {x}) & (forall a{x}. P(min, a{x}) -> !E({x}, a{x})) \
         & (forall b{x}. b{x} < {x} -> P(max, b{x}) | (exists c{x}. P(min, c{x}) & E(b{x}, c{x}))))"
    )
}

fn is_parts() -> (String, String, String) {
    let can = format!("exists x. {}", is_phi("x"));
    let witness = "exists t. exists z. !P(t, z) & Y(t, z)";
    let examined = format!("(t = max & exists u. z <= u & {})", is_phi("u"));
    let include = format!(
        "(forall t. forall z. Y(t, z) <-> P(t, z) | (t = min & {}) | {examined}) & {witness}",
        is_phi("z")
    );
    let exclude = format!("(forall t. forall z. Y(t, z) <-> P(t, z) | {examined}) & {witness}");
    (can, include, exclude)
}

/// Body of the independent-set recursion in the fixed-point fragment: one
/// output `$P` per vertex that can go either way, plus one for the start.
pub fn is_lfp_text() -> String {
    let (can, inc, exc) = is_parts();
    format!(
        "lfp f(P:2) = [forall z. !P(max, z)] + [{can}] * $P * ([true] + (Sum Y:2. [{inc}] * f(Y)) \
         + (Sum Y:2. [{exc}] * f(Y))) in f(B)"
    )
}

/// The same recursion in the first-order fragment, writing each new
/// relation.
pub fn is_fo_text() -> String {
    let (can, inc, exc) = is_parts();
    format!(
        "lfp f(P:2) = [forall t. forall z. !P(t, z)] * $P + [{can}] * ((Sum Y:2. [{inc}] * $Y * f(Y)) \
         + (Sum Y:2. [{exc}] * $Y * f(Y)) + [true]) in f(B)"
    )
}

/// Independent sets of the undirected, loop-free version of `g`, in both
/// fragments; `I` and the examined set share one binary relation, so at
/// least two vertices are needed.
pub fn template_is(g: &GraphSpec) -> Result<(Instance, Instance), CompileError> {
    let g = g.symmetrized();
    if g.n < 2 {
        return Err(CompileError::Invalid(
            "the independent-set encoding needs at least two vertices".into(),
        ));
    }
    let structure = graph_structure(&g)?;
    let make = |text: String| -> Result<Instance, CompileError> {
        Ok(Instance {
            structure: structure.clone(),
            formula: parse_qformula_with(&text, &[("B", 2)])?,
            assignment: Assignment::new().with_so("B", RelationValue::empty(g.n, 2)?),
            closed: parse_qformula(&empty_start(&text))?,
        })
    };
    Ok((make(is_lfp_text())?, make(is_fo_text())?))
}

fn empty_start(text: &str) -> String {
    format!("Sum B:2. [forall t. forall z. B(t, z) <-> false] * ({text})")
}

fn dnf_next(x: &str) -> String {
    format!("(Var({x}) & !P(min, {x}) & forall a{x}. a{x} < {x} -> P(min, a{x}))")
}

/// Some clause survives assigning `value` to the next variable.
fn dnf_sat_after(value: bool) -> String {
    let (t, f) = if value { ("| w = x", "") } else { ("", "| w = x") };
    format!(
        "exists x. {} & exists c. Cl(c) & (forall w. !(Pos(c, w) & Neg(c, w))) \
         & (forall w. Pos(c, w) -> (P(min, w) & P(max, w)) | (!P(min, w) & !(w = x)) {t}) \
         & (forall w. Neg(c, w) -> (P(min, w) & !P(max, w)) | (!P(min, w) & !(w = x)) {f})",
        dnf_next("x")
    )
}

fn dnf_assign(value: bool) -> String {
    let rows = if value { "(t = min | t = max)" } else { "t = min" };
    format!(
        "(forall t. forall z. Y(t, z) <-> P(t, z) | ({} & {rows})) & exists t. exists z. !P(t, z) & Y(t, z)",
        dnf_next("z")
    )
}

/// The #DNF recursion: variables are fixed in order, row `min` of `P`
/// holding the assigned ones and row `max` the true ones; a value is tried
/// only when some clause survives it, and each satisfying assignment ends
/// one string.
pub fn dnf_text() -> String {
    let done = "(forall x. Var(x) -> P(min, x)) & exists c. Cl(c) \
                & (forall w. Pos(c, w) -> P(max, w)) & (forall w. Neg(c, w) -> !P(max, w))";
    format!(
        "lfp f(P:2) = [{done}] + [{}] * (Sum Y:2. [{}] * $Y * f(Y)) + [{}] * (Sum Y:2. [{}] * $Y * f(Y)) in f(B)",
        dnf_sat_after(false),
        dnf_assign(false),
        dnf_sat_after(true),
        dnf_assign(true)
    )
}

/// #DNF as a second-order recursion over variables `0..vars` and clauses
/// `0..clauses` of one universe.
pub fn compile_dnf(d: &DnfSpec) -> Result<Instance, CompileError> {
    d.validate()?;
    let n = d.vars.max(d.clauses.len()).max(2) as u32;
    let lits = |positive: bool| -> Vec<[u32; 2]> {
        d.clauses
            .iter()
            .enumerate()
            .flat_map(|(c, lits)| {
                lits.iter()
                    .filter(move |l| (**l > 0) == positive)
                    .map(move |l| [c as u32, l.unsigned_abs() - 1])
            })
            .collect()
    };
    let structure = Structure::new(n)?
        .with_relation("Var", 1, (0..d.vars as u32).map(|a| [a]))?
        .with_relation("Cl", 1, (0..d.clauses.len() as u32).map(|a| [a]))?
        .with_relation("Pos", 2, lits(true))?
        .with_relation("Neg", 2, lits(false))?;
    let text = dnf_text();
    Ok(Instance {
        formula: parse_qformula_with(&text, &[("B", 2)])?,
        assignment: Assignment::new().with_so("B", RelationValue::empty(n, 2)?),
        closed: parse_qformula(&empty_start(&text))?,
        structure,
    })
}
