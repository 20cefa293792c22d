use bool_semantics::Assignment;
use expl_semantics::{Count, ExplError, ExplValue, FunDomain, FunEnv, FunArg, FunTable};
use fixpoint_engine::*;
use formula_ast::{parse_bool_with, parse_qformula, parse_qformula_with, BoolFormula, QFormula};
use structure_core::{parse_structure, RelationValue, Structure, SymbolString};

fn q(text: &str) -> QFormula {
    parse_qformula(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn path3() -> Structure {
    parse_structure("universe 3\nrelation E 2 { (0,1) (1,2) }").unwrap()
}

fn single() -> Structure {
    parse_structure("universe 1").unwrap()
}

fn rel1(n: u32, elems: &[u32]) -> RelationValue {
    RelationValue::from_tuples(n, 1, elems.iter().map(|&a| [a])).unwrap()
}

const SINKS: &str = "lfp f(x) = [forall y. !E(x,y)] * x + sum y. [E(x,y)] * f(y) in f(s)";
const BETA: &str = "lfp f(X:1) = (Sum Y:1. [Y = X] * $Y * f(Y)) + [X(min)] in f(B)";
const ZETA: &str = "lfp f(X:1) = Sum Y:1. [Y = X] * $Y * f(Y) in f(B)";

fn with_b(text: &str) -> QFormula {
    parse_qformula_with(text, &[("B", 1)]).unwrap_or_else(|e| panic!("{text}: {e}"))
}

#[test]
fn sinks_on_a_path() {
    let asg = Assignment::new().with_fo("s", 0);
    let e = evaluate(&q(SINKS), &path3(), &asg, &FunEnv::new(), LfpPolicy::Auto).unwrap();
    assert_eq!(e.value, ExplValue::singleton(SymbolString::elems(&[2])));
    assert_eq!(e.runs.len(), 1);
    let run = &e.runs[0];
    assert_eq!(run.domain, 3);
    assert!(run.increasing);
    assert_eq!(run.support, vec![1, 2, 3]);
    assert_eq!(run.iterations, 3);
}

#[test]
fn example_beta_is_infinite() {
    let asg = Assignment::new().with_so("B", rel1(1, &[0]));
    let beta = with_b(BETA);
    assert_eq!(lfp_eval(&beta, &single(), &asg, LfpPolicy::Auto).unwrap(), ExplValue::Infinite);
    assert!(detect_infinite(&beta, &single(), &asg).unwrap());
    assert!(matches!(
        lfp_eval(&beta, &single(), &asg, LfpPolicy::Capped(200)),
        Err(ExplError::Diverged { iterations: 201, .. })
    ));
}

#[test]
fn example_beta_on_the_empty_relation_is_finite() {
    let asg = Assignment::new().with_so("B", rel1(1, &[]));
    let beta = with_b(BETA);
    assert!(!detect_infinite(&beta, &single(), &asg).unwrap());
    assert!(lfp_eval(&beta, &single(), &asg, LfpPolicy::Auto).unwrap().is_empty());
}

#[test]
fn zeta_is_empty() {
    let asg = Assignment::new().with_so("B", rel1(1, &[0]));
    let zeta = with_b(ZETA);
    assert!(!detect_infinite(&zeta, &single(), &asg).unwrap());
    assert!(lfp_eval(&zeta, &single(), &asg, LfpPolicy::Auto).unwrap().is_empty());
    assert!(lfp_eval(&zeta, &single(), &asg, LfpPolicy::Capped(5)).unwrap().is_empty());
}

#[test]
fn strict_extensions_are_never_infinite() {
    let chain = with_b(
        "lfp f(X:1) = [true] + Sum Y:1. [(forall v. Y(v) <-> X(v) | v = min | exists w. X(w) & E(w, v)) & exists v. !X(v) & Y(v)] * $Y * f(Y) in f(B)",
    );
    let st = path3();
    for mask in 0..8 {
        let asg = Assignment::new().with_so("B", RelationValue::from_mask(3, 1, mask).unwrap());
        assert!(!detect_infinite(&chain, &st, &asg).unwrap());
        let e = evaluate(&chain, &st, &asg, &FunEnv::new(), LfpPolicy::Auto).unwrap();
        let run = e.runs.last().unwrap();
        assert_eq!(run.policy, LfpPolicy::StrictChain);
        assert!(run.iterations <= run.chain_bound);
    }
    // From the empty relation: {}, {0}, {0,1}, {0,1,2}.
    let asg = Assignment::new().with_so("B", rel1(3, &[]));
    assert_eq!(
        lfp_eval(&chain, &st, &asg, LfpPolicy::Auto).unwrap().count(),
        Count::Finite(4)
    );
}

#[test]
fn detector_requires_the_restricted_shape() {
    let asg = Assignment::new().with_fo("s", 0);
    assert!(matches!(
        detect_infinite(&q(SINKS), &path3(), &asg),
        Err(ExplError::Shape(_))
    ));
    assert!(matches!(
        lfp_eval(&q(SINKS), &path3(), &asg, LfpPolicy::RestrictedSo),
        Err(ExplError::Shape(_))
    ));
}

#[test]
fn growing_chains_hit_the_bounds() {
    let cycle = parse_structure("universe 2\nrelation E 2 { (0,1) (1,0) }").unwrap();
    let walk = q("lfp f(x) = [true] + sum y. [E(x,y)] * y * f(y) in f(s)");
    let asg = Assignment::new().with_fo("s", 0);
    assert!(matches!(
        lfp_eval(&walk, &cycle, &asg, LfpPolicy::StrictChain),
        Err(ExplError::ChainBound { iterations: 4, bound: 3, .. })
    ));
    assert!(matches!(
        lfp_eval(&walk, &cycle, &asg, LfpPolicy::Auto),
        Err(ExplError::Diverged { iterations: 85, .. })
    ));
    let e = evaluate(&walk, &path3(), &asg, &FunEnv::new(), LfpPolicy::StrictChain).unwrap();
    assert_eq!(e.value.count(), Count::Finite(3));
}

#[test]
fn closed_fixed_points_are_solved_once() {
    let f = q("sum s. lfp f(x) = [forall y. !E(x,y)] * x + sum y. [E(x,y)] * f(y) in f(s)");
    let e = evaluate(&f, &path3(), &Assignment::new(), &FunEnv::new(), LfpPolicy::Auto).unwrap();
    assert_eq!(e.value, ExplValue::singleton(SymbolString::elems(&[2])));
    assert_eq!(e.runs.len(), 1);
}

#[test]
fn nested_fixed_points() {
    // The inner fixed point reads the outer function at its own argument.
    let f = q(
        "lfp f(x) = [forall y. !E(x,y)] * x + sum y. [E(x,y)] * (lfp g(z) = f(z) in g(y)) in f(s)",
    );
    let asg = Assignment::new().with_fo("s", 0);
    let e = evaluate(&f, &path3(), &asg, &FunEnv::new(), LfpPolicy::Auto).unwrap();
    assert_eq!(e.value, ExplValue::singleton(SymbolString::elems(&[2])));
}

#[test]
fn single_iterations() {
    let sinks = q(SINKS);
    let st = path3();
    let asg = Assignment::new();
    let h0 = FunTable::new(FunDomain::Fo(1));
    let h1 = iterate_once(&sinks, &st, &asg, &h0).unwrap();
    assert_eq!(h1.support(), 1);
    assert_eq!(h1.value(&FunArg::Fo(vec![2])), ExplValue::singleton(SymbolString::elems(&[2])));
    let h2 = iterate_once(&sinks, &st, &asg, &h1).unwrap();
    assert!(h1.le(&h2));
    let h3 = iterate_once(&sinks, &st, &asg, &h2).unwrap();
    let h4 = iterate_once(&sinks, &st, &asg, &h3).unwrap();
    assert_eq!(h3, h4);
    assert_eq!(h4.support(), 3);
    assert!(iterate_once(&sinks, &st, &asg, &FunTable::new(FunDomain::So(1))).is_err());
}

fn b(text: &str) -> BoolFormula {
    parse_bool_with(text, &[("X", 1), ("Y", 1)]).unwrap_or_else(|e| panic!("{text}: {e}"))
}

#[test]
fn equality_graph_has_self_loops() {
    let g = build_connection_graph(&b("Y = X"), "X", "Y", 1, &single(), &Assignment::new(), None).unwrap();
    let (e, o) = (rel1(1, &[]), rel1(1, &[0]));
    assert_eq!(g.node_count(), 2);
    assert_eq!(g.edge_count(), 2);
    assert!(g.has_edge(&e, &e) && g.has_edge(&o, &o));
    assert!(g.on_cycle(&e));
}

#[test]
fn enumerated_graph_matches_the_shape_graph() {
    let phi = b("forall v. Y(v) <-> X(v) | v = min");
    let plain = b("(forall v. Y(v) <-> X(v) | v = min) | false");
    let st = path3();
    let fast = build_connection_graph(&phi, "X", "Y", 1, &st, &Assignment::new(), None).unwrap();
    let slow = build_connection_graph(&plain, "X", "Y", 1, &st, &Assignment::new(), None).unwrap();
    assert_eq!(fast, slow);
    assert_eq!(fast.edge_count(), 8);
}

#[test]
fn strict_extension_graph_is_acyclic() {
    let phi = b("(forall v. Y(v) <-> X(v) | true) & exists v. !X(v) & Y(v)");
    let g = build_connection_graph(&phi, "X", "Y", 1, &single(), &Assignment::new(), None).unwrap();
    let (e, o) = (rel1(1, &[]), rel1(1, &[0]));
    assert!(g.is_acyclic());
    assert!(reach(&g, &e, &o));
    assert!(!reach(&g, &o, &e));
    assert!(reach(&g, &o, &o));

    let lazy = build_connection_graph(&phi, "X", "Y", 1, &path3(), &Assignment::new(), Some(&rel1(3, &[1])))
        .unwrap();
    assert_eq!(lazy.node_count(), 2);
    assert!(reach(&lazy, &rel1(3, &[1]), &rel1(3, &[0, 1, 2])));
}

#[test]
fn falsum_graph_has_no_edges() {
    let g = build_connection_graph(&b("false"), "X", "Y", 1, &path3(), &Assignment::new(), None).unwrap();
    assert_eq!(g.node_count(), 8);
    assert_eq!(g.edge_count(), 0);
    assert!(!reach(&g, &rel1(3, &[]), &rel1(3, &[0])));
}

#[test]
fn policies_parse() {
    assert_eq!("strict".parse(), Ok(LfpPolicy::StrictChain));
    assert_eq!("restricted".parse(), Ok(LfpPolicy::RestrictedSo));
    assert_eq!("auto".parse(), Ok(LfpPolicy::Auto));
    assert_eq!("cap:7".parse(), Ok(LfpPolicy::Capped(7)));
    assert!("cap:0".parse::<LfpPolicy>().is_err());
    assert!("often".parse::<LfpPolicy>().is_err());
    assert_eq!(LfpPolicy::Capped(7).to_string(), "cap:7");
    assert_eq!(default_cap(3, 2), 154);
    assert_eq!(chain_bound(3, 2), 10);
}
