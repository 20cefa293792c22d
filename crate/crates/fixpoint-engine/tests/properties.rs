//! Fixed points against plain Kleene iteration, and the divergence
//! detector against capped iteration and a graph built by model checking.

use bool_semantics::Assignment;
use expl_semantics::{expl, ExplError, FunDomain, FunEnv, FunArg, FunTable};
use fixpoint_engine::*;
use formula_ast::{parse_bool_with, parse_qformula_with, satisfies, FragmentTag, QFormula};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use structure_core::{enumerate_relations, RelationValue, Structure};

const CAP: usize = 12;

fn graph(rng: &mut ChaCha8Rng, n: u32) -> Structure {
    let edges: Vec<[u32; 2]> = (0..n)
        .flat_map(|a| (0..n).map(move |b| [a, b]))
        .filter(|_| rng.gen_bool(0.4))
        .collect();
    Structure::new(n).unwrap().with_relation("E", 2, edges).unwrap()
}

fn pick<'a>(rng: &mut ChaCha8Rng, from: &[&'a str]) -> &'a str {
    from.choose(rng).unwrap()
}

/// A first-order recursion `alpha + step (+ step)` with summands in both
/// orders.
fn fo_recursion(rng: &mut ChaCha8Rng) -> (String, String) {
    let psi = ["E(x,x)", "exists w. E(x,w)", "forall w. !E(x,w)", "x = min", "x = max", "true", "!E(x,x)"];
    let phi = ["E(x,y)", "E(y,x)", "x <= y", "!(x = y)", "E(x,y) & !(y = x)", "x <= y & !(x = y)"];
    let alpha = ["[{psi}] * x", "[{psi}]", "x", "[{psi}] * x * x"];
    let step = ["sum y. [{phi}] * y * f(y)", "sum y. [{phi}] * f(y)", "sum y. [{phi}] * f(y) * y"];
    let mut parts = vec![pick(rng, &alpha).replace("{psi}", pick(rng, &psi))];
    for _ in 0..rng.gen_range(1..=2) {
        parts.push(pick(rng, &step).replace("{phi}", pick(rng, &phi)));
    }
    let forward = format!("lfp f(x) = {} in f(s)", parts.join(" + "));
    parts.reverse();
    let backward = format!("lfp f(x) = {} in f(s)", parts.join(" + "));
    (forward, backward)
}

/// Kleene iteration with `iterate_once`: the stabilization index and the
/// limit table, or `None` past `cap`.
fn kleene(phi: &QFormula, s: &Structure, cap: usize) -> Option<(usize, FunTable)> {
    let mut h = FunTable::new(FunDomain::Fo(1));
    for i in 0..=cap {
        let next = iterate_once(phi, s, &Assignment::new(), &h).unwrap();
        assert!(h.le(&next));
        if next == h {
            return Some((i, h));
        }
        h = next;
    }
    None
}

fn q(text: &str) -> QFormula {
    parse_qformula_with(text, &[("B", 1)]).unwrap_or_else(|e| panic!("{text}: {e}"))
}

struct Restricted {
    text: String,
    alpha: String,
    steps: Vec<String>,
}

fn restricted(rng: &mut ChaCha8Rng) -> Restricted {
    let chi = ["X(v)", "!X(v)", "v = min", "v = max", "X(v) | v = min", "X(v) & v = max", "false", "true", "exists w. X(w)"];
    let phi = [
        "Y = X",
        "forall v. Y(v) <-> {chi}",
        "forall v. Y(v) <-> X(v) | {chi}",
        "(forall v. Y(v) <-> X(v) | {chi}) & exists v. !X(v) & Y(v)",
        "exists v. Y(v) & !X(v)",
        "forall v. Y(v) -> X(v)",
        "(forall v. Y(v) -> X(v)) & exists v. Y(v)",
        "Y(min) <-> X(max)",
    ];
    let psi = ["X(min)", "!X(max)", "exists v. X(v)", "forall v. !X(v)", "true", "false"];
    let alpha = ["[{psi}]", "[{psi}] * $X", "$X * [{psi}]", "$X"];
    let alpha = pick(rng, &alpha).replace("{psi}", pick(rng, &psi));
    let steps: Vec<String> = (0..rng.gen_range(1..=2))
        .map(|_| pick(rng, &phi).replace("{chi}", pick(rng, &chi)))
        .collect();
    let mut parts: Vec<String> = steps.iter().map(|p| format!("(Sum Y:1. [{p}] * $Y * f(Y))")).collect();
    parts.push(alpha.clone());
    parts.shuffle(rng);
    Restricted {
        text: format!("lfp f(X:1) = {} in f(B)", parts.join(" + ")),
        alpha,
        steps,
    }
}

/// Infinity read off the graph of connections: a cycle reachable from the
/// argument, from which some relation with a nonempty base summand is
/// reachable.
fn graph_oracle(r: &Restricted, s: &Structure, b: &RelationValue) -> bool {
    let n = s.universe_size();
    let mut g = ConnectionGraph::new(1);
    for step in &r.steps {
        let phi = parse_bool_with(step, &[("X", 1), ("Y", 1)]).unwrap();
        let part = build_connection_graph(&phi, "X", "Y", 1, s, &Assignment::new(), None).unwrap();
        for c in part.nodes() {
            g.add_node(c.clone());
            for d in part.successors(c) {
                g.add_edge(c.clone(), d.clone());
            }
        }
    }
    let alpha = parse_qformula_with(&r.alpha, &[("X", 1)]).unwrap();
    let productive = |d: &RelationValue| {
        !expl(&alpha, s, &Assignment::new().with_so("X", d.clone()), &FunEnv::new())
            .unwrap()
            .is_empty()
    };
    let all: Vec<RelationValue> = enumerate_relations(n, 1).unwrap().collect();
    all.iter().any(|c| {
        reach(&g, b, c)
            && g.successors(c).any(|d| reach(&g, d, c))
            && all.iter().any(|d| reach(&g, c, d) && productive(d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fixed_points_match_kleene_iteration(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let s = graph(&mut rng, n);
        let (text, reversed) = fo_recursion(&mut rng);
        let phi = parse_qformula_with(&text, &[]).unwrap();
        let rev = parse_qformula_with(&reversed, &[]).unwrap();
        let oracle = kleene(&phi, &s, CAP);
        for start in 0..n {
            let asg = Assignment::new().with_fo("s", start);
            let got = evaluate(&phi, &s, &asg, &FunEnv::new(), LfpPolicy::Capped(CAP));
            match &oracle {
                Some((index, table)) => {
                    let e = got.unwrap();
                    prop_assert_eq!(&e.value, &table.value(&FunArg::Fo(vec![start])), "{}", text);
                    prop_assert_eq!(e.runs[0].iterations, *index);
                    prop_assert!(e.runs[0].increasing);
                    let r = evaluate(&rev, &s, &asg, &FunEnv::new(), LfpPolicy::Capped(CAP)).unwrap();
                    prop_assert_eq!(r.value, e.value);
                }
                None => prop_assert!(matches!(got, Err(ExplError::Diverged { .. })), "{}", text),
            }
        }
    }

    #[test]
    fn detector_matches_capped_growth(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=2);
        let s = Structure::new(n).unwrap();
        let r = restricted(&mut rng);
        let phi = q(&r.text);
        prop_assert!(satisfies(&phi, FragmentTag::RsoR_SsoSO), "{}", r.text);
        let b = RelationValue::from_mask(n, 1, rng.gen_range(0..1u64 << n)).unwrap();
        let asg = Assignment::new().with_so("B", b.clone());
        let verdict = detect_infinite(&phi, &s, &asg).unwrap();
        prop_assert_eq!(verdict, graph_oracle(&r, &s, &b), "{}", r.text);
        let capped = evaluate(&phi, &s, &asg, &FunEnv::new(), LfpPolicy::Capped(200));
        match capped {
            Err(ExplError::Diverged { .. }) => prop_assert!(verdict, "{}", r.text),
            Ok(e) => {
                prop_assert!(!verdict, "{}", r.text);
                prop_assert_eq!(lfp_eval(&phi, &s, &asg, LfpPolicy::Auto).unwrap(), e.value);
            }
            Err(other) => prop_assert!(false, "{}: {}", r.text, other),
        }
    }
}
