//! Seeded oracle-equivalence and property suites.

use std::time::{Duration, Instant};

use bool_semantics::{eval_bool, unique_define, unique_extend, Assignment};
use counting_machines::{machines, run_tree, tot_count};
use expl_semantics::{concat_sets, expl, Count, ExplError, ExplValue, FunEnv};
use fixpoint_engine::{detect_infinite, evaluate, LfpPolicy};
use formula_ast::{parse_qformula, parse_qformula_with, recognize_define, recognize_extend};
use problem_compilers::oracle::*;
use problem_compilers::{
    compile_dnf, compile_tm_to_tot, random, template_census, template_clique, template_is, template_sinks, Instance,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use structure_core::{enumerate_relations, RelationValue, Structure, SymbolString};

use crate::gen;

pub const SUITES: [&str; 10] = [
    "table2",
    "clique",
    "is",
    "dnf",
    "census",
    "sinks",
    "detector",
    "monotonicity",
    "fastpath",
    "machines",
];

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn line(&self) -> String {
        format!(
            "{:<13} {:>4} cases  {:>3} failed  {:>8.1} ms",
            self.name,
            self.cases,
            self.failures.len(),
            self.elapsed.as_secs_f64() * 1e3
        )
    }
}

struct Cases {
    count: usize,
    failures: Vec<String>,
}

impl Cases {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn count_of(i: &Instance) -> Result<u64, ExplError> {
    let e = evaluate(&i.formula, &i.structure, &i.assignment, &FunEnv::new(), LfpPolicy::Auto)?;
    match e.value.count() {
        Count::Finite(c) => Ok(c),
        Count::Infinite => Err(ExplError::Shape("infinite count".into())),
    }
}

fn compare(c: &mut Cases, label: &str, got: Result<u64, ExplError>, want: u64) {
    match got {
        Ok(v) => c.check(v == want, || format!("{label}: evaluated {v}, oracle {want}")),
        Err(e) => c.check(false, || format!("{label}: {e}")),
    }
}

/// Runs `suite` (or every suite) with `cases` random instances each, or
/// the default number per suite.
pub fn run_selftest(seed: u64, cases: Option<usize>, suite: Option<&str>) -> Result<Vec<SuiteResult>, String> {
    if let Some(s) = suite {
        if !SUITES.contains(&s) {
            return Err(format!("unknown suite `{s}`; available: {}", SUITES.join(", ")));
        }
    }
    let mut out = Vec::new();
    for (i, &name) in SUITES.iter().enumerate() {
        if suite.is_some_and(|s| s != name) {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let mut c = Cases {
            count: 0,
            failures: Vec::new(),
        };
        let start = Instant::now();
        let k = |default: usize| cases.unwrap_or(default);
        match name {
            "table2" => table2(&mut c),
            "clique" => clique(&mut c, &mut rng, k(50)),
            "is" => independent_sets(&mut c, &mut rng, k(30)),
            "dnf" => dnf(&mut c, &mut rng, k(30)),
            "census" => census(&mut c, &mut rng, k(20)),
            "sinks" => sinks(&mut c, &mut rng, k(30)),
            "detector" => detector(&mut c, &mut rng, k(100)),
            "monotonicity" => monotonicity(&mut c, &mut rng, k(200)),
            "fastpath" => fastpath(&mut c, &mut rng, k(100)),
            "machines" => machine_suite(&mut c),
            _ => unreachable!("checked above"),
        }
        out.push(SuiteResult {
            name,
            cases: c.count,
            failures: c.failures,
            elapsed: start.elapsed(),
        });
    }
    Ok(out)
}

fn set(words: &[&[u32]]) -> ExplValue {
    ExplValue::from_strings(words.iter().map(|w| SymbolString::elems(w)))
}

fn table2(c: &mut Cases) {
    let left = set(&[&[], &[1], &[2, 3]]);
    let right = set(&[&[], &[2, 3]]);
    let want = set(&[&[], &[2, 3], &[1], &[1, 2, 3], &[2, 3, 2, 3]]);
    c.check(concat_sets(&left, &right) == want, || "worked concatenation".into());
    let path = Structure::new(3)
        .and_then(|s| s.with_relation("E", 2, [[0, 1], [1, 2]]))
        .expect("fixture");
    let asg = Assignment::new().with_fo("x", 1).with_fo("y", 2);
    let rows: [(&str, ExplValue); 6] = [
        ("x", set(&[&[1]])),
        ("[exists z. E(x, z)]", ExplValue::epsilon()),
        ("[E(y, x)]", ExplValue::empty()),
        ("x + y", set(&[&[1], &[2]])),
        ("(x + y) * y", set(&[&[1, 2], &[2, 2]])),
        ("sum z. [exists w. E(z, w)] * z", set(&[&[0], &[1]])),
    ];
    for (text, want) in rows {
        let got = parse_qformula(text).map_err(|e| e.to_string()).and_then(|f| {
            expl(&f, &path, &asg, &FunEnv::new()).map_err(|e| e.to_string())
        });
        c.check(got.as_ref() == Ok(&want), || format!("{text}: {got:?}"));
    }
}

fn clique(c: &mut Cases, rng: &mut ChaCha8Rng, cases: usize) {
    let mut graphs = random::all_graphs_on_three();
    for _ in 0..cases {
        let n = rng.gen_range(1..=5);
        graphs.push(random::graph(rng, n, 0.6));
    }
    for g in graphs {
        let got = template_clique(&g).map_err(|e| ExplError::Shape(e.to_string()));
        compare(c, &format!("clique\n{}", g.to_text()), got.and_then(|i| count_of(&i)), count_cliques(&g));
    }
}

fn independent_sets(c: &mut Cases, rng: &mut ChaCha8Rng, cases: usize) {
    for _ in 0..cases {
        let n = rng.gen_range(2..=6);
        let g = random::graph(rng, n, 0.35);
        let want = count_independent_sets(&g);
        match template_is(&g) {
            Ok((lfp, fo)) => {
                compare(c, &format!("is lfp\n{}", g.to_text()), count_of(&lfp), want);
                compare(c, &format!("is fo\n{}", g.to_text()), count_of(&fo), want);
            }
            Err(e) => c.check(false, || e.to_string()),
        }
    }
}

fn dnf(c: &mut Cases, rng: &mut ChaCha8Rng, cases: usize) {
    for _ in 0..cases {
        let d = random::dnf(rng, 4, 3);
        match compile_dnf(&d) {
            Ok(i) => compare(c, &format!("dnf\n{}", d.to_text()), count_of(&i), count_dnf_models(&d)),
            Err(e) => c.check(false, || e.to_string()),
        }
    }
}

fn census(c: &mut Cases, rng: &mut ChaCha8Rng, cases: usize) {
    let mut nfas = vec![random::duplicate_path_nfa()];
    nfas.extend((1..cases).map(|_| random::nfa(rng, 4, 4)));
    for a in nfas {
        match template_census(&a) {
            Ok(i) => compare(c, &format!("census\n{}", a.to_text()), count_of(&i), count_accepted_words(&a)),
            Err(e) => c.check(false, || e.to_string()),
        }
    }
}

fn sinks(c: &mut Cases, rng: &mut ChaCha8Rng, cases: usize) {
    for _ in 0..cases {
        let n = rng.gen_range(1..=6);
        let g = random::graph(rng, n, 0.3);
        let g = match g.with_source(rng.gen_range(0..n)) {
            Ok(g) => g,
            Err(e) => return c.check(false, || e.to_string()),
        };
        match template_sinks(&g) {
            Ok(i) => compare(c, &format!("sinks\n{}", g.to_text()), count_of(&i), count_reachable_sinks(&g)),
            Err(e) => c.check(false, || e.to_string()),
        }
    }
}

const BETA: &str = "lfp f(X:1) = (Sum Y:1. [Y = X] * $Y * f(Y)) + [X(min)] in f(B)";
const ZETA: &str = "lfp f(X:1) = Sum Y:1. [Y = X] * $Y * f(Y) in f(B)";
const STRICT: [&str; 2] = [
    "lfp f(X:1) = [true] + Sum Y:1. [(forall v. Y(v) <-> X(v) | v = min) & exists v. !X(v) & Y(v)] * $Y * f(Y) in f(B)",
    "lfp f(X:1) = $X + Sum Y:1. [(forall v. Y(v) <-> X(v) | true) & exists v. !X(v) & Y(v)] * $Y * f(Y) in f(B)",
];

fn verdict(text: &str, n: u32, b: RelationValue) -> Result<bool, String> {
    let f = parse_qformula_with(text, &[("B", 1)]).map_err(|e| e.to_string())?;
    let s = Structure::new(n).map_err(|e| e.to_string())?;
    detect_infinite(&f, &s, &Assignment::new().with_so("B", b)).map_err(|e| e.to_string())
}

fn detector(c: &mut Cases, rng: &mut ChaCha8Rng, cases: usize) {
    let one = |n: u32, mask: u64| RelationValue::from_mask(n, 1, mask).expect("small");
    c.check(verdict(BETA, 1, one(1, 1)) == Ok(true), || "beta with B = {0}".into());
    c.check(verdict(ZETA, 1, one(1, 1)) == Ok(false), || "zeta".into());
    for text in STRICT {
        for n in 1..=2 {
            for mask in 0..1u64 << n {
                c.check(verdict(text, n, one(n, mask)) == Ok(false), || format!("{text} at {mask:b}"));
            }
        }
    }
    for _ in 0..cases {
        let r = random::restricted_recursion(rng);
        let n = rng.gen_range(1..=2);
        let b = one(n, rng.gen_range(0..1u64 << n));
        let v = verdict(&r.text, n, b.clone());
        let capped = parse_qformula_with(&r.text, &[("B", 1)]).map(|f| {
            let s = Structure::new(n).expect("small");
            evaluate(&f, &s, &Assignment::new().with_so("B", b), &FunEnv::new(), LfpPolicy::Capped(200))
        });
        let grows = match capped {
            Ok(Err(ExplError::Diverged { .. })) => Ok(true),
            Ok(Ok(_)) => Ok(false),
            Ok(Err(e)) => Err(e.to_string()),
            Err(e) => Err(e.to_string()),
        };
        c.check(v.is_ok() && v == grows, || format!("{}: detector {v:?}, capped {grows:?}", r.text));
    }
}

fn monotonicity(c: &mut Cases, rng: &mut ChaCha8Rng, cases: usize) {
    for _ in 0..cases {
        let n = rng.gen_range(1..=3);
        let s = gen::marked_graph(rng, n);
        let asg = gen::assignment(rng, n);
        let (h, g) = gen::nested_tables(rng, n);
        let q = gen::quantitative(rng, 4);
        let env = |t| FunEnv::from([("f".to_string(), t)]);
        let small = expl(&q, &s, &asg, &env(h));
        let large = expl(&q, &s, &asg, &env(g));
        let ok = matches!((&small, &large), (Ok(a), Ok(b)) if a.is_subset(b));
        c.check(ok, || format!("{q}: {small:?} not within {large:?}"));
    }
}

fn fastpath(c: &mut Cases, rng: &mut ChaCha8Rng, cases: usize) {
    for i in 0..cases {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=2);
        let s = gen::marked_graph(rng, n);
        let extend = i % 2 == 1;
        let phi = gen::shaped(rng, k, extend);
        let asg = Assignment::new().with_so("X", gen::relation(rng, n, k));
        let witnesses: Result<Vec<RelationValue>, String> = enumerate_relations(n, k)
            .map_err(|e| e.to_string())
            .and_then(|all| {
                all.filter_map(|r| match eval_bool(&phi, &s, &asg.clone().with_so("Y", r.clone())) {
                    Ok(true) => Some(Ok(r)),
                    Ok(false) => None,
                    Err(e) => Some(Err(e.to_string())),
                })
                .collect()
            });
        let fast = if recognize_extend(&phi).is_some() {
            Some(unique_extend(&phi, &s, &asg))
        } else if !extend {
            recognize_define(&phi).map(|_| unique_define(&phi, &s, &asg))
        } else {
            None
        };
        let ok = match (fast, &witnesses) {
            (Some(Ok(got)), Ok(w)) => w.len() <= 1 && got.as_ref() == w.first(),
            _ => false,
        };
        c.check(ok, || format!("{phi}: shortcut disagrees with {witnesses:?}"));
    }
}

fn machine_suite(c: &mut Cases) {
    for (m, n) in [
        (machines::deterministic(), 12),
        (machines::one_branching(), 12),
        (machines::two_branchings(), 15),
    ] {
        let want = tot_count(&m, "", 64).map_err(|e| e.to_string());
        let got = Structure::new(n)
            .map_err(|e| e.to_string())
            .and_then(|s| compile_tm_to_tot(&m, &s, 1).map_err(|e| e.to_string()))
            .and_then(|t| {
                evaluate(&t.formula, &t.structure, &t.assignment, &FunEnv::new(), LfpPolicy::Auto)
                    .map_err(|e| e.to_string())
            })
            .map(|e| e.value.count());
        c.check(
            matches!((&got, &want), (Ok(Count::Finite(a)), Ok(b)) if a == b),
            || format!("branchings: {got:?} vs {want:?}"),
        );
    }
    let span = run_tree(&machines::figure2_transducer(), "", 64).map(|s| s.span());
    c.check(span == Ok(1), || format!("transducer span {span:?}"));
}
