//! Evaluated counts against brute force on random instances.

use expl_semantics::{Count, FunEnv};
use fixpoint_engine::{evaluate, LfpPolicy};
use problem_compilers::oracle::*;
use problem_compilers::random;
use problem_compilers::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn count(i: &Instance) -> u64 {
    let e = evaluate(&i.formula, &i.structure, &i.assignment, &FunEnv::new(), LfpPolicy::Auto).unwrap();
    assert_eq!(e.stats.length_violations, 0);
    match e.value.count() {
        Count::Finite(c) => c,
        Count::Infinite => panic!("infinite count"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cliques_match(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=5);
        let g = random::graph(&mut rng, n, 0.6);
        prop_assert_eq!(count(&template_clique(&g).unwrap()), count_cliques(&g));
    }

    #[test]
    fn sinks_match(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=5);
        let g = random::graph(&mut rng, n, 0.3).with_source(rng.gen_range(0..n)).unwrap();
        prop_assert_eq!(count(&template_sinks(&g).unwrap()), count_reachable_sinks(&g));
    }

    #[test]
    fn independent_sets_match(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=5);
        let g = random::graph(&mut rng, n, 0.4);
        let (lfp, fo) = template_is(&g).unwrap();
        let expected = count_independent_sets(&g);
        prop_assert_eq!(count(&lfp), expected);
        prop_assert_eq!(count(&fo), expected);
    }

    #[test]
    fn dnf_models_match(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random::dnf(&mut rng, 4, 3);
        prop_assert_eq!(count(&compile_dnf(&d).unwrap()), count_dnf_models(&d));
    }

    #[test]
    fn census_matches(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nfa = random::nfa(&mut rng, 4, 4);
        prop_assert_eq!(count(&template_census(&nfa).unwrap()), count_accepted_words(&nfa));
    }

    #[test]
    fn specs_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=6);
        let g = random::graph(&mut rng, n, 0.4).with_source(0).unwrap();
        prop_assert_eq!(parse_graph(&g.to_text()).unwrap(), g);
        let d = random::dnf(&mut rng, 5, 4);
        prop_assert_eq!(parse_dnf(&d.to_text()).unwrap(), d);
        let a = random::nfa(&mut rng, 4, 5);
        prop_assert_eq!(parse_nfa(&a.to_text()).unwrap(), a);
    }
}

#[test]
fn all_graphs_on_three_vertices() {
    let graphs = random::all_graphs_on_three();
    assert_eq!(graphs.len(), 64);
    for g in graphs {
        assert_eq!(count(&template_clique(&g).unwrap()), count_cliques(&g), "{}", g.to_text());
    }
}
