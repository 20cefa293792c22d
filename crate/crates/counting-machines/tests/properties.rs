//! Counts against a recursive re-simulation and brute-force model counting.

use counting_machines::machines::dnf_machine;
use counting_machines::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_machine(rng: &mut ChaCha8Rng) -> MachineSpec {
    let states = rng.gen_range(1..=3);
    let mut text = String::from("transducer\nstate");
    for q in 0..states {
        text.push_str(&format!(" q{q}"));
    }
    text.push_str(" qF\ninit q0\naccept qF\n");
    let syms = ['0', '1', '_'];
    let moves = ['L', 'S', 'R'];
    for q in 0..states {
        for a in syms {
            for b in syms {
                let arity = rng.gen_range(0..=2);
                if arity == 0 {
                    continue;
                }
                let alts: Vec<String> = (0..arity)
                    .map(|_| {
                        let next = rng.gen_range(0..=states);
                        let next = if next == states { "qF".to_string() } else { format!("q{next}") };
                        let mut s = format!(
                            "{next},{},{},{}",
                            ['0', '1', '_', '*'][rng.gen_range(0..4)],
                            moves[rng.gen_range(0..3)],
                            moves[rng.gen_range(0..3)]
                        );
                        if rng.gen_bool(0.5) {
                            s.push_str(if rng.gen_bool(0.5) { ",1" } else { ",0" });
                        }
                        s
                    })
                    .collect();
                text.push_str(&format!("trans q{q},{a},{b} -> {}\n", alts.join(" | ")));
            }
        }
    }
    parse_machine(&text).unwrap()
}

/// (accepting, rejecting, truncated, outputs) by plain recursion.
fn recount(
    m: &MachineSpec,
    input: &[Sym],
    state: usize,
    heads: (usize, usize),
    work: &mut Vec<Sym>,
    out: &mut String,
    left: usize,
    acc: &mut (u64, u64, u64, std::collections::BTreeSet<String>),
) {
    let a = *input.get(heads.0).unwrap_or(&Sym::Blank);
    if work.len() <= heads.1 {
        work.resize(heads.1 + 1, Sym::Blank);
    }
    let b = work[heads.1];
    let acts = if state == m.accept { Vec::new() } else { m.actions(state, a, b).to_vec() };
    if acts.is_empty() {
        if state == m.accept {
            acc.0 += 1;
            acc.3.insert(out.clone());
        } else {
            acc.1 += 1;
        }
        return;
    }
    if left == 0 {
        acc.2 += 1;
        return;
    }
    for act in acts {
        let saved = work[heads.1];
        if let Some(w) = act.write {
            work[heads.1] = w;
        }
        if let Some(bit) = act.output {
            out.push(if bit { '1' } else { '0' });
        }
        let h = (act.input_move.apply(heads.0), act.work_move.apply(heads.1));
        recount(m, input, act.next, h, work, out, left - 1, acc);
        if act.output.is_some() {
            out.pop();
        }
        work[heads.1] = saved;
    }
}

fn models(vars: usize, clauses: &[Vec<i32>]) -> u64 {
    (0..1u32 << vars)
        .filter(|bits| {
            clauses.iter().any(|c| {
                c.iter().all(|&l| {
                    let v = (bits >> (l.unsigned_abs() - 1)) & 1 == 1;
                    v == (l > 0)
                })
            })
        })
        .count() as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn counts_match_recursive_simulation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_machine(&mut rng);
        let input: String = (0..rng.gen_range(0..4)).map(|_| if rng.gen_bool(0.5) { '1' } else { '0' }).collect();
        let clock = rng.gen_range(1..=8);
        let s = run_tree(&m, &input, clock).unwrap();
        let syms: Vec<Sym> = input.chars().map(|c| Sym::from_char(c).unwrap()).collect();
        let mut acc = (0, 0, 0, Default::default());
        recount(&m, &syms, m.init, (0, 0), &mut Vec::new(), &mut String::new(), clock, &mut acc);
        prop_assert_eq!(s.accepting_paths, acc.0);
        prop_assert_eq!(s.rejecting_paths, acc.1);
        prop_assert_eq!(s.truncated_paths, acc.2);
        prop_assert_eq!(&s.outputs, &acc.3);

        prop_assert_eq!(s.accepting_paths + s.rejecting_paths, s.total_paths);
        prop_assert!(s.span() <= s.acc());
        prop_assert!(s.outputs.is_empty() || s.acc() >= 1);
        prop_assert_eq!(s.clock_exceeded, s.truncated_paths > 0);
        if !s.clock_exceeded {
            prop_assert_eq!(s.total_paths - 1, s.branchings);
            prop_assert_eq!(tot_count(&m, &input, clock).unwrap(), s.branchings);
            prop_assert_eq!(run_tree(&m, &input, 2 * clock).unwrap(), s);
        }
    }

    #[test]
    fn dnf_machine_matches_model_counting(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vars = rng.gen_range(1..=5);
        let clauses: Vec<Vec<i32>> = (0..rng.gen_range(1..=4))
            .map(|_| {
                (0..rng.gen_range(1..=3))
                    .map(|_| {
                        let v = rng.gen_range(1..=vars as i32);
                        if rng.gen_bool(0.5) { v } else { -v }
                    })
                    .collect()
            })
            .collect();
        let m = dnf_machine(vars, &clauses);
        prop_assert_eq!(tot_count(&m, "", 4 * vars + 8).unwrap(), models(vars, &clauses));
    }
}
