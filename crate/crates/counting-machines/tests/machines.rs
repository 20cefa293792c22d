use counting_machines::machines::*;
use counting_machines::*;

const CLOCK: usize = 64;

#[test]
fn deterministic_accepting_run_has_the_empty_output() {
    let m = parse_machine("state q0 qF\ninit q0\naccept qF\ntrans q0,*,* -> qF,*,S,S\n").unwrap();
    let s = run_tree(&m, "", CLOCK).unwrap();
    assert_eq!((s.acc(), s.tot(), s.span()), (1, Some(0), 1));
    assert!(s.outputs.contains(""));
    assert_eq!(tot_count(&m, "0101", CLOCK).unwrap(), 0);
}

#[test]
fn duplicate_outputs_collapse() {
    let m = parse_machine(
        "transducer\nstate q0 qF\ninit q0\naccept qF\ntrans q0,*,* -> qF,*,S,S,0 | qF,1,S,S,0\n",
    )
    .unwrap();
    let s = run_tree(&m, "", CLOCK).unwrap();
    assert_eq!((s.acc(), s.tot(), s.span()), (2, Some(1), 1));
}

#[test]
fn figure_two_transducer() {
    let s = run_tree(&figure2_transducer(), "", CLOCK).unwrap();
    assert_eq!(s.acc(), 3);
    assert_eq!(s.rejecting_paths, 1);
    assert_eq!(s.tot(), Some(3));
    assert_eq!(s.span(), 1);
    assert_eq!(s.outputs.iter().next().unwrap(), "01");
}

#[test]
fn full_trees() {
    for d in 0..=8 {
        assert_eq!(tot_count(&full_tree(d), "", CLOCK).unwrap(), (1 << d) - 1);
    }
}

#[test]
fn dnf_machine_counts_models() {
    // (x1 & x3) | (!x2 & x3): 101, 111, 001.
    let m = dnf_machine(3, &[vec![1, 3], vec![-2, 3]]);
    assert_eq!(tot_count(&m, "", CLOCK).unwrap(), 3);
    assert_eq!(tot_count(&dnf_machine(1, &[vec![1]]), "", CLOCK).unwrap(), 1);
    assert_eq!(tot_count(&dnf_machine(2, &[vec![1, -1]]), "", CLOCK).unwrap(), 0);
    assert_eq!(tot_count(&dnf_machine(2, &[vec![1], vec![-1]]), "", CLOCK).unwrap(), 4);
}

#[test]
fn toy_machines() {
    assert_eq!(tot_count(&deterministic(), "", CLOCK).unwrap(), 0);
    assert_eq!(tot_count(&one_branching(), "", CLOCK).unwrap(), 1);
    assert_eq!(tot_count(&two_branchings(), "", CLOCK).unwrap(), 2);
    assert!(deterministic().is_deterministic());
    for m in [deterministic(), one_branching(), two_branchings(), figure2_transducer()] {
        assert!(m.ignores_input());
    }
}

#[test]
fn left_moves_clamp() {
    let m = parse_machine(
        "state q0 q1 qF\ninit q0\naccept qF\ntrans q0,*,_ -> q1,1,L,L\ntrans q1,*,1 -> qF,*,S,S\n",
    )
    .unwrap();
    assert_eq!(run_tree(&m, "", CLOCK).unwrap().acc(), 1);
}

#[test]
fn input_is_read() {
    let m = parse_machine(
        "state q0 qF\ninit q0\naccept qF\ntrans q0,0,* -> q0,*,R,S\ntrans q0,_,* -> qF,*,S,S\n",
    )
    .unwrap();
    assert_eq!(run_tree(&m, "000", CLOCK).unwrap().acc(), 1);
    assert_eq!(run_tree(&m, "010", CLOCK).unwrap().acc(), 0);
    assert!(!m.ignores_input());
    assert!(matches!(run_tree(&m, "0a", CLOCK), Err(MachineError::BadInput('a'))));
}

#[test]
fn clock_cuts_paths() {
    let looping = parse_machine("state q0 qF\ninit q0\naccept qF\ntrans q0,*,* -> q0,*,S,R\n").unwrap();
    let s = run_tree(&looping, "", 10).unwrap();
    assert!(s.clock_exceeded);
    assert_eq!((s.total_paths, s.truncated_paths, s.max_depth), (0, 1, 10));
    assert_eq!(tot_count(&looping, "", 10), Err(MachineError::ClockExceeded(10)));
    assert_eq!(run_tree(&looping, "", 0), Err(MachineError::ZeroClock));
    let s = run_tree(&full_tree(4), "", 3).unwrap();
    assert_eq!(s.truncated_paths, 8);
}

#[test]
fn malformed_specs() {
    let head = "state q0 qF\ninit q0\naccept qF\n";
    let bad = [
        "trans q0,*,* -> qF,*,S,S | qF,0,S,S | qF,1,S,S",
        "trans q0,*,* -> qF,*,S,S,1",
        "trans q0,*,* -> qX,*,S,S",
        "trans q0,2,* -> qF,*,S,S",
        "trans q0,*,* -> qF,*,S,U",
        "trans qF,*,* -> q0,*,S,S",
        "trans q0,*,0 -> qF,*,S,S\ntrans q0,1,* -> qF,*,S,S",
        "trans q0,*,*",
        "halt q0",
    ];
    for b in bad {
        assert!(parse_machine(&format!("{head}{b}\n")).is_err(), "{b}");
    }
    assert_eq!(parse_machine("state q0\naccept q0\n"), Err(MachineError::Missing("init")));
}

#[test]
fn text_round_trip() {
    for m in [figure2_transducer(), two_branchings(), dnf_machine(3, &[vec![1, 3], vec![-2, 3]])] {
        assert_eq!(parse_machine(&m.to_text()).unwrap(), m);
    }
}
