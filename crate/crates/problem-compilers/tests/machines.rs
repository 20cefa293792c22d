use bool_semantics::Assignment;
use counting_machines::{machines, tot_count, MachineSpec};
use expl_semantics::{Count, FunEnv};
use fixpoint_engine::{evaluate, LfpPolicy};
use formula_ast::{classify_fragment, FragmentTag};
use problem_compilers::{compile_tm_to_tot, CompileError};
use structure_core::Structure;

fn branchings(m: &MachineSpec, n: u32) -> (Count, Count) {
    let c = compile_tm_to_tot(m, &Structure::new(n).unwrap(), 1).unwrap();
    let open = evaluate(&c.formula, &c.structure, &c.assignment, &FunEnv::new(), LfpPolicy::Auto).unwrap();
    let closed = evaluate(&c.closed, &c.structure, &Assignment::new(), &FunEnv::new(), LfpPolicy::Auto).unwrap();
    (open.value.count(), closed.value.count())
}

#[test]
fn deterministic_machine_has_no_branchings() {
    let m = machines::deterministic();
    assert_eq!(tot_count(&m, "", 20).unwrap(), 0);
    assert_eq!(branchings(&m, 12), (Count::Finite(0), Count::Finite(0)));
}

#[test]
fn one_branching() {
    let m = machines::one_branching();
    assert_eq!(branchings(&m, 12), (Count::Finite(1), Count::Finite(1)));
}

#[test]
fn two_branchings() {
    let m = machines::two_branchings();
    assert_eq!(tot_count(&m, "", 20).unwrap(), 2);
    assert_eq!(branchings(&m, 15), (Count::Finite(2), Count::Finite(2)));
}

#[test]
fn formula_is_in_the_fixed_point_fragment() {
    let c = compile_tm_to_tot(&machines::one_branching(), &Structure::new(12).unwrap(), 1).unwrap();
    assert_eq!(classify_fragment(&c.formula), FragmentTag::RsoR_SsoR_LFP);
}

#[test]
fn size_preconditions() {
    let m = machines::two_branchings();
    assert!(matches!(
        compile_tm_to_tot(&m, &Structure::new(14).unwrap(), 1),
        Err(CompileError::Scale(_))
    ));
    assert!(compile_tm_to_tot(&m, &Structure::new(4).unwrap(), 2).is_ok());
    assert!(matches!(
        compile_tm_to_tot(&m, &Structure::new(15).unwrap(), 0),
        Err(CompileError::Invalid(_))
    ));
}

#[test]
fn small_dnf_machine() {
    let m = machines::dnf_machine(2, &[vec![1]]);
    let n = (3 + 3 * m.states.len() as u32).max(5);
    let tot = tot_count(&m, "", 40).unwrap();
    assert_eq!(branchings(&m, n), (Count::Finite(tot), Count::Finite(tot)));
}
