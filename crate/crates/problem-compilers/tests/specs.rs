use problem_compilers::*;

#[test]
fn graph_files() {
    let g = parse_graph("# a path\nvertices 3\nsource 0\nedge 0 1\nedge 1 2\n").unwrap();
    assert_eq!(g.n, 3);
    assert_eq!(g.source, Some(0));
    assert_eq!(g.edges.len(), 2);
    assert!(matches!(parse_graph("edge 0 1"), Err(CompileError::Syntax { .. })));
    assert!(matches!(parse_graph("vertices 2\nedge 0 5"), Err(CompileError::Invalid(_))));
    assert!(matches!(parse_graph("vertices 2\nedge 0"), Err(CompileError::Syntax { line: 2, .. })));
    assert!(matches!(parse_graph("vertices 2\nloop 0"), Err(CompileError::Syntax { line: 2, .. })));
}

#[test]
fn dnf_files() {
    let d = parse_dnf("vars 3\n1 3\n-2 3\n").unwrap();
    assert_eq!(d.clauses, vec![vec![1, 3], vec![-2, 3]]);
    assert!(parse_dnf("1 2").is_err());
    assert!(parse_dnf("vars 2\n1 x").is_err());
    assert!(parse_dnf("vars 2\n0").is_err());
}

#[test]
fn nfa_files() {
    let a = parse_nfa("states 2\nstart 0\nlength 2\naccept 1\nedge 0 0 1\nedge 0 1 1\n").unwrap();
    assert_eq!(a.edges.len(), 2);
    assert!(parse_nfa("states 2\nstart 0\naccept 1").is_err());
    assert!(parse_nfa("states 2\nstart 0\nlength 1\nedge 0 2 1").is_err());
    assert!(parse_nfa("states 2\nstart 3\nlength 1").is_err());
}

#[test]
fn oracle_dispatch() {
    let c4 = GraphSpec::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    assert_eq!(oracle_count(&Problem::IndependentSets(c4.clone())).unwrap(), 7);
    assert_eq!(oracle_count(&Problem::Cliques(c4.symmetrized())).unwrap(), 9);
    let d = DnfSpec::new(3, vec![vec![1, 3], vec![-2, 3]]).unwrap();
    assert_eq!(oracle_count(&Problem::Dnf(d)).unwrap(), 3);
    let m = counting_machines::machines::two_branchings();
    assert_eq!(oracle_count(&Problem::Branchings(m, 50)).unwrap(), 2);
    let big = GraphSpec::new(30, []).unwrap();
    assert!(matches!(oracle_count(&Problem::Cliques(big)), Err(CompileError::Scale(_))));
}
