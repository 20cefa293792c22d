use formula_ast::*;

fn q(text: &str) -> QFormula {
    parse_qformula(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn b(text: &str) -> BoolFormula {
    parse_bool(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

#[test]
fn clique_formula_parses_to_so_sum() {
    let f = q("Sum X:1. [forall x. forall y. (X(x) & X(y) & !(x=y)) -> E(x,y)]");
    let QFormula::SumSO(x, 1, body) = &f else {
        panic!("{f:?}")
    };
    assert_eq!(x, "X");
    let QFormula::Bool(BoolFormula::ForallFO(..)) = body.as_ref() else {
        panic!("{body:?}")
    };
    let leaf = &f.bool_leaves()[0];
    assert!(leaf.free_relations().contains("E"));
    assert!(leaf.to_string().contains("X(x)"));
    assert!(f.free_so().contains("E") && !f.free_so().contains("X"));
}

#[test]
fn trivial_parses() {
    assert_eq!(q("[true]"), QFormula::Bool(BoolFormula::True));
    assert_eq!(
        q("sum y. y"),
        QFormula::SumFO("y".into(), Box::new(QFormula::FOVar("y".into())))
    );
}

#[test]
fn numerals_are_rejected() {
    for text in ["3", "[x = 1]", "sum y. 2 * y"] {
        match parse_qformula(text) {
            Err(FormulaError::NumericLiteral { .. }) => {}
            other => panic!("{text}: {other:?}"),
        }
    }
}

#[test]
fn arity_mismatch_is_reported() {
    let err = parse_qformula("Sum X:2. [X(x)]").unwrap_err();
    assert!(matches!(err, FormulaError::ArityMismatch { expected: 2, found: 1, .. }), "{err:?}");
    let err = parse_qformula("lfp f(x) = f(x, x) in f(y)").unwrap_err();
    assert!(matches!(err, FormulaError::ArityMismatch { .. }), "{err:?}");
}

#[test]
fn syntax_errors_have_positions() {
    let err = parse_qformula("[true] +\n  * x").unwrap_err();
    match err {
        FormulaError::Syntax { line, col, .. } => assert_eq!((line, col), (2, 3)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn unknown_function_is_a_scope_error() {
    assert!(matches!(
        parse_qformula("g(x)"),
        Err(FormulaError::Scope { .. })
    ));
}

#[test]
fn negative_fixed_point_is_rejected() {
    assert!(parse_bool("lfpR P(x) = !P(x) in P(y)").is_err());
    assert!(parse_bool("lfpR P(x) = E(x,x) | exists z. P(z) & E(z,x) in P(y)").is_ok());
}

#[test]
fn precedence_and_associativity() {
    let f = q("x + y * z + w");
    let expect = QFormula::fo("x")
        .add(QFormula::fo("y").mul(QFormula::fo("z")))
        .add(QFormula::fo("w"));
    assert_eq!(f, expect);
    assert_eq!(b("E(x,y) -> E(y,x) -> true"), {
        let e = |a: &str, c: &str| BoolFormula::rel("E", &[a, c]);
        e("x", "y").implies(e("y", "x").implies(BoolFormula::True))
    });
}

#[test]
fn underline_sugar_puts_letters_first() {
    let f = parse_qformula_with("[E(x,x) @ X, x]", &[("X", 1)]).unwrap();
    let expect = QFormula::so("X")
        .mul(QFormula::fo("x"))
        .mul(QFormula::Bool(BoolFormula::rel("E", &["x", "x"])));
    assert_eq!(f, expect);
}

#[test]
fn relation_equality_and_emptiness_expand() {
    let f = q("Sum Y:1. [Y = B]");
    let QFormula::SumSO(_, _, body) = f else { panic!() };
    let QFormula::Bool(BoolFormula::ForallFO(v, m)) = *body else { panic!() };
    assert_eq!(
        *m,
        BoolFormula::so("Y", std::slice::from_ref(&v)).iff(BoolFormula::RelApp("B".into(), vec![v.clone()]))
    );
    let g = q("Sum Y:2. [empty(Y)]");
    assert_eq!(g.bool_leaves()[0].free_fo().len(), 0);
}

#[test]
fn min_max_and_tuple_order_expand_to_first_order() {
    for text in [
        "x = min",
        "max != y",
        "E(min, x)",
        "succ(x, y)",
        "succ((x,y), (u,v))",
        "(x, y) < (u, v)",
        "(x, y) = min",
        "(x = y)",
        "x < max",
    ] {
        let f = b(text);
        assert!(f.is_first_order(), "{text}");
        let again = parse_bool(&f.to_string()).unwrap();
        assert_eq!(again, f, "{text}");
    }
}

#[test]
fn formula_length_examples() {
    assert_eq!(formula_length(&q("[forall x. E(x,x)]")), 1);
    assert_eq!(formula_length(&q("x + $X")), 3);
    assert_eq!(formula_length(&q("sum y. [E(y,y)] * y")), 4);
    // ((x * y) + [true]): 1 + 1 + 1, then + 1 + 1
    assert_eq!(formula_length(&q("x * y + [true]")), 5);
}

#[test]
fn printer_round_trips_fixtures() {
    for text in [
        "Sum X:1. [forall x. forall y. (X(x) & X(y) & !(x=y)) -> E(x,y)]",
        "lfp f(x) = [forall y. !E(x,y)] * x + sum y. [E(x,y)] * f(y) in f(s)",
        "lfp f(X:1) = (Sum Y:1. [Y = X] * $Y * f(Y)) + [X(min)] in f(B)",
        "[lfpR P(x,y) = E(x,y) | exists z. P(x,z) & E(z,y) in P(a,b)]",
        "[ExistsR Z:2. ForallR W:1. Z(x,x) <-> W(x)]",
    ] {
        let f = q(text);
        let printed = f.to_string();
        assert_eq!(parse_qformula(&printed).unwrap(), f, "{printed}");
    }
}
