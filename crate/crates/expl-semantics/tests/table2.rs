use bool_semantics::Assignment;
use expl_semantics::*;
use formula_ast::{parse_qformula, parse_qformula_in, parse_qformula_with, FunKind, QFormula};
use structure_core::{parse_structure, RelationValue, Structure, Symbol, SymbolString};

fn q(text: &str) -> QFormula {
    parse_qformula(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn s(elems: &[u32]) -> SymbolString {
    SymbolString::elems(elems)
}

fn set(words: &[&[u32]]) -> ExplValue {
    ExplValue::from_strings(words.iter().map(|w| s(w)))
}

fn path3() -> Structure {
    parse_structure("universe 3\nrelation E 2 { (0,1) (1,2) }").unwrap()
}

fn none() -> FunEnv {
    FunEnv::new()
}

#[test]
fn worked_concatenation() {
    let left = set(&[&[], &[1], &[2, 3]]);
    let right = set(&[&[], &[2, 3]]);
    let expect = set(&[&[], &[2, 3], &[1], &[1, 2, 3], &[2, 3, 2, 3]]);
    assert_eq!(concat_sets(&left, &right), expect);
}

#[test]
fn concatenation_identities() {
    let x = set(&[&[0], &[1, 2]]);
    assert_eq!(concat_sets(&x, &ExplValue::epsilon()), x);
    assert_eq!(concat_sets(&ExplValue::epsilon(), &x), x);
    assert!(concat_sets(&x, &ExplValue::empty()).is_empty());
    assert!(concat_sets(&ExplValue::Infinite, &ExplValue::empty()).is_empty());
    assert!(concat_sets(&ExplValue::empty(), &ExplValue::Infinite).is_empty());
    assert!(concat_sets(&x, &ExplValue::Infinite).is_infinite());
    assert!(x.clone().union(ExplValue::Infinite).is_infinite());
}

#[test]
fn first_order_variable_row() {
    let asg = Assignment::new().with_fo("x", 2);
    assert_eq!(expl(&q("x"), &path3(), &asg, &none()).unwrap(), set(&[&[2]]));
}

#[test]
fn second_order_variable_row() {
    let r = RelationValue::from_tuples(3, 1, [[1u32]]).unwrap();
    let asg = Assignment::new().with_so("X", r.clone());
    let f = parse_qformula_with("$X", &[("X", 1)]).unwrap();
    let want = ExplValue::singleton(SymbolString::letter(Symbol::Rel(r)));
    assert_eq!(expl(&f, &path3(), &asg, &none()).unwrap(), want);
}

#[test]
fn boolean_row() {
    let st = path3();
    let asg = Assignment::new();
    assert_eq!(expl(&q("[exists x. E(x, x)]"), &st, &asg, &none()).unwrap(), ExplValue::empty());
    assert_eq!(expl(&q("[exists x. E(min, x)]"), &st, &asg, &none()).unwrap(), ExplValue::epsilon());
    assert_eq!(count(&q("[false]"), &st, &asg, &none()).unwrap(), Count::Finite(0));
}

#[test]
fn sum_row_unions() {
    let asg = Assignment::new().with_fo("x", 1);
    assert_eq!(expl(&q("x + x"), &path3(), &asg, &none()).unwrap(), set(&[&[1]]));
    let asg = asg.with_fo("y", 0);
    assert_eq!(expl(&q("x + y"), &path3(), &asg, &none()).unwrap(), set(&[&[0], &[1]]));
}

#[test]
fn product_row_concatenates_and_annihilates() {
    let asg = Assignment::new().with_fo("x", 1).with_fo("y", 2);
    let st = path3();
    assert_eq!(expl(&q("(x + y) * y"), &st, &asg, &none()).unwrap(), set(&[&[1, 2], &[2, 2]]));
    assert!(expl(&q("(x + y) * [false]"), &st, &asg, &none()).unwrap().is_empty());
}

#[test]
fn first_order_sum_row() {
    let st = path3();
    let f = q("sum y. [exists z. E(y, z)] * y");
    assert_eq!(expl(&f, &st, &Assignment::new(), &none()).unwrap(), set(&[&[0], &[1]]));
}

#[test]
fn second_order_sum_row() {
    let st = parse_structure("universe 2").unwrap();
    let f = q("Sum Y:1. $Y");
    let v = expl(&f, &st, &Assignment::new(), &none()).unwrap();
    assert_eq!(v.count(), Count::Finite(4));
    assert!(v.strings().unwrap().iter().all(|w| w.len() == 1 && w.is_relation_only()));
}

#[test]
fn function_application_row() {
    let st = path3();
    let mut t = FunTable::new(FunDomain::Fo(1));
    t.set(FunArg::Fo(vec![1]), set(&[&[0, 0], &[2]])).unwrap();
    let mut env = FunEnv::new();
    env.insert("f".into(), t);
    let with_f = |text: &str| parse_qformula_in(text, &[], &[("f", FunKind::Fo(1))]).unwrap();
    let asg = Assignment::new().with_fo("x", 1);
    assert_eq!(expl(&with_f("x * f(x)"), &st, &asg, &env).unwrap(), set(&[&[1, 0, 0], &[1, 2]]));
    let asg = Assignment::new().with_fo("x", 0);
    assert!(expl(&with_f("f(x)"), &st, &asg, &env).unwrap().is_empty());
}

#[test]
fn clique_counts() {
    let clique = q("Sum X:1. [forall x. forall y. (X(x) & X(y) & !(x=y)) -> E(x,y) @ X]");
    let k3 = parse_structure("universe 3\nrelation E 2 { (0,1) (1,0) (0,2) (2,0) (1,2) (2,1) }").unwrap();
    assert_eq!(count(&clique, &k3, &Assignment::new(), &none()).unwrap(), Count::Finite(8));
    let empty2 = parse_structure("universe 2\nrelation E 2 { }").unwrap();
    assert_eq!(count(&clique, &empty2, &Assignment::new(), &none()).unwrap(), Count::Finite(3));
    let bare = q("Sum X:1. [forall x. forall y. (X(x) & X(y) & !(x=y)) -> E(x,y)]");
    assert_eq!(count(&bare, &k3, &Assignment::new(), &none()).unwrap(), Count::Finite(1));
}

#[test]
fn fixed_points_need_a_handler() {
    let f = q("lfp f(x) = x in f(y)");
    let asg = Assignment::new().with_fo("y", 0);
    assert!(matches!(
        expl(&f, &path3(), &asg, &none()),
        Err(ExplError::LfpNode(_))
    ));
}

#[test]
fn defined_sums_match_enumeration() {
    let st = path3();
    let fast = q("Sum Y:1. [forall v. Y(v) <-> exists w. E(v, w)] * $Y");
    let slow = q("Sum Y:1. [(forall v. Y(v) <-> exists w. E(v, w)) | false] * $Y");
    let mut p = Prepared::new(&fast, &st, &Assignment::new(), &none()).unwrap();
    let a = p.run().unwrap();
    assert_eq!(p.eval.stats.shortcut_sums, 1);
    let mut p = Prepared::new(&slow, &st, &Assignment::new(), &none()).unwrap();
    let b = p.run().unwrap();
    assert_eq!(p.eval.stats.enumerated_sums, 1);
    assert_eq!(a, b);
    assert_eq!(a.count(), Count::Finite(1));
}
