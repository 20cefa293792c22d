use formula_ast::*;

fn q(text: &str) -> QFormula {
    parse_qformula(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn b_with(text: &str, so: &[(&str, usize)]) -> BoolFormula {
    parse_bool_with(text, so).unwrap_or_else(|e| panic!("{text}: {e}"))
}

#[test]
fn define_shapes() {
    let d = recognize_define(&b_with("forall y. Y(y) <-> E(y,y)", &[("Y", 1)])).unwrap();
    assert_eq!(d.defined, "Y");
    assert_eq!(d.chi, BoolFormula::rel("E", &["y", "y"]));
    assert!(recognize_define(&b_with("exists y. Y(y)", &[("Y", 1)])).is_none());
    let ext = b_with("forall y. Y(y) <-> X(y) | E(y,y)", &[("Y", 1), ("X", 1)]);
    assert!(recognize_define(&ext).is_none());
    assert!(recognize_extend(&ext).is_some());
    // chi mentioning Y is not a definition
    assert!(recognize_define(&b_with("forall y. Y(y) <-> !Y(y)", &[("Y", 1)])).is_none());
}

#[test]
fn extend_shapes() {
    let e = recognize_extend(&b_with("forall y. Y(y) <-> X(y)", &[("Y", 1), ("X", 1)])).unwrap();
    assert_eq!((e.base.as_str(), e.extended.as_str()), ("X", "Y"));
    assert_eq!(e.psi, BoolFormula::False);
    assert!(!e.strict);

    let strict = b_with(
        "(forall y. Y(y) <-> X(y) | y = min) & exists z. !X(z) & Y(z)",
        &[("Y", 1), ("X", 1)],
    );
    let e = recognize_extend(&strict).unwrap();
    assert!(e.strict);
    assert_eq!(recognize_extend(&e.to_formula()).unwrap(), e);

    let mixed = b_with("forall y. Y(y) <-> X(y,y)", &[("Y", 1), ("X", 2)]);
    assert!(recognize_extend(&mixed).is_none());
}

#[test]
fn trivial_classifications() {
    assert_eq!(classify_fragment(&q("[true]")), FragmentTag::SigmaSO_FO_xfree);
    assert_eq!(
        classify_fragment(&q("Sum X:1. [forall x. forall y. (X(x) & X(y) & !(x=y)) -> E(x,y)]")),
        FragmentTag::SigmaSO_FO_xfree
    );
    assert_eq!(
        classify_fragment(&q("Sum X:1. [ExistsR Z:1. Z(min)] * $X")),
        FragmentTag::SigmaSO_SO_xfree
    );
    assert_eq!(classify_fragment(&q("sum y. y")), FragmentTag::General);
}

#[test]
fn logspace_recursion_is_recognized() {
    let sinks = q("lfp f(x) = [forall y. !E(x,y)] * x + sum y. [E(x,y)] * f(y) in f(s)");
    assert_eq!(classify_fragment(&sinks), FragmentTag::RfoSfoFO);
    // second-order letters are not allowed in alpha
    let bad = q("lfp f(x) = $B + sum y. [E(x,y)] * f(y) in f(s)");
    assert_eq!(classify_fragment(&bad), FragmentTag::General);
}

const EXAMPLE_BETA: &str = "lfp f(X:1) = (Sum Y:1. [Y = X] * $Y * f(Y)) + [X(min)] in f(B)";

#[test]
fn restricted_so_recursion_is_recognized() {
    assert_eq!(classify_fragment(&q(EXAMPLE_BETA)), FragmentTag::RsoR_SsoSO);
    let zeta = q("lfp f(X:1) = Sum Y:1. [Y = X] * $Y * f(Y) in f(B)");
    assert_eq!(classify_fragment(&zeta), FragmentTag::RsoR_SsoSO);
    let free = q("lfp f(X:1) = sum y. [X(y)] * (Sum Z:1. f(Z)) in f(B)");
    assert_eq!(classify_fragment(&free), FragmentTag::RsoSsoSO);
}

const STEP0: &str = "(forall v. Y(v) <-> X(v) | v = min) & exists v. !X(v) & Y(v)";
const STEP1: &str = "(forall v. Y(v) <-> X(v) | v = max) & exists v. !X(v) & Y(v)";

#[test]
fn totp_fo_recursion_and_normal_form() {
    let text = format!(
        "lfp f(X:1) = [empty(X)] * $X + [X(min)] * ((Sum Y:1. [{STEP0} @ Y] * f(Y)) + (Sum Y:1. [{STEP1} @ Y] * f(Y)) + [true]) in f(B)"
    );
    let f = q(&text);
    assert_eq!(classify_fragment(&f), FragmentTag::RsoR_SsoR_FO);
    let nf = normalize_totp_fo(&f).unwrap();
    assert_eq!(nf.r(), 2);
    assert_eq!(nf.guards[0].guard, nf.guards[1].guard, "both steps sit under X(min)");
    assert_ne!(nf.guards[0].step, nf.guards[1].step);
    let again = nf.to_lfp("B");
    assert_eq!(classify_fragment(&again), FragmentTag::RsoR_SsoR_FO);
    assert_eq!(normalize_totp_fo(&again).unwrap(), nf);
}

#[test]
fn plain_alpha_normalizes_to_itself() {
    let f = q("lfp f(X:1) = [X(min)] * $X in f(B)");
    let nf = normalize_totp_fo(&f).unwrap();
    assert_eq!(nf.r(), 0);
    assert_eq!(nf.alpha.to_string(), q("[X(min)] * $X").to_string());
}

#[test]
fn complementary_guards_distribute() {
    let text = format!(
        "lfp f(X:1) = [X(max)] * (Sum Y:1. [{STEP0} @ Y] * f(Y)) + [!X(max)] * ([X(min)] * (Sum Y:1. [{STEP1} @ Y] * f(Y)) + [!X(min)] * (Sum Y:1. [{STEP0} @ Y] * f(Y))) in f(B)"
    );
    let f = q(&text);
    let nf = normalize_totp_fo(&f).unwrap();
    assert_eq!(nf.r(), 3, "r = r1 + r2");
    assert_eq!(nf.alpha, QFormula::Bool(BoolFormula::False));
    assert_eq!(classify_fragment(&nf.to_lfp("B")), FragmentTag::RsoR_SsoR_FO);
}

#[test]
fn lfp_totp_template_is_recognized() {
    let text = format!(
        "lfp f(X:1) = [X(max)] + Sum Y:1. [exists u. !X(u)] * $X * ([true] + [{STEP0}] * f(Y)) in f(B)"
    );
    let f = q(&text);
    assert_eq!(classify_fragment(&f), FragmentTag::RsoR_SsoR_LFP);
}

#[test]
fn tags_satisfy_their_own_grammar() {
    for text in [
        "[true]".to_string(),
        EXAMPLE_BETA.to_string(),
        "lfp f(x) = x + sum y. [E(x,y)] * f(y) in f(s)".to_string(),
        "sum y. y".to_string(),
    ] {
        let f = q(&text);
        let tag = classify_fragment(&f);
        assert!(satisfies(&f, tag), "{text}");
        assert!(satisfies(&f, FragmentTag::General));
    }
}
