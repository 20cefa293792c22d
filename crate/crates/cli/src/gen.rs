//! Seeded generators for the property suites.

use bool_semantics::Assignment;
use expl_semantics::{ExplValue, FunArg, FunDomain, FunTable};
use formula_ast::{BoolFormula as B, QFormula as Q};
use rand::Rng;
use structure_core::{tuple_space, RelationValue, Structure, SymbolString};

const FO: [&str; 2] = ["x", "y"];
const VARS: [&str; 3] = ["x", "y", "z"];

/// A graph `E` with a unary mark `U`.
pub fn marked_graph(rng: &mut impl Rng, n: u32) -> Structure {
    let edges: Vec<[u32; 2]> = (0..n)
        .flat_map(|a| (0..n).map(move |b| [a, b]))
        .filter(|_| rng.gen_bool(0.4))
        .collect();
    let marks: Vec<[u32; 1]> = (0..n).filter(|_| rng.gen_bool(0.5)).map(|a| [a]).collect();
    Structure::new(n)
        .and_then(|s| s.with_relation("E", 2, edges))
        .and_then(|s| s.with_relation("U", 1, marks))
        .expect("relations fit the universe")
}

pub fn relation(rng: &mut impl Rng, n: u32, k: usize) -> RelationValue {
    let space = tuple_space(n, k).expect("small");
    RelationValue::from_mask(n, k, rng.gen_range(0..1u64 << space)).expect("small")
}

/// Values for `x`, `y` and a unary `X`.
pub fn assignment(rng: &mut impl Rng, n: u32) -> Assignment {
    let mut asg = Assignment::new().with_so("X", relation(rng, n, 1));
    for x in FO {
        asg = asg.with_fo(x, rng.gen_range(0..n));
    }
    asg
}

fn atom(rng: &mut impl Rng, fo: &[String]) -> B {
    let x = &fo[rng.gen_range(0..fo.len())];
    let y = &fo[rng.gen_range(0..fo.len())];
    match rng.gen_range(0..6) {
        0 => B::rel("E", &[x, y]),
        1 => B::leq(x, y),
        2 => B::so("X", std::slice::from_ref(x)),
        3 => B::exists("w", B::rel("E", &[x, "w"])),
        4 => B::so("X", std::slice::from_ref(x)).not(),
        _ => B::eq(x, y).not(),
    }
}

/// A fixed-point-free quantitative formula over `E`, `X`, `x`, `y` that
/// may apply a unary function `f`.
pub fn quantitative(rng: &mut impl Rng, depth: u32) -> Q {
    fn go(rng: &mut impl Rng, depth: u32, fo: &mut Vec<String>, next: &mut usize) -> Q {
        let pick = |rng: &mut dyn rand::RngCore, fo: &[String]| fo[rng.gen_range(0..fo.len())].clone();
        if depth == 0 {
            return match rng.gen_range(0..5) {
                0 => Q::FOVar(pick(rng, fo)),
                1 => Q::SOVar("X".into()),
                2 | 3 => Q::FunAppFO("f".into(), vec![pick(rng, fo)]),
                _ => Q::Bool(atom(rng, fo)),
            };
        }
        let d = depth - 1;
        match rng.gen_range(0..7) {
            0 | 1 => go(rng, d, fo, next).add(go(rng, d, fo, next)),
            2 | 3 => go(rng, d, fo, next).mul(go(rng, d, fo, next)),
            4 => {
                *next += 1;
                let v = format!("v{next}");
                fo.push(v.clone());
                let body = go(rng, d, fo, next);
                fo.pop();
                Q::sum_fo(&v, body)
            }
            _ => go(rng, 0, fo, next),
        }
    }
    let mut fo: Vec<String> = FO.iter().map(|s| s.to_string()).collect();
    go(rng, depth, &mut fo, &mut 0)
}

fn word(rng: &mut impl Rng, n: u32) -> SymbolString {
    let len = rng.gen_range(0..3);
    let letters: Vec<u32> = (0..len).map(|_| rng.gen_range(0..n)).collect();
    SymbolString::elems(&letters)
}

/// Two tables for a unary `f` with `h <= g` pointwise.
pub fn nested_tables(rng: &mut impl Rng, n: u32) -> (FunTable, FunTable) {
    let mut h = FunTable::new(FunDomain::Fo(1));
    let mut g = FunTable::new(FunDomain::Fo(1));
    for a in 0..n {
        let small: Vec<SymbolString> = (0..rng.gen_range(0..3)).map(|_| word(rng, n)).collect();
        let mut big = small.clone();
        big.extend((0..rng.gen_range(0..3)).map(|_| word(rng, n)));
        h.set(FunArg::Fo(vec![a]), ExplValue::from_strings(small)).expect("domain matches");
        g.set(FunArg::Fo(vec![a]), ExplValue::from_strings(big)).expect("domain matches");
    }
    (h, g)
}

fn matrix(rng: &mut impl Rng, depth: u32, k: usize) -> B {
    let var = |rng: &mut dyn rand::RngCore| VARS[rng.gen_range(0..VARS.len())].to_string();
    if depth == 0 {
        return match rng.gen_range(0..5) {
            0 => B::eq(&var(rng), &var(rng)),
            1 => B::leq(&var(rng), &var(rng)),
            2 | 3 => B::so("X", &(0..k).map(|_| var(rng)).collect::<Vec<_>>()),
            _ => B::rel("E", &[&var(rng), &var(rng)]),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..7) {
        0 => matrix(rng, d, k).not(),
        1 => matrix(rng, d, k).and(matrix(rng, d, k)),
        2 => matrix(rng, d, k).or(matrix(rng, d, k)),
        3 => B::forall(&var(rng), matrix(rng, d, k)),
        4 => B::exists(&var(rng), matrix(rng, d, k)),
        _ => matrix(rng, 0, k),
    }
}

/// `forall vs. Y(vs) <-> chi` or, when `extend`, `forall vs. Y(vs) <-> X(vs)
/// | chi`, possibly with the strictness conjunct; `chi` may mention `X`.
pub fn shaped(rng: &mut impl Rng, k: usize, extend: bool) -> B {
    let vars: Vec<String> = VARS[..k].iter().map(|v| v.to_string()).collect();
    let mut chi = matrix(rng, 2, k);
    for v in chi.free_fo() {
        if !vars.contains(&v) {
            chi = B::exists(&v, chi);
        }
    }
    let head = B::so("Y", &vars);
    if !extend {
        return B::forall_all(&vars, head.iff(chi));
    }
    let base = B::so("X", &vars);
    let f = B::forall_all(&vars, head.clone().iff(base.clone().or(chi)));
    if rng.gen() {
        f.and(B::exists_all(&vars, base.not().and(head)))
    } else {
        f
    }
}
