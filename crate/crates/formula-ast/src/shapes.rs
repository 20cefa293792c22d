//! Syntactic shapes that pin down a second-order variable uniquely.

use crate::ast::{BoolFormula as B, Name};

/// `forall ys. Y(ys) <-> chi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Define {
    pub defined: Name,
    pub vars: Vec<Name>,
    pub chi: B,
}

/// `forall ys. Y(ys) <-> X(ys) | psi`, optionally with the strictness
/// witness `exists zs. !X(zs) & Y(zs)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extend {
    pub base: Name,
    pub extended: Name,
    pub vars: Vec<Name>,
    pub psi: B,
    pub strict: bool,
}

fn app_parts(f: &B) -> Option<(&Name, &[Name])> {
    match f {
        B::RelApp(r, args) | B::SOApp(r, args) => Some((r, args)),
        _ => None,
    }
}

/// Peels `forall y1 ... yk` and returns the variables and the matrix.
fn peel_forall(f: &B) -> (Vec<Name>, &B) {
    let mut vars = Vec::new();
    let mut cur = f;
    while let B::ForallFO(y, body) = cur {
        vars.push(y.clone());
        cur = body;
    }
    (vars, cur)
}

fn peel_exists(f: &B) -> (Vec<Name>, &B) {
    let mut vars = Vec::new();
    let mut cur = f;
    while let B::ExistsFO(y, body) = cur {
        vars.push(y.clone());
        cur = body;
    }
    (vars, cur)
}

fn distinct(vars: &[Name]) -> bool {
    vars.iter()
        .enumerate()
        .all(|(i, v)| !vars[..i].contains(v))
}

/// `forall ys. Y(ys) <-> rhs` with Y applied to exactly `ys`.
fn biconditional(f: &B) -> Option<(Name, Vec<Name>, &B)> {
    let (vars, matrix) = peel_forall(f);
    if vars.is_empty() || !distinct(&vars) {
        return None;
    }
    let B::Iff(lhs, rhs) = matrix else {
        return None;
    };
    let (y, args) = app_parts(lhs)?;
    if args != vars.as_slice() {
        return None;
    }
    Some((y.clone(), vars, rhs))
}

fn non_strict_extend(f: &B) -> Option<Extend> {
    let (y, vars, rhs) = biconditional(f)?;
    let disjuncts = rhs.disjuncts();
    let pos = disjuncts.iter().position(|d| {
        app_parts(d).is_some_and(|(x, args)| *x != y && args == vars.as_slice())
    })?;
    let base = app_parts(disjuncts[pos]).expect("checked").0.clone();
    let rest: Vec<B> = disjuncts
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pos)
        .map(|(_, d)| (*d).clone())
        .collect();
    let psi = if rest.is_empty() { B::False } else { B::any(rest) };
    if psi.mentions_relation(&y) {
        return None;
    }
    Some(Extend {
        base,
        extended: y,
        vars,
        psi,
        strict: false,
    })
}

/// `exists zs. !X(zs) & Y(zs)` in either conjunct order.
fn is_witness(f: &B, x: &str, y: &str, k: usize) -> bool {
    let (vars, matrix) = peel_exists(f);
    if vars.len() != k || !distinct(&vars) {
        return false;
    }
    let B::And(a, b) = matrix else {
        return false;
    };
    let check = |neg: &B, pos: &B| {
        let B::Not(inner) = neg else { return false };
        let ok_x = app_parts(inner).is_some_and(|(r, args)| r == x && args == vars.as_slice());
        let ok_y = app_parts(pos).is_some_and(|(r, args)| r == y && args == vars.as_slice());
        ok_x && ok_y
    };
    check(a, b) || check(b, a)
}

/// Recognizes the (strict) extension shape.
pub fn recognize_extend(phi: &B) -> Option<Extend> {
    if let Some(e) = non_strict_extend(phi) {
        return Some(e);
    }
    let B::And(a, b) = phi else {
        return None;
    };
    for (ext, wit) in [(a, b), (b, a)] {
        if let Some(mut e) = non_strict_extend(ext) {
            if is_witness(wit, &e.base, &e.extended, e.vars.len()) {
                e.strict = true;
                return Some(e);
            }
        }
    }
    None
}

/// Recognizes the definition shape. Formulas of extension shape are
/// reported by [`recognize_extend`] only.
pub fn recognize_define(phi: &B) -> Option<Define> {
    if recognize_extend(phi).is_some() {
        return None;
    }
    let (y, vars, chi) = biconditional(phi)?;
    if chi.mentions_relation(&y) {
        return None;
    }
    Some(Define {
        defined: y,
        vars,
        chi: chi.clone(),
    })
}

impl Define {
    pub fn to_formula(&self) -> B {
        let head = B::SOApp(self.defined.clone(), self.vars.clone());
        B::forall_all(&self.vars, head.iff(self.chi.clone()))
    }
}

impl Extend {
    pub fn to_formula(&self) -> B {
        let head = B::SOApp(self.extended.clone(), self.vars.clone());
        let base = B::SOApp(self.base.clone(), self.vars.clone());
        let rhs = match &self.psi {
            B::False => base.clone(),
            psi => base.clone().or(psi.clone()),
        };
        let ext = B::forall_all(&self.vars, head.clone().iff(rhs));
        if self.strict {
            ext.and(B::exists_all(&self.vars, base.not().and(head)))
        } else {
            ext
        }
    }
}
