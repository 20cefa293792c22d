//! First-order definitions of the order-derived notions used throughout:
//! minimum, maximum, successor, k-tuple comparisons and relation equality.

use std::collections::HashSet;

use crate::ast::{BoolFormula as B, Name};

/// Generator of bound-variable names that cannot clash with user names.
#[derive(Clone, Debug, Default)]
pub struct Fresh {
    next: usize,
    avoid: HashSet<String>,
}

impl Fresh {
    pub fn new() -> Self {
        Self::default()
    }

    /// A generator that skips every name occurring in `text`.
    pub fn avoiding_text(text: &str) -> Self {
        let avoid = text
            .split(|c: char| !(c.is_alphanumeric() || c == '_' || c == '\''))
            .filter(|w| w.starts_with('_'))
            .map(str::to_string)
            .collect();
        Fresh { next: 0, avoid }
    }

    fn make(&mut self, stem: &str) -> Name {
        loop {
            let name = format!("_{stem}{}", self.next);
            self.next += 1;
            if !self.avoid.contains(&name) {
                return name;
            }
        }
    }

    /// A fresh first-order variable.
    pub fn fo(&mut self) -> Name {
        self.make("t")
    }

    /// A fresh first-order tuple of length `k`.
    pub fn fo_tuple(&mut self, k: usize) -> Vec<Name> {
        (0..k).map(|_| self.fo()).collect()
    }

    /// A fresh second-order variable.
    pub fn so(&mut self) -> Name {
        self.make("T")
    }
}

/// `x` is the least element.
pub fn is_min(x: &str, fresh: &mut Fresh) -> B {
    let w = fresh.fo();
    B::forall(&w, B::leq(x, &w))
}

/// `x` is the greatest element.
pub fn is_max(x: &str, fresh: &mut Fresh) -> B {
    let w = fresh.fo();
    B::forall(&w, B::leq(&w, x))
}

pub fn lt(x: &str, y: &str) -> B {
    B::leq(x, y).and(B::eq(x, y).not())
}

/// `y` is the immediate successor of `x`.
pub fn succ(x: &str, y: &str, fresh: &mut Fresh) -> B {
    let w = fresh.fo();
    lt(x, y).and(B::forall(&w, B::leq(&w, x).or(B::leq(y, &w))))
}

/// `x` is the `d`-th element (0-based). Each step guards with the
/// successor relation first so evaluation stays linear in `d`.
pub fn nth(x: &str, d: u32, fresh: &mut Fresh) -> B {
    if d == 0 {
        return is_min(x, fresh);
    }
    let p = fresh.fo();
    let step = succ(&p, x, fresh);
    let rest = nth(&p, d - 1, fresh);
    B::exists(&p, step.and(rest))
}

pub fn tuple_eq(xs: &[Name], ys: &[Name]) -> B {
    B::all(xs.iter().zip(ys).map(|(x, y)| B::eq(x, y)))
}

/// Strict lexicographic order on k-tuples.
pub fn tuple_lt(xs: &[Name], ys: &[Name]) -> B {
    B::any((0..xs.len()).map(|i| {
        let prefix = tuple_eq(&xs[..i], &ys[..i]);
        if i == 0 {
            lt(&xs[0], &ys[0])
        } else {
            prefix.and(lt(&xs[i], &ys[i]))
        }
    }))
}

pub fn tuple_le(xs: &[Name], ys: &[Name]) -> B {
    tuple_lt(xs, ys).or(tuple_eq(xs, ys))
}

pub fn tuple_is_min(xs: &[Name], fresh: &mut Fresh) -> B {
    B::all(xs.iter().map(|x| is_min(x, fresh)).collect::<Vec<_>>())
}

pub fn tuple_is_max(xs: &[Name], fresh: &mut Fresh) -> B {
    B::all(xs.iter().map(|x| is_max(x, fresh)).collect::<Vec<_>>())
}

/// `ys` is the lexicographic successor of `xs`.
pub fn tuple_succ(xs: &[Name], ys: &[Name], fresh: &mut Fresh) -> B {
    let k = xs.len();
    let mut cases = Vec::new();
    for i in 0..k {
        let mut parts = Vec::new();
        for j in 0..i {
            parts.push(B::eq(&xs[j], &ys[j]));
        }
        parts.push(succ(&xs[i], &ys[i], fresh));
        for j in i + 1..k {
            parts.push(is_max(&xs[j], fresh));
            parts.push(is_min(&ys[j], fresh));
        }
        cases.push(B::all(parts));
    }
    B::any(cases)
}

/// `xs` denotes the number `value` written in base `n` over k digits.
pub fn tuple_const(xs: &[Name], value: u64, n: u32, fresh: &mut Fresh) -> B {
    let mut digits = vec![0u32; xs.len()];
    let mut v = value;
    for d in digits.iter_mut().rev() {
        *d = (v % n as u64) as u32;
        v /= n as u64;
    }
    B::all(
        xs.iter()
            .zip(digits)
            .map(|(x, d)| nth(x, d, fresh))
            .collect::<Vec<_>>(),
    )
}

/// Application of a relation name, as a bound variable or a free symbol.
pub fn app(name: &str, args: &[Name], bound: bool) -> B {
    if bound {
        B::SOApp(name.to_string(), args.to_vec())
    } else {
        B::RelApp(name.to_string(), args.to_vec())
    }
}

/// `left = right` for k-ary relations: every tuple is in `left` iff it is in `right`.
pub fn rel_eq(
    left: (&str, bool),
    right: (&str, bool),
    arity: usize,
    fresh: &mut Fresh,
) -> B {
    let ys = fresh.fo_tuple(arity);
    B::forall_all(&ys, app(left.0, &ys, left.1).iff(app(right.0, &ys, right.1)))
}

/// The relation is empty.
pub fn rel_empty(rel: (&str, bool), arity: usize, fresh: &mut Fresh) -> B {
    let ys = fresh.fo_tuple(arity);
    B::forall_all(&ys, app(rel.0, &ys, rel.1).not())
}
