//! Normal form `alpha + sum_i phi_i * (Y := psi_i(X) * f(Y))` for bodies of
//! the restricted first-order recursion fragment.

use crate::ast::{BoolFormula as B, Name, QFormula as Q};
use crate::error::FormulaError;
use crate::fragment::{is_restricted_fo_alpha, strictly_extends, underlined_step};

/// Largest number of guarded recursive summands produced.
pub const MAX_GUARDS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotpGuard {
    pub guard: B,
    pub var: Name,
    pub step: B,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotpNormalForm {
    pub func: Name,
    pub param: Name,
    pub arity: usize,
    pub alpha: Q,
    pub guards: Vec<TotpGuard>,
}

impl TotpNormalForm {
    pub fn r(&self) -> usize {
        self.guards.len()
    }

    /// The body as a formula: `alpha + [phi_1] * (Sum Y. $Y * [psi_1] * f(Y)) + ...`.
    pub fn body(&self) -> Q {
        let mut parts = vec![self.alpha.clone()];
        for g in &self.guards {
            let step = Q::SOVar(g.var.clone())
                .mul(Q::Bool(g.step.clone()))
                .mul(Q::FunAppSO(self.func.clone(), g.var.clone()));
            parts.push(Q::Bool(g.guard.clone()).mul(Q::sum_so(&g.var, self.arity, step)));
        }
        Q::sum_of(parts).expect("nonempty")
    }

    /// The whole fixed point applied to `arg`.
    pub fn to_lfp(&self, arg: &str) -> Q {
        Q::LfpSO {
            func: self.func.clone(),
            param: self.param.clone(),
            arity: self.arity,
            body: Box::new(self.body()),
            arg: arg.to_string(),
        }
    }
}

struct Ctx<'a> {
    func: &'a str,
    param: &'a str,
    arity: usize,
}

struct Parts {
    alpha: Vec<Q>,
    guards: Vec<TotpGuard>,
}

fn and_guard(phi: &B, g: &B) -> B {
    match g {
        B::True => phi.clone(),
        other => phi.clone().and(other.clone()),
    }
}

fn guarded_alpha(phi: &B, alpha: Vec<Q>) -> Vec<Q> {
    match Q::sum_of(alpha) {
        None => Vec::new(),
        Some(a) => vec![Q::Bool(phi.clone()).mul(a)],
    }
}

fn with_guard(phi: &B, p: Parts) -> Parts {
    Parts {
        alpha: guarded_alpha(phi, p.alpha),
        guards: p
            .guards
            .into_iter()
            .map(|g| TotpGuard {
                guard: and_guard(phi, &g.guard),
                ..g
            })
            .collect(),
    }
}

/// Splits a product into a boolean prefix and its last factor.
fn bool_prefix(q: &Q) -> Option<(B, &Q)> {
    let factors = q.factors();
    let (last, init) = factors.split_last()?;
    if init.is_empty() {
        return None;
    }
    let mut bools = Vec::new();
    for f in init {
        match f {
            Q::Bool(b) => bools.push(b.clone()),
            _ => return None,
        }
    }
    Some((B::all(bools), last))
}

fn step(q: &Q, cx: &Ctx) -> Option<TotpGuard> {
    let (y, psi) = underlined_step(q, cx.func, cx.arity)?;
    if !strictly_extends(psi, cx.param, y, false) {
        return None;
    }
    Some(TotpGuard {
        guard: B::True,
        var: y.clone(),
        step: psi.clone(),
    })
}

fn norm(q: &Q, cx: &Ctx) -> Option<Parts> {
    if is_restricted_fo_alpha(q) {
        return Some(Parts {
            alpha: vec![q.clone()],
            guards: Vec::new(),
        });
    }
    if let Some(g) = step(q, cx) {
        return Some(Parts {
            alpha: Vec::new(),
            guards: vec![g],
        });
    }
    match q {
        Q::Add(l, r) => {
            // beta + beta + top
            if matches!(r.as_ref(), Q::Bool(B::True)) {
                if let Q::Add(b1, b2) = l.as_ref() {
                    if let (Some(p1), Some(p2)) = (norm(b1, cx), norm(b2, cx)) {
                        let mut alpha = p1.alpha;
                        alpha.extend(p2.alpha);
                        alpha.push(Q::top());
                        let mut guards = p1.guards;
                        guards.extend(p2.guards);
                        return Some(Parts { alpha, guards });
                    }
                }
            }
            // phi * beta + !phi * beta
            if let (Some((phi, b1)), Some((nphi, b2))) = (bool_prefix(l), bool_prefix(r)) {
                if nphi.alpha_equivalent(&phi.clone().not()) {
                    if let (Some(p1), Some(p2)) = (norm(b1, cx), norm(b2, cx)) {
                        let p1 = with_guard(&phi, p1);
                        let p2 = with_guard(&nphi, p2);
                        let mut alpha = p1.alpha;
                        alpha.extend(p2.alpha);
                        let mut guards = p1.guards;
                        guards.extend(p2.guards);
                        return Some(Parts { alpha, guards });
                    }
                }
            }
            // alpha + beta
            if is_restricted_fo_alpha(l) {
                if let Some(mut p) = norm(r, cx) {
                    p.alpha.insert(0, (**l).clone());
                    return Some(p);
                }
            }
            canonical(q, cx)
        }
        Q::Mul(..) => {
            let (phi, rest) = bool_prefix(q)?;
            if !phi.is_first_order() {
                return None;
            }
            norm(rest, cx).map(|p| with_guard(&phi, p))
        }
        _ => None,
    }
}

/// The normal form itself: alpha summands followed by guarded steps.
fn canonical(q: &Q, cx: &Ctx) -> Option<Parts> {
    let parts = q.summands();
    let split = parts
        .iter()
        .position(|s| !is_restricted_fo_alpha(s))
        .unwrap_or(parts.len());
    if split == 0 || split == parts.len() {
        return None;
    }
    let mut guards = Vec::new();
    for s in &parts[split..] {
        let Q::Mul(l, r) = s else { return None };
        let Q::Bool(phi) = l.as_ref() else {
            return None;
        };
        if !phi.is_first_order() {
            return None;
        }
        let mut g = step(r, cx)?;
        g.guard = phi.clone();
        guards.push(g);
    }
    Some(Parts {
        alpha: parts[..split].iter().map(|s| (*s).clone()).collect(),
        guards,
    })
}

/// Normalizes without the guard-count cap.
pub(crate) fn normalize_unbounded(
    body: &Q,
    func: &str,
    param: &str,
    arity: usize,
) -> Result<TotpNormalForm, FormulaError> {
    let cx = Ctx { func, param, arity };
    let p = norm(body, &cx).ok_or_else(|| {
        FormulaError::NotInGrammar("body is not a restricted first-order recursion".into())
    })?;
    Ok(TotpNormalForm {
        func: func.to_string(),
        param: param.to_string(),
        arity,
        alpha: Q::sum_of(p.alpha).unwrap_or(Q::Bool(B::False)),
        guards: p.guards,
    })
}

/// Rewrites the body of `lfp f(X:k) = body in f(_)` into normal form.
pub fn normalize_totp_fo(lfp: &Q) -> Result<TotpNormalForm, FormulaError> {
    let Q::LfpSO {
        func,
        param,
        arity,
        body,
        ..
    } = lfp
    else {
        return Err(FormulaError::NotInGrammar(
            "expected a second-order fixed point".into(),
        ));
    };
    let nf = normalize_unbounded(body, func, param, *arity)?;
    if nf.r() > MAX_GUARDS {
        return Err(FormulaError::TooManySummands(MAX_GUARDS));
    }
    Ok(nf)
}
