use std::fmt;

use crate::ast::{BoolFormula as B, Name, QFormula as Q};
use crate::normalize::normalize_unbounded;
use crate::shapes::{recognize_define, recognize_extend};

/// Named syntactic fragments, from most to least specific per family.
#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FragmentTag {
    SigmaSO_FO_xfree,
    SigmaSO_SO_xfree,
    RfoSfoFO,
    RsoSsoSO,
    RsoR_SsoSO,
    RsoR_SsoR_LFP,
    RsoR_SsoR_FO,
    General,
}

impl FragmentTag {
    pub const ALL: [FragmentTag; 8] = [
        FragmentTag::SigmaSO_FO_xfree,
        FragmentTag::SigmaSO_SO_xfree,
        FragmentTag::RfoSfoFO,
        FragmentTag::RsoSsoSO,
        FragmentTag::RsoR_SsoSO,
        FragmentTag::RsoR_SsoR_LFP,
        FragmentTag::RsoR_SsoR_FO,
        FragmentTag::General,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FragmentTag::SigmaSO_FO_xfree => "SigmaSO_FO_xfree",
            FragmentTag::SigmaSO_SO_xfree => "SigmaSO_SO_xfree",
            FragmentTag::RfoSfoFO => "RfoSfoFO",
            FragmentTag::RsoSsoSO => "RsoSsoSO",
            FragmentTag::RsoR_SsoSO => "RsoR_SsoSO",
            FragmentTag::RsoR_SsoR_LFP => "RsoR_SsoR_LFP",
            FragmentTag::RsoR_SsoR_FO => "RsoR_SsoR_FO",
            FragmentTag::General => "General",
        }
    }
}

impl fmt::Display for FragmentTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Leaf logic allowed inside boolean brackets.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Leaf {
    Fo,
    FoLfp,
    So,
}

fn leaf_ok(b: &B, leaf: Leaf) -> bool {
    match leaf {
        Leaf::Fo => b.is_first_order(),
        Leaf::FoLfp => b.is_fo_lfp(),
        Leaf::So => b.is_lfp_free(),
    }
}

/// Letters and sums permitted in a sum-product formula without recursion.
#[derive(Clone, Copy)]
struct Sigma {
    leaf: Leaf,
    fo_letters: bool,
    so_letters: bool,
    so_sums: SoSums,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SoSums {
    None,
    Any,
    DefineOnly,
}

fn sigma_ok(a: &Q, s: Sigma) -> bool {
    match a {
        Q::FOVar(_) => s.fo_letters,
        Q::SOVar(_) => s.so_letters,
        Q::Bool(b) => leaf_ok(b, s.leaf),
        Q::Add(l, r) | Q::Mul(l, r) => sigma_ok(l, s) && sigma_ok(r, s),
        Q::SumFO(_, body) => sigma_ok(body, s),
        Q::SumSO(y, k, body) => match s.so_sums {
            SoSums::None => false,
            SoSums::Any => sigma_ok(body, s),
            SoSums::DefineOnly => {
                let factors = body.factors();
                let Q::Bool(phi) = factors[0] else {
                    return false;
                };
                let defines = recognize_define(phi)
                    .is_some_and(|d| &d.defined == y && d.vars.len() == *k);
                defines && leaf_ok(phi, s.leaf) && factors[1..].iter().all(|f| sigma_ok(f, s))
            }
        },
        Q::FunAppFO(..) | Q::FunAppSO(..) | Q::LfpFO { .. } | Q::LfpSO { .. } => false,
    }
}

const X_FREE_FO: Sigma = Sigma {
    leaf: Leaf::Fo,
    fo_letters: true,
    so_letters: false,
    so_sums: SoSums::None,
};

const X_FREE_SO: Sigma = Sigma {
    leaf: Leaf::So,
    fo_letters: true,
    so_letters: false,
    so_sums: SoSums::Any,
};

const LITTLE_X_FREE_SO: Sigma = Sigma {
    leaf: Leaf::So,
    fo_letters: false,
    so_letters: true,
    so_sums: SoSums::Any,
};

const LITTLE_X_FREE_FO: Sigma = Sigma {
    leaf: Leaf::Fo,
    fo_letters: false,
    so_letters: true,
    so_sums: SoSums::Any,
};

const RESTRICTED_FO: Sigma = Sigma {
    leaf: Leaf::Fo,
    fo_letters: false,
    so_letters: true,
    so_sums: SoSums::DefineOnly,
};

const RESTRICTED_LFP: Sigma = Sigma {
    leaf: Leaf::FoLfp,
    fo_letters: false,
    so_letters: true,
    so_sums: SoSums::DefineOnly,
};

/// Alpha of the restricted first-order-leaf fragment.
pub(crate) fn is_restricted_fo_alpha(a: &Q) -> bool {
    sigma_ok(a, RESTRICTED_FO)
}

/// Grammar with free recursion: alpha, f(args), sums, alpha-prefixed products.
fn free_recursion_ok(b: &Q, f: &str, so: bool, alpha: Sigma) -> bool {
    if sigma_ok(b, alpha) {
        return true;
    }
    match b {
        Q::FunAppFO(g, _) => !so && g == f,
        Q::FunAppSO(g, _) => so && g == f,
        Q::Add(l, r) => free_recursion_ok(l, f, so, alpha) && free_recursion_ok(r, f, so, alpha),
        Q::Mul(..) => {
            let factors = b.factors();
            let (last, init) = factors.split_last().expect("nonempty");
            init.iter().all(|a| sigma_ok(a, alpha)) && free_recursion_ok(last, f, so, alpha)
        }
        Q::SumFO(_, body) => free_recursion_ok(body, f, so, alpha),
        Q::SumSO(_, _, body) => so && free_recursion_ok(body, f, so, alpha),
        _ => false,
    }
}

/// `Sum Y:k. [phi] * $Y * f(Y)` with the boolean and letter in either order.
/// Returns the boolean factor.
pub(crate) fn underlined_step<'a>(s: &'a Q, f: &str, arity: usize) -> Option<(&'a Name, &'a B)> {
    let Q::SumSO(y, k, body) = s else {
        return None;
    };
    if *k != arity {
        return None;
    }
    let factors = body.factors();
    let (last, init) = factors.split_last()?;
    if !matches!(last, Q::FunAppSO(g, z) if g == f && z == y) || init.len() != 2 {
        return None;
    }
    let mut phi = None;
    let mut letter = false;
    for fac in init {
        match fac {
            Q::Bool(b) if phi.is_none() => phi = Some(b),
            Q::SOVar(z) if z == y && !letter => letter = true,
            _ => return None,
        }
    }
    Some((y, phi?))
}

/// Strict extension of `param` to `y` with first-order (or FO(LFP)) matrix.
pub(crate) fn strictly_extends(psi: &B, param: &str, y: &str, leaf_lfp: bool) -> bool {
    let logic = if leaf_lfp { psi.is_fo_lfp() } else { psi.is_first_order() };
    logic
        && recognize_extend(psi)
            .is_some_and(|e| e.strict && e.base == param && e.extended == *y)
}

/// `Sum Y:k. [psi] * f(Y)` with psi strictly extending the parameter.
fn plain_step(s: &Q, f: &str, param: &str, arity: usize) -> bool {
    let Q::SumSO(y, k, body) = s else {
        return false;
    };
    let Q::Mul(l, r) = body.as_ref() else {
        return false;
    };
    let (Q::Bool(psi), Q::FunAppSO(g, z)) = (l.as_ref(), r.as_ref()) else {
        return false;
    };
    *k == arity && g == f && z == y && strictly_extends(psi, param, y, true)
}

/// `top + step + ... + step` with at least one step.
fn top_plus_steps(s: &Q, f: &str, param: &str, arity: usize) -> bool {
    let parts = s.summands();
    parts.len() >= 2
        && matches!(parts[0], Q::Bool(B::True))
        && parts[1..].iter().all(|p| plain_step(p, f, param, arity))
}

/// `[phi]` and `$X` in either order: the guard phi(X underlined).
fn underlined_guard(init: &[&Q], param: &str, avoid: Option<&str>) -> bool {
    if init.len() != 2 {
        return false;
    }
    let ok = |a: &Q, b: &Q| {
        matches!(a, Q::SOVar(x) if x == param)
            && matches!(b, Q::Bool(phi) if phi.is_fo_lfp()
                && avoid.is_none_or(|y| !phi.mentions_relation(y)))
    };
    ok(init[0], init[1]) || ok(init[1], init[0])
}

fn lfp_totp_summand(s: &Q, f: &str, param: &str, arity: usize) -> bool {
    if sigma_ok(s, RESTRICTED_LFP) {
        return true;
    }
    // phi(X) * (top + sum_i Y := psi_i(X) * f(Y))
    let factors = s.factors();
    if let Some((last, init)) = factors.split_last() {
        if underlined_guard(init, param, None) && top_plus_steps(last, f, param, arity) {
            return true;
        }
    }
    // Sum Y. phi(X) * (top + psi(X,Y) * f(Y))
    if let Q::SumSO(y, k, body) = s {
        let factors = body.factors();
        if let Some((last, init)) = factors.split_last() {
            if *k == arity && underlined_guard(init, param, Some(y)) {
                let parts = last.summands();
                if parts.len() == 2 && matches!(parts[0], Q::Bool(B::True)) {
                    if let Q::Mul(l, r) = parts[1] {
                        if let (Q::Bool(psi), Q::FunAppSO(g, z)) = (l.as_ref(), r.as_ref()) {
                            return g == f && z == y && strictly_extends(psi, param, y, true);
                        }
                    }
                }
            }
        }
    }
    false
}

fn restricted_so_summand(s: &Q, f: &str, arity: usize) -> bool {
    sigma_ok(s, LITTLE_X_FREE_SO)
        || underlined_step(s, f, arity).is_some_and(|(_, phi)| phi.is_lfp_free())
}

fn classify_lfp_so(func: &str, param: &str, arity: usize, body: &Q) -> FragmentTag {
    if normalize_unbounded(body, func, param, arity).is_ok() {
        return FragmentTag::RsoR_SsoR_FO;
    }
    let parts = body.summands();
    if parts.iter().all(|s| lfp_totp_summand(s, func, param, arity)) {
        return FragmentTag::RsoR_SsoR_LFP;
    }
    if parts.iter().all(|s| restricted_so_summand(s, func, arity)) {
        return FragmentTag::RsoR_SsoSO;
    }
    if free_recursion_ok(body, func, true, X_FREE_SO) && uses_consistent_arity(body, func, arity) {
        return FragmentTag::RsoSsoSO;
    }
    FragmentTag::General
}

/// Every `f(Z)` refers to a second-order variable bound with the
/// parameter's arity (or the parameter itself).
fn uses_consistent_arity(body: &Q, f: &str, arity: usize) -> bool {
    fn walk(q: &Q, f: &str, arity: usize, scope: &mut Vec<(Name, usize)>) -> bool {
        match q {
            Q::FunAppSO(g, z) if g == f => scope
                .iter()
                .rev()
                .find(|(n, _)| n == z)
                .is_none_or(|&(_, k)| k == arity),
            Q::Add(l, r) | Q::Mul(l, r) => walk(l, f, arity, scope) && walk(r, f, arity, scope),
            Q::SumFO(_, b) => walk(b, f, arity, scope),
            Q::SumSO(y, k, b) => {
                scope.push((y.clone(), *k));
                let ok = walk(b, f, arity, scope);
                scope.pop();
                ok
            }
            _ => true,
        }
    }
    walk(body, f, arity, &mut Vec::new())
}

/// The most specific fragment the formula belongs to.
pub fn classify_fragment(phi: &Q) -> FragmentTag {
    match phi {
        Q::LfpSO {
            func,
            param,
            arity,
            body,
            ..
        } => classify_lfp_so(func, param, *arity, body),
        Q::LfpFO { func, body, .. } => {
            if free_recursion_ok(body, func, false, X_FREE_FO) {
                FragmentTag::RfoSfoFO
            } else {
                FragmentTag::General
            }
        }
        other => {
            if sigma_ok(other, LITTLE_X_FREE_FO) {
                FragmentTag::SigmaSO_FO_xfree
            } else if sigma_ok(other, LITTLE_X_FREE_SO) {
                FragmentTag::SigmaSO_SO_xfree
            } else {
                FragmentTag::General
            }
        }
    }
}

/// Checks membership in the grammar of one fragment (not necessarily the
/// most specific one).
pub fn satisfies(phi: &Q, tag: FragmentTag) -> bool {
    match (tag, phi) {
        (FragmentTag::General, _) => true,
        (FragmentTag::SigmaSO_FO_xfree, _) => sigma_ok(phi, LITTLE_X_FREE_FO),
        (FragmentTag::SigmaSO_SO_xfree, _) => sigma_ok(phi, LITTLE_X_FREE_SO),
        (FragmentTag::RfoSfoFO, Q::LfpFO { func, body, .. }) => {
            free_recursion_ok(body, func, false, X_FREE_FO)
        }
        (
            tag,
            Q::LfpSO {
                func,
                param,
                arity,
                body,
                ..
            },
        ) => match tag {
            FragmentTag::RsoR_SsoR_FO => normalize_unbounded(body, func, param, *arity).is_ok(),
            FragmentTag::RsoR_SsoR_LFP => body
                .summands()
                .iter()
                .all(|s| lfp_totp_summand(s, func, param, *arity)),
            FragmentTag::RsoR_SsoSO => body
                .summands()
                .iter()
                .all(|s| restricted_so_summand(s, func, *arity)),
            FragmentTag::RsoSsoSO => {
                free_recursion_ok(body, func, true, X_FREE_SO)
                    && uses_consistent_arity(body, func, *arity)
            }
            _ => false,
        },
        _ => false,
    }
}
