//! Least fixed points of recursive counting formulae.
//!
//! A fixed point `[lfp_f beta](a)` is computed by iterating the body from
//! the empty table until two consecutive tables agree. The arguments
//! tabulated are those reachable from `a` through applications of `f` in
//! the body. Iteration is bounded per [`LfpPolicy`]; for restricted
//! second-order bodies a divergence detector on the graph of connections
//! decides infinite values up front.

mod engine;
mod graph;
mod policy;

use std::rc::Rc;

use bool_semantics::Assignment;
use expl_semantics::{expl, ExplError, ExplStats, ExplValue, FunArg, FunDomain, FunEnv, FunTable, Prepared};
use formula_ast::{satisfies, FragmentTag, QFormula};
use structure_core::{advance, enumerate_relations, tuple_space, Structure};

pub use engine::{LfpEngine, LfpRun, MAX_DOMAIN, LETTER_BUDGET};
pub use graph::{build_connection_graph, reach, ConnectionGraph};
pub use policy::{chain_bound, default_cap, LfpPolicy};

/// Result of evaluating a formula whose fixed points were iterated.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: ExplValue,
    /// One entry per fixed point solved, innermost first.
    pub runs: Vec<LfpRun>,
    pub stats: ExplStats,
}

/// `expl` with fixed points evaluated under `policy`.
pub fn evaluate(
    alpha: &QFormula,
    structure: &Structure,
    asg: &Assignment,
    funs: &FunEnv,
    policy: LfpPolicy,
) -> Result<Evaluation, ExplError> {
    evaluate_with(alpha, structure, asg, funs, LfpEngine::new(policy))
}

/// [`evaluate`] with a configured engine.
pub fn evaluate_with(
    alpha: &QFormula,
    structure: &Structure,
    asg: &Assignment,
    funs: &FunEnv,
    engine: LfpEngine,
) -> Result<Evaluation, ExplError> {
    let engine = Rc::new(engine);
    let mut p = Prepared::new(alpha, structure, asg, funs)?.with_handler(engine.clone());
    let value = p.run()?;
    Ok(Evaluation {
        value,
        runs: engine.runs(),
        stats: p.eval.stats,
    })
}

/// The value of a fixed-point formula.
pub fn lfp_eval(
    phi: &QFormula,
    structure: &Structure,
    asg: &Assignment,
    policy: LfpPolicy,
) -> Result<ExplValue, ExplError> {
    if !matches!(phi, QFormula::LfpFO { .. } | QFormula::LfpSO { .. }) {
        return Err(ExplError::Shape("not a fixed-point formula".into()));
    }
    evaluate(phi, structure, asg, &FunEnv::new(), policy).map(|e| e.value)
}

/// One application of the body of `phi` to `h`, at every argument: all
/// tuples for a first-order fixed point, all relations of the argument
/// arity for a second-order one.
pub fn iterate_once(
    phi: &QFormula,
    structure: &Structure,
    asg: &Assignment,
    h: &FunTable,
) -> Result<FunTable, ExplError> {
    let n = structure.universe_size();
    let (func, body, domain) = match phi {
        QFormula::LfpFO { func, params, body, .. } => (func, body, FunDomain::Fo(params.len())),
        QFormula::LfpSO { func, arity, body, .. } => (func, body, FunDomain::So(*arity)),
        _ => return Err(ExplError::Shape("not a fixed-point formula".into())),
    };
    if h.domain() != domain {
        return Err(ExplError::Shape(format!("table over {:?} for `{func}` over {domain:?}", h.domain())));
    }
    let funs = FunEnv::from([(func.clone(), h.clone())]);
    let mut out = FunTable::new(domain);
    let args: Vec<(FunArg, Assignment)> = match phi {
        QFormula::LfpFO { params, .. } => {
            let mut t = vec![0u32; params.len()];
            let size = tuple_space(n, params.len())
                .ok_or_else(|| ExplError::Shape("too many arguments".into()))?;
            let mut v = Vec::new();
            for _ in 0..size {
                let mut a = asg.clone();
                for (p, &e) in params.iter().zip(&t) {
                    a = a.with_fo(p, e);
                }
                v.push((FunArg::Fo(t.clone()), a));
                advance(&mut t, n);
            }
            v
        }
        QFormula::LfpSO { param, arity, .. } => enumerate_relations(n, *arity)?
            .map(|r| (FunArg::So(r.clone()), asg.clone().with_so(param, r)))
            .collect(),
        _ => unreachable!("matched above"),
    };
    for (arg, a) in args {
        let v = if body.is_lfp_free() {
            expl(body, structure, &a, &funs)?
        } else {
            evaluate(body, structure, &a, &funs, LfpPolicy::Auto)?.value
        };
        out.set(arg, v)?;
    }
    Ok(out)
}

/// Whether the restricted second-order fixed point `phi` has infinitely
/// many strings at its argument.
pub fn detect_infinite(phi: &QFormula, structure: &Structure, asg: &Assignment) -> Result<bool, ExplError> {
    if !matches!(phi, QFormula::LfpSO { .. }) || !satisfies(phi, FragmentTag::RsoR_SsoSO) {
        return Err(ExplError::Shape("not a restricted second-order fixed point".into()));
    }
    let e = evaluate(phi, structure, asg, &FunEnv::new(), LfpPolicy::RestrictedSo)?;
    Ok(e.runs.last().is_some_and(|r| r.infinite))
}
