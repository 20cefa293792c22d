use std::fmt;
use std::str::FromStr;

use formula_ast::{classify_fragment, FragmentTag, QFormula};

/// How a fixed point is iterated and when iteration gives up.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LfpPolicy {
    /// Picked per fixed point from its fragment.
    #[default]
    Auto,
    /// Stabilization is required within `n^k + 1` iterations.
    StrictChain,
    /// The divergence detector runs before iterating.
    RestrictedSo,
    /// At most this many iterations.
    Capped(usize),
}

/// `10 * n^k + 64`.
pub fn default_cap(n: u32, k: usize) -> usize {
    let nk = (n as usize).saturating_pow(k as u32);
    nk.saturating_mul(10).saturating_add(64)
}

/// `n^k + 1`.
pub fn chain_bound(n: u32, k: usize) -> usize {
    (n as usize).saturating_pow(k as u32).saturating_add(1)
}

impl LfpPolicy {
    /// The concrete policy for one fixed point of argument arity `k`.
    pub fn resolve(self, source: &QFormula, n: u32, k: usize) -> LfpPolicy {
        match self {
            LfpPolicy::Auto => match classify_fragment(source) {
                FragmentTag::RsoR_SsoR_FO | FragmentTag::RsoR_SsoR_LFP => LfpPolicy::StrictChain,
                FragmentTag::RsoR_SsoSO => LfpPolicy::RestrictedSo,
                _ => LfpPolicy::Capped(default_cap(n, k)),
            },
            other => other,
        }
    }
}

impl fmt::Display for LfpPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LfpPolicy::Auto => f.write_str("auto"),
            LfpPolicy::StrictChain => f.write_str("strict"),
            LfpPolicy::RestrictedSo => f.write_str("restricted"),
            LfpPolicy::Capped(n) => write!(f, "cap:{n}"),
        }
    }
}

impl FromStr for LfpPolicy {
    type Err = String;

    /// `auto`, `strict`, `restricted` or `cap:N` with `N >= 1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(LfpPolicy::Auto),
            "strict" => Ok(LfpPolicy::StrictChain),
            "restricted" => Ok(LfpPolicy::RestrictedSo),
            _ => {
                let n = s
                    .strip_prefix("cap:")
                    .and_then(|n| n.parse::<usize>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| format!("unknown policy `{s}`: use strict, restricted, auto or cap:N with N >= 1"))?;
                Ok(LfpPolicy::Capped(n))
            }
        }
    }
}
