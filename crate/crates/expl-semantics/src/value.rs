use std::collections::BTreeSet;
use std::fmt;

use structure_core::SymbolString;

/// The set of strings a formula explains, or the marker for an infinite set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExplValue {
    Finite(BTreeSet<SymbolString>),
    Infinite,
}

/// A cardinality in ℕ ∪ {+∞}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Count {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(c) => write!(f, "{c}"),
            Count::Infinite => f.write_str("inf"),
        }
    }
}

impl Default for ExplValue {
    fn default() -> Self {
        ExplValue::empty()
    }
}

impl ExplValue {
    pub fn empty() -> Self {
        ExplValue::Finite(BTreeSet::new())
    }

    /// `{ε}`.
    pub fn epsilon() -> Self {
        Self::singleton(SymbolString::epsilon())
    }

    pub fn singleton(s: SymbolString) -> Self {
        ExplValue::Finite(BTreeSet::from([s]))
    }

    pub fn from_strings(strings: impl IntoIterator<Item = SymbolString>) -> Self {
        ExplValue::Finite(strings.into_iter().collect())
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ExplValue::Finite(s) if s.is_empty())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExplValue::Infinite)
    }

    pub fn strings(&self) -> Option<&BTreeSet<SymbolString>> {
        match self {
            ExplValue::Finite(s) => Some(s),
            ExplValue::Infinite => None,
        }
    }

    pub fn count(&self) -> Count {
        match self {
            ExplValue::Finite(s) => Count::Finite(s.len() as u64),
            ExplValue::Infinite => Count::Infinite,
        }
    }

    pub fn union_with(&mut self, other: ExplValue) {
        match (&mut *self, other) {
            (ExplValue::Infinite, _) => {}
            (_, ExplValue::Infinite) => *self = ExplValue::Infinite,
            (ExplValue::Finite(a), ExplValue::Finite(mut b)) => {
                if a.len() < b.len() {
                    std::mem::swap(a, &mut b);
                }
                a.extend(b);
            }
        }
    }

    pub fn union(mut self, other: ExplValue) -> Self {
        self.union_with(other);
        self
    }

    /// `self ⊆ other`, with every set below the infinite marker.
    pub fn is_subset(&self, other: &ExplValue) -> bool {
        match (self, other) {
            (_, ExplValue::Infinite) => true,
            (ExplValue::Infinite, ExplValue::Finite(_)) => false,
            (ExplValue::Finite(a), ExplValue::Finite(b)) => a.is_subset(b),
        }
    }

    /// Longest member, if finite.
    pub fn max_len(&self) -> Option<usize> {
        self.strings()
            .map(|s| s.iter().map(SymbolString::len).max().unwrap_or(0))
    }
}

/// Lifted concatenation `{x∘y | x ∈ a, y ∈ b}`. The empty set annihilates,
/// the infinite marker absorbs every other nonempty operand.
pub fn concat_sets(a: &ExplValue, b: &ExplValue) -> ExplValue {
    if a.is_empty() || b.is_empty() {
        return ExplValue::empty();
    }
    match (a, b) {
        (ExplValue::Finite(x), ExplValue::Finite(y)) => {
            if y.len() == 1 && y.iter().next().is_some_and(SymbolString::is_empty) {
                return a.clone();
            }
            if x.len() == 1 && x.iter().next().is_some_and(SymbolString::is_empty) {
                return b.clone();
            }
            let mut out = BTreeSet::new();
            for s in x {
                for t in y {
                    out.insert(s.concat(t));
                }
            }
            ExplValue::Finite(out)
        }
        _ => ExplValue::Infinite,
    }
}

impl fmt::Display for ExplValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExplValue::Infinite => f.write_str("inf"),
            ExplValue::Finite(s) => {
                f.write_str("{")?;
                for (i, w) in s.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{w}")?;
                }
                f.write_str("}")
            }
        }
    }
}
