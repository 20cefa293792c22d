use std::collections::BTreeMap;

use structure_core::RelationValue;

use crate::error::ExplError;
use crate::value::ExplValue;

/// Argument type of a function symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunDomain {
    /// Tuples of `k` universe elements.
    Fo(usize),
    /// Relations of arity `k`.
    So(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FunArg {
    Fo(Vec<u32>),
    So(RelationValue),
}

/// A point of the function lattice: argument to set of strings. Missing
/// entries stand for the empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunTable {
    domain: FunDomain,
    entries: BTreeMap<FunArg, ExplValue>,
}

impl FunTable {
    pub fn new(domain: FunDomain) -> Self {
        FunTable {
            domain,
            entries: BTreeMap::new(),
        }
    }

    pub fn domain(&self) -> FunDomain {
        self.domain
    }

    fn check(&self, arg: &FunArg) -> Result<(), ExplError> {
        let ok = match (self.domain, arg) {
            (FunDomain::Fo(k), FunArg::Fo(t)) => t.len() == k,
            (FunDomain::So(k), FunArg::So(r)) => r.arity() == k,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(ExplError::Shape(format!("argument {arg:?} does not fit {:?}", self.domain)))
        }
    }

    pub fn get(&self, arg: &FunArg) -> Option<&ExplValue> {
        self.entries.get(arg)
    }

    /// Value at `arg`, empty when absent.
    pub fn value(&self, arg: &FunArg) -> ExplValue {
        self.entries.get(arg).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, arg: FunArg, v: ExplValue) -> Result<(), ExplError> {
        self.check(&arg)?;
        if v.is_empty() {
            self.entries.remove(&arg);
        } else {
            self.entries.insert(arg, v);
        }
        Ok(())
    }

    /// Nonempty entries.
    pub fn entries(&self) -> impl Iterator<Item = (&FunArg, &ExplValue)> {
        self.entries.iter()
    }

    pub fn support(&self) -> usize {
        self.entries.len()
    }

    /// Pointwise inclusion.
    pub fn le(&self, other: &FunTable) -> bool {
        self.domain == other.domain
            && self
                .entries
                .iter()
                .all(|(a, v)| other.get(a).is_some_and(|w| v.is_subset(w)))
    }
}

/// Tables for the free function symbols of a formula.
pub type FunEnv = BTreeMap<String, FunTable>;
