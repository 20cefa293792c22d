use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::StructureError;

/// Upper bound on the tuple space `n^k` of a single relation value.
pub const MAX_TUPLE_SPACE: u64 = 1 << 22;

/// Largest `n^k` for which every relation of that arity may be enumerated.
pub const ENUMERATION_GUARD: u64 = 24;

/// Number of k-tuples over an n-element universe, if it fits the tuple space.
pub fn tuple_space(n: u32, k: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(n as u64)?;
        if acc > MAX_TUPLE_SPACE {
            return None;
        }
    }
    Some(acc)
}

#[derive(PartialEq, Eq, Hash)]
struct Inner {
    n: u32,
    arity: u32,
    words: Vec<u64>,
}

/// A k-ary relation over `{0..n-1}` stored as a characteristic bit vector.
///
/// Bit `i` is the i-th tuple in lexicographic order, so structural equality
/// is set equality and cloning is a reference-count bump.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RelationValue {
    inner: Arc<Inner>,
}

impl RelationValue {
    pub fn empty(n: u32, arity: usize) -> Result<Self, StructureError> {
        let space = Self::space_for(n, arity)?;
        Ok(Self::from_words(n, arity, vec![0; words_for(space)]))
    }

    pub fn full(n: u32, arity: usize) -> Result<Self, StructureError> {
        let space = Self::space_for(n, arity)?;
        let mut words = vec![u64::MAX; words_for(space)];
        trim(&mut words, space);
        Ok(Self::from_words(n, arity, words))
    }

    /// Builds a relation from explicit tuples; duplicates collapse.
    pub fn from_tuples<I, T>(n: u32, arity: usize, tuples: I) -> Result<Self, StructureError>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[u32]>,
    {
        let space = Self::space_for(n, arity)?;
        let mut words = vec![0u64; words_for(space)];
        for t in tuples {
            let t = t.as_ref();
            if t.len() != arity {
                return Err(StructureError::TupleArity {
                    expected: arity,
                    found: t.len(),
                });
            }
            if let Some(&bad) = t.iter().find(|&&a| a >= n) {
                return Err(StructureError::ElementOutOfRange { element: bad, n });
            }
            let idx = index_unchecked(n, t);
            words[idx / 64] |= 1 << (idx % 64);
        }
        Ok(Self::from_words(n, arity, words))
    }

    /// The relation whose characteristic vector is the low `n^k` bits of `mask`.
    pub fn from_mask(n: u32, arity: usize, mask: u64) -> Result<Self, StructureError> {
        let space = Self::space_for(n, arity)?;
        if space > 64 {
            return Err(StructureError::GuardExceeded { n, arity });
        }
        let mut words = vec![mask];
        trim(&mut words, space);
        Ok(Self::from_words(n, arity, words))
    }

    /// Builds a relation from a membership predicate over tuple indices.
    pub fn from_fn(
        n: u32,
        arity: usize,
        mut member: impl FnMut(&[u32]) -> bool,
    ) -> Result<Self, StructureError> {
        let space = Self::space_for(n, arity)?;
        let mut words = vec![0u64; words_for(space)];
        let mut tuple = vec![0u32; arity];
        for idx in 0..space as usize {
            if member(&tuple) {
                words[idx / 64] |= 1 << (idx % 64);
            }
            advance(&mut tuple, n);
        }
        Ok(Self::from_words(n, arity, words))
    }

    pub(crate) fn from_words(n: u32, arity: usize, words: Vec<u64>) -> Self {
        RelationValue {
            inner: Arc::new(Inner {
                n,
                arity: arity as u32,
                words,
            }),
        }
    }

    fn space_for(n: u32, arity: usize) -> Result<u64, StructureError> {
        if n == 0 {
            return Err(StructureError::EmptyUniverse);
        }
        if arity == 0 {
            return Err(StructureError::ZeroArity);
        }
        tuple_space(n, arity).ok_or(StructureError::TupleSpaceTooLarge { n, arity })
    }

    pub fn universe_size(&self) -> u32 {
        self.inner.n
    }

    pub fn arity(&self) -> usize {
        self.inner.arity as usize
    }

    /// `n^k`, the number of candidate tuples.
    pub fn tuple_space(&self) -> usize {
        (self.inner.n as usize).pow(self.inner.arity)
    }

    pub fn words(&self) -> &[u64] {
        &self.inner.words
    }

    /// Lexicographic rank of a tuple, or `None` if a component is out of range.
    pub fn index_of(&self, tuple: &[u32]) -> Option<usize> {
        if tuple.len() != self.arity() || tuple.iter().any(|&a| a >= self.inner.n) {
            return None;
        }
        Some(index_unchecked(self.inner.n, tuple))
    }

    pub fn contains(&self, tuple: &[u32]) -> bool {
        match self.index_of(tuple) {
            Some(idx) => self.contains_index(idx),
            None => false,
        }
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        self.inner
            .words
            .get(idx / 64)
            .is_some_and(|w| w >> (idx % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.inner.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.words.iter().all(|&w| w == 0)
    }

    /// Members in lexicographic order.
    pub fn tuples(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::with_capacity(self.len());
        let mut tuple = vec![0u32; self.arity()];
        for idx in 0..self.tuple_space() {
            if self.contains_index(idx) {
                out.push(tuple.clone());
            }
            advance(&mut tuple, self.inner.n);
        }
        out
    }

    fn same_shape(&self, other: &Self) -> bool {
        self.inner.n == other.inner.n && self.inner.arity == other.inner.arity
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.same_shape(other)
            && self
                .words()
                .iter()
                .zip(other.words())
                .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &Self) -> Result<Self, StructureError> {
        if !self.same_shape(other) {
            return Err(StructureError::ShapeMismatch);
        }
        let words = self
            .words()
            .iter()
            .zip(other.words())
            .map(|(a, b)| a | b)
            .collect();
        Ok(Self::from_words(self.inner.n, self.arity(), words))
    }

    /// Characteristic vector, first tuple first.
    pub fn characteristic_bits(&self) -> String {
        (0..self.tuple_space())
            .map(|i| if self.contains_index(i) { '1' } else { '0' })
            .collect()
    }
}

fn words_for(space: u64) -> usize {
    (space as usize).div_ceil(64).max(1)
}

fn trim(words: &mut [u64], space: u64) {
    let rem = (space % 64) as u32;
    let last = words.len() - 1;
    if rem != 0 {
        words[last] &= (1u64 << rem) - 1;
    }
    if space == 0 {
        words[last] = 0;
    }
}

fn index_unchecked(n: u32, tuple: &[u32]) -> usize {
    tuple
        .iter()
        .fold(0usize, |acc, &a| acc * n as usize + a as usize)
}

/// Steps `tuple` to its lexicographic successor, wrapping at the end.
pub fn advance(tuple: &mut [u32], n: u32) {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < n {
            return;
        }
        *slot = 0;
    }
}

impl Ord for RelationValue {
    /// Arity, then universe size, then the characteristic vector read as a
    /// binary number whose lowest bit is the first tuple.
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.inner, &other.inner) {
            return Ordering::Equal;
        }
        self.inner
            .arity
            .cmp(&other.inner.arity)
            .then(self.inner.n.cmp(&other.inner.n))
            .then_with(|| {
                for (a, b) in self.words().iter().zip(other.words()).rev() {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for RelationValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RelationValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, t) in self.tuples().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("(")?;
            for (j, a) in t.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for RelationValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}{}", self.arity(), self)
    }
}

/// All `2^(n^k)` relations of arity `k`, as a binary counter over the
/// characteristic vector with the first tuple as the lowest bit.
pub fn enumerate_relations(n: u32, arity: usize) -> Result<Relations, StructureError> {
    if n == 0 {
        return Err(StructureError::EmptyUniverse);
    }
    if arity == 0 {
        return Err(StructureError::ZeroArity);
    }
    match tuple_space(n, arity) {
        Some(space) if space <= ENUMERATION_GUARD => Ok(Relations {
            n,
            arity,
            next: 0,
            end: 1u64 << space,
        }),
        _ => Err(StructureError::GuardExceeded { n, arity }),
    }
}

/// Iterator returned by [`enumerate_relations`].
#[derive(Clone, Debug)]
pub struct Relations {
    n: u32,
    arity: usize,
    next: u64,
    end: u64,
}

impl Iterator for Relations {
    type Item = RelationValue;

    fn next(&mut self) -> Option<RelationValue> {
        if self.next == self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        Some(RelationValue::from_words(self.n, self.arity, vec![mask]))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Relations {}
