use std::fmt;

use crate::error::StructureError;
use crate::relation::RelationValue;
use crate::structure::Structure;

/// A letter: a universe element or a relation value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Elem(u32),
    Rel(RelationValue),
}

/// A finite word over elements and relations; the empty word is ε.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolString(Vec<Symbol>);

impl SymbolString {
    pub fn epsilon() -> Self {
        SymbolString(Vec::new())
    }

    pub fn letter(s: Symbol) -> Self {
        SymbolString(vec![s])
    }

    pub fn from_letters(letters: Vec<Symbol>) -> Self {
        SymbolString(letters)
    }

    pub fn elems(elems: &[u32]) -> Self {
        SymbolString(elems.iter().map(|&a| Symbol::Elem(a)).collect())
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &SymbolString) -> SymbolString {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        SymbolString(v)
    }

    pub fn prepend(&self, s: &Symbol) -> SymbolString {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(s.clone());
        v.extend_from_slice(&self.0);
        SymbolString(v)
    }

    pub fn is_element_only(&self) -> bool {
        self.0.iter().all(|s| matches!(s, Symbol::Elem(_)))
    }

    pub fn is_relation_only(&self) -> bool {
        self.0.iter().all(|s| matches!(s, Symbol::Rel(_)))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Elem(a) => write!(f, "{a}"),
            Symbol::Rel(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SymbolString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymbolString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}

/// Smallest `w` with `2^w >= m`.
pub fn ceil_log2(m: u64) -> u32 {
    if m <= 1 {
        0
    } else {
        64 - (m - 1).leading_zeros()
    }
}

/// Encodes a word as a bitstring.
///
/// Elements use `ceil(log2 n)` bits, most significant first. A relation of
/// arity `k` is a tag of `ceil(log2(max_arity+1))` bits holding `k`,
/// followed by its `n^k` characteristic bits.
pub fn encode_string(
    s: &SymbolString,
    ctx: &Structure,
    max_arity: usize,
) -> Result<String, StructureError> {
    let n = ctx.universe_size();
    let elem_width = ceil_log2(n as u64);
    let tag_width = ceil_log2(max_arity as u64 + 1);
    let mut out = String::new();
    for letter in s.letters() {
        match letter {
            Symbol::Elem(a) => {
                if *a >= n {
                    return Err(StructureError::ElementOutOfRange { element: *a, n });
                }
                push_bits(&mut out, *a as u64, elem_width);
            }
            Symbol::Rel(r) => {
                if r.arity() > max_arity {
                    return Err(StructureError::ArityTooLarge {
                        arity: r.arity(),
                        max: max_arity,
                    });
                }
                if r.universe_size() != n {
                    return Err(StructureError::ForeignLetter(r.to_string()));
                }
                push_bits(&mut out, r.arity() as u64, tag_width);
                out.push_str(&r.characteristic_bits());
            }
        }
    }
    Ok(out)
}

fn push_bits(out: &mut String, value: u64, width: u32) {
    for i in (0..width).rev() {
        out.push(if value >> i & 1 == 1 { '1' } else { '0' });
    }
}
