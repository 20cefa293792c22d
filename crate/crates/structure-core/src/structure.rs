use std::fmt;

use crate::error::StructureError;
use crate::relation::RelationValue;

/// Relation symbols with their arities. The order `<=` is implicit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Vocabulary {
    symbols: Vec<(String, usize)>,
}

impl Vocabulary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, name: &str, arity: usize) -> Result<(), StructureError> {
        if is_reserved(name) {
            return Err(StructureError::ReservedName(name.to_string()));
        }
        if arity == 0 {
            return Err(StructureError::ZeroArity);
        }
        if self.arity(name).is_some() {
            return Err(StructureError::DuplicateRelation(name.to_string()));
        }
        self.symbols.push((name.to_string(), arity));
        Ok(())
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.symbols
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, k)| k)
    }

    pub fn symbols(&self) -> &[(String, usize)] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

fn is_reserved(name: &str) -> bool {
    matches!(name, "≤" | "<=" | "leq")
}

/// A finite ordered structure over `{0..n-1}` with the natural order.
#[derive(Clone, PartialEq, Eq)]
pub struct Structure {
    n: u32,
    vocabulary: Vocabulary,
    relations: Vec<RelationValue>,
}

impl Structure {
    pub fn new(n: u32) -> Result<Self, StructureError> {
        if n == 0 {
            return Err(StructureError::EmptyUniverse);
        }
        Ok(Structure {
            n,
            vocabulary: Vocabulary::new(),
            relations: Vec::new(),
        })
    }

    /// Adds an interpretation built from explicit tuples.
    pub fn with_relation<I, T>(
        mut self,
        name: &str,
        arity: usize,
        tuples: I,
    ) -> Result<Self, StructureError>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[u32]>,
    {
        let rel = RelationValue::from_tuples(self.n, arity, tuples)?;
        self.insert(name, rel)?;
        Ok(self)
    }

    pub fn insert(&mut self, name: &str, rel: RelationValue) -> Result<(), StructureError> {
        if rel.universe_size() != self.n {
            return Err(StructureError::ShapeMismatch);
        }
        self.vocabulary.declare(name, rel.arity())?;
        self.relations.push(rel);
        Ok(())
    }

    pub fn universe_size(&self) -> u32 {
        self.n
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn relation(&self, name: &str) -> Option<&RelationValue> {
        self.index_of(name).map(|i| &self.relations[i])
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vocabulary.symbols.iter().position(|(n, _)| n == name)
    }

    pub fn relation_at(&self, idx: usize) -> &RelationValue {
        &self.relations[idx]
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, &RelationValue)> {
        self.vocabulary
            .symbols
            .iter()
            .map(|(n, _)| n.as_str())
            .zip(self.relations.iter())
    }

    /// Checks that every symbol of `vocab` is interpreted with the right arity.
    pub fn conforms_to(&self, vocab: &Vocabulary) -> Result<(), StructureError> {
        for (name, arity) in vocab.symbols() {
            match self.vocabulary.arity(name) {
                None => return Err(StructureError::MissingRelation(name.clone())),
                Some(k) if k != *arity => {
                    return Err(StructureError::ArityMismatch {
                        name: name.clone(),
                        expected: *arity,
                        found: k,
                    })
                }
                Some(_) => {}
            }
        }
        Ok(())
    }

    /// Renders the structure in the line-oriented file format.
    pub fn to_text(&self) -> String {
        let mut out = format!("universe {}\n", self.n);
        for (name, rel) in self.relations() {
            out.push_str(&format!("relation {} {} {{", name, rel.arity()));
            for t in rel.tuples() {
                let parts: Vec<String> = t.iter().map(|a| a.to_string()).collect();
                out.push_str(&format!(" ({})", parts.join(",")));
            }
            out.push_str(" }\n");
        }
        out
    }
}

impl fmt::Debug for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Structure(n={}", self.n)?;
        for (name, rel) in self.relations() {
            write!(f, ", {name}={rel}")?;
        }
        f.write_str(")")
    }
}
