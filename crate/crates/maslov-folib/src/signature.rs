//! Relational signatures with constants.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{FolError, Result};

/// Index of a relation symbol inside its [`Signature`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelId(pub usize);

/// Index of a constant symbol inside its [`Signature`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConstId(pub u32);

/// Constants in declaration order plus relation symbols with arities.
///
/// Relations are kept sorted by name, which fixes their ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    constants: Vec<String>,
    relations: BTreeMap<String, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_parts<I, J, S, T>(constants: I, relations: J) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        J: IntoIterator<Item = (T, usize)>,
        S: Into<String>,
        T: Into<String>,
    {
        let mut sig = Self::new();
        for c in constants {
            sig.add_constant(c)?;
        }
        for (r, a) in relations {
            sig.add_relation(r, a)?;
        }
        Ok(sig)
    }

    pub fn add_constant(&mut self, name: impl Into<String>) -> Result<ConstId> {
        let name = name.into();
        if self.constants.contains(&name) || self.relations.contains_key(&name) {
            return Err(FolError::DuplicateSymbol(name));
        }
        self.constants.push(name);
        Ok(ConstId(self.constants.len() as u32 - 1))
    }

    /// Adds a relation, or checks the arity if it already exists.
    pub fn add_relation(&mut self, name: impl Into<String>, arity: usize) -> Result<()> {
        let name = name.into();
        if self.constants.contains(&name) {
            return Err(FolError::DuplicateSymbol(name));
        }
        match self.relations.get(&name) {
            Some(&a) if a != arity => Err(FolError::ArityMismatch {
                name,
                expected: a,
                found: arity,
            }),
            Some(_) => Ok(()),
            None => {
                self.relations.insert(name, arity);
                Ok(())
            }
        }
    }

    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    pub fn num_constants(&self) -> usize {
        self.constants.len()
    }

    pub fn constant_id(&self, name: &str) -> Option<ConstId> {
        self.constants
            .iter()
            .position(|c| c == name)
            .map(|i| ConstId(i as u32))
    }

    pub fn constant_name(&self, id: ConstId) -> &str {
        &self.constants[id.0 as usize]
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.constant_id(name).is_some()
    }

    pub fn num_relations(&self) -> usize {
        self.relations.len()
    }

    pub fn relation_id(&self, name: &str) -> Option<RelId> {
        self.relations.keys().position(|r| r == name).map(RelId)
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.relations.get(name).copied()
    }

    /// Relations in id order, with arities.
    pub fn relations(&self) -> impl Iterator<Item = (&str, usize)> + '_ {
        self.relations.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn relation_name(&self, id: RelId) -> &str {
        self.relations.keys().nth(id.0).expect("relation id in range")
    }

    pub fn relation_arity(&self, id: RelId) -> usize {
        *self.relations.values().nth(id.0).expect("relation id in range")
    }

    pub fn max_arity(&self) -> usize {
        self.relations.values().copied().max().unwrap_or(0)
    }

    /// Union of two signatures; fails on conflicting arities.
    pub fn merge(&self, other: &Signature) -> Result<Signature> {
        let mut out = self.clone();
        for c in &other.constants {
            if !out.constants.contains(c) {
                out.add_constant(c.clone())?;
            }
        }
        for (r, a) in &other.relations {
            out.add_relation(r.clone(), *a)?;
        }
        Ok(out)
    }

    /// Same signature with only the listed constants kept (order preserved).
    pub fn restrict_constants(&self, keep: &[String]) -> Signature {
        Signature {
            constants: self
                .constants
                .iter()
                .filter(|c| keep.contains(c))
                .cloned()
                .collect(),
            relations: self.relations.clone(),
        }
    }

    /// Header line in the textual syntax, e.g. `const a b; rel P/1, R/2;`.
    pub fn header(&self) -> String {
        let mut out = String::new();
        if !self.constants.is_empty() {
            out.push_str("const ");
            out.push_str(&self.constants.join(" "));
            out.push(';');
        }
        if !self.relations.is_empty() {
            if !out.is_empty() {
                out.push(' ');
            }
            let rels: Vec<String> = self
                .relations
                .iter()
                .map(|(r, a)| format!("{r}/{a}"))
                .collect();
            out.push_str("rel ");
            out.push_str(&rels.join(", "));
            out.push(';');
        }
        out
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.header())
    }
}
