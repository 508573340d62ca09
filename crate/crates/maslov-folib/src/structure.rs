//! Finite partial structures.
//!
//! The domain is the constants of the signature followed by the unnamed
//! elements `1..=k`. Each relation stores its set of true tuples. Which
//! tuples are defined at all is governed by [`Definedness`]: either every
//! tuple (a total structure), or exactly those tuples whose set of
//! unnamed elements belongs to a listed family of supports. Outer-types,
//! hull-types and game positions are all of the second kind, which keeps
//! them small even for relations of large arity.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{FolError, Result};
use crate::signature::{ConstId, RelId, Signature};

/// A domain element. Constants sort before unnamed elements, matching the
/// enumeration order used everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    Const(u32),
    Unnamed(u32),
}

impl Elem {
    pub fn unnamed(self) -> Option<u32> {
        match self {
            Elem::Unnamed(i) => Some(i),
            Elem::Const(_) => None,
        }
    }

    pub fn is_const(self) -> bool {
        matches!(self, Elem::Const(_))
    }

    pub fn display(self, sig: &Signature) -> String {
        match self {
            Elem::Const(c) => sig.constant_name(ConstId(c)).to_string(),
            Elem::Unnamed(i) => i.to_string(),
        }
    }
}

/// Sorted, duplicate-free set of unnamed elements occurring in a tuple.
pub type Support = Vec<u32>;

pub fn support_of(tuple: &[Elem]) -> Support {
    let mut s: Vec<u32> = tuple.iter().filter_map(|e| e.unnamed()).collect();
    s.sort_unstable();
    s.dedup();
    s
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Definedness {
    Total,
    /// A tuple is defined iff its support is listed.
    BySupport(BTreeSet<Support>),
}

/// A structure whose relation entries may be undefined.
#[derive(Clone)]
pub struct PartialStructure {
    sig: Arc<Signature>,
    unnamed: u32,
    truths: Vec<BTreeSet<Vec<Elem>>>,
    defined: Definedness,
}

impl PartialStructure {
    /// Total structure with every relation empty.
    pub fn empty_total(sig: Arc<Signature>, unnamed: u32) -> Self {
        let n = sig.num_relations();
        PartialStructure {
            sig,
            unnamed,
            truths: vec![BTreeSet::new(); n],
            defined: Definedness::Total,
        }
    }

    /// Partial structure defined exactly on the given supports, all false.
    pub fn empty_partial(sig: Arc<Signature>, unnamed: u32, supports: BTreeSet<Support>) -> Self {
        let n = sig.num_relations();
        PartialStructure {
            sig,
            unnamed,
            truths: vec![BTreeSet::new(); n],
            defined: Definedness::BySupport(supports),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn signature_arc(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn unnamed_size(&self) -> u32 {
        self.unnamed
    }

    pub fn definedness(&self) -> &Definedness {
        &self.defined
    }

    pub fn is_total(&self) -> bool {
        matches!(self.defined, Definedness::Total)
    }

    /// Constants followed by `1..=k`.
    pub fn domain(&self) -> Vec<Elem> {
        let mut d: Vec<Elem> = (0..self.sig.num_constants() as u32).map(Elem::Const).collect();
        d.extend((1..=self.unnamed).map(Elem::Unnamed));
        d
    }

    pub fn contains_elem(&self, e: Elem) -> bool {
        match e {
            Elem::Const(c) => (c as usize) < self.sig.num_constants(),
            Elem::Unnamed(i) => i >= 1 && i <= self.unnamed,
        }
    }

    pub fn is_defined_support(&self, s: &[u32]) -> bool {
        match &self.defined {
            Definedness::Total => true,
            Definedness::BySupport(set) => set.contains(s),
        }
    }

    pub fn is_defined(&self, tuple: &[Elem]) -> bool {
        match &self.defined {
            Definedness::Total => true,
            Definedness::BySupport(set) => set.contains(&support_of(tuple)),
        }
    }

    /// Truth value, or `None` when undefined. Panics on foreign elements.
    pub fn value(&self, rel: RelId, tuple: &[Elem]) -> Option<bool> {
        debug_assert!(tuple.iter().all(|e| self.contains_elem(*e)));
        if !self.is_defined(tuple) {
            return None;
        }
        Some(self.truths[rel.0].contains(tuple))
    }

    pub fn value_by_name(&self, rel: &str, tuple: &[Elem]) -> Result<Option<bool>> {
        let id = self
            .sig
            .relation_id(rel)
            .ok_or_else(|| FolError::UnknownRelation(rel.to_string()))?;
        if tuple.len() != self.sig.relation_arity(id) {
            return Err(FolError::ArityMismatch {
                name: rel.to_string(),
                expected: self.sig.relation_arity(id),
                found: tuple.len(),
            });
        }
        if let Some(e) = tuple.iter().find(|e| !self.contains_elem(**e)) {
            return Err(FolError::OutOfDomain(format!("{e:?}")));
        }
        Ok(self.value(id, tuple))
    }

    /// Marks a defined tuple as true. Errors on undefined or foreign tuples.
    pub fn set_true(&mut self, rel: RelId, tuple: Vec<Elem>) -> Result<()> {
        if tuple.len() != self.sig.relation_arity(rel) {
            return Err(FolError::ArityMismatch {
                name: self.sig.relation_name(rel).to_string(),
                expected: self.sig.relation_arity(rel),
                found: tuple.len(),
            });
        }
        if let Some(e) = tuple.iter().find(|e| !self.contains_elem(**e)) {
            return Err(FolError::OutOfDomain(format!("{e:?}")));
        }
        if !self.is_defined(&tuple) {
            return Err(FolError::InvalidStructure(format!(
                "tuple {} of {} is not defined",
                self.render_tuple(&tuple),
                self.sig.relation_name(rel)
            )));
        }
        self.truths[rel.0].insert(tuple);
        Ok(())
    }

    pub fn set_true_by_name(&mut self, rel: &str, tuple: Vec<Elem>) -> Result<()> {
        let id = self
            .sig
            .relation_id(rel)
            .ok_or_else(|| FolError::UnknownRelation(rel.to_string()))?;
        self.set_true(id, tuple)
    }

    /// Inserts without any checks; used by internal constructions that
    /// maintain the invariants themselves.
    pub(crate) fn insert_unchecked(&mut self, rel: RelId, tuple: Vec<Elem>) {
        self.truths[rel.0].insert(tuple);
    }

    /// Adds supports to a partial structure (no-op when total).
    pub fn define_supports(&mut self, supports: impl IntoIterator<Item = Support>) {
        if let Definedness::BySupport(set) = &mut self.defined {
            set.extend(supports);
        }
    }

    pub fn true_tuples(&self, rel: RelId) -> &BTreeSet<Vec<Elem>> {
        &self.truths[rel.0]
    }

    pub fn num_true(&self) -> usize {
        self.truths.iter().map(|t| t.len()).sum()
    }

    /// Iterates `(relation, tuple)` over all true tuples.
    pub fn iter_true(&self) -> impl Iterator<Item = (RelId, &Vec<Elem>)> + '_ {
        self.truths
            .iter()
            .enumerate()
            .flat_map(|(r, set)| set.iter().map(move |t| (RelId(r), t)))
    }

    pub fn render_tuple(&self, tuple: &[Elem]) -> String {
        let parts: Vec<String> = tuple.iter().map(|e| e.display(&self.sig)).collect();
        format!("({})", parts.join(","))
    }

    /// True tuples whose support is exactly `s`, per relation.
    pub fn truths_with_support<'a>(
        &'a self,
        s: &'a [u32],
    ) -> impl Iterator<Item = (RelId, &'a Vec<Elem>)> + 'a {
        self.iter_true().filter(move |(_, t)| support_of(t) == s)
    }

    /// Builds a structure with an explicit definedness and truth table.
    pub fn from_parts(
        sig: Arc<Signature>,
        unnamed: u32,
        defined: Definedness,
        truths: Vec<BTreeSet<Vec<Elem>>>,
    ) -> Result<Self> {
        if truths.len() != sig.num_relations() {
            return Err(FolError::InvalidStructure("wrong relation count".into()));
        }
        let s = PartialStructure {
            sig,
            unnamed,
            truths,
            defined,
        };
        for (r, t) in s.iter_true() {
            if t.len() != s.sig.relation_arity(r) || !t.iter().all(|e| s.contains_elem(*e)) {
                return Err(FolError::InvalidStructure(format!(
                    "bad tuple {:?} for {}",
                    t,
                    s.sig.relation_name(r)
                )));
            }
            if !s.is_defined(t) {
                return Err(FolError::InvalidStructure(format!(
                    "true tuple {} of {} lies outside the defined part",
                    s.render_tuple(t),
                    s.sig.relation_name(r)
                )));
            }
        }
        Ok(s)
    }

    /// Same content over another (compatible) signature `Arc`.
    pub fn with_signature(&self, sig: Arc<Signature>) -> Result<Self> {
        if *sig != *self.sig {
            return Err(FolError::Invalid("signature mismatch".into()));
        }
        let mut s = self.clone();
        s.sig = sig;
        Ok(s)
    }

    /// Renames unnamed elements through `map` (index `i-1` holds the image
    /// of `i`), producing a structure with `new_size` unnamed elements.
    /// Supports are mapped accordingly.
    pub fn relabel(&self, map: &[u32], new_size: u32) -> PartialStructure {
        let f = |e: &Elem| match e {
            Elem::Unnamed(i) => Elem::Unnamed(map[*i as usize - 1]),
            c => *c,
        };
        let truths = self
            .truths
            .iter()
            .map(|set| set.iter().map(|t| t.iter().map(f).collect()).collect())
            .collect();
        let defined = match &self.defined {
            Definedness::Total => Definedness::Total,
            Definedness::BySupport(set) => Definedness::BySupport(
                set.iter()
                    .map(|s| {
                        let mut v: Vec<u32> = s.iter().map(|i| map[*i as usize - 1]).collect();
                        v.sort_unstable();
                        v
                    })
                    .collect(),
            ),
        };
        PartialStructure {
            sig: self.sig.clone(),
            unnamed: new_size,
            truths,
            defined,
        }
    }

    /// Structure JSON: listed tuples are true, all others false.
    pub fn to_json(&self) -> Result<Value> {
        if !self.is_total() {
            return Err(FolError::NotTotal);
        }
        Ok(self.to_json_unchecked())
    }

    /// JSON including the defined supports when the structure is partial.
    pub fn to_json_unchecked(&self) -> Value {
        let elem = |e: &Elem| match e {
            Elem::Const(c) => json!(self.sig.constant_name(ConstId(*c))),
            Elem::Unnamed(i) => json!(i),
        };
        let mut rels = serde_json::Map::new();
        for (r, set) in self.truths.iter().enumerate() {
            let name = self.sig.relation_name(RelId(r)).to_string();
            let tuples: Vec<Value> = set
                .iter()
                .map(|t| Value::Array(t.iter().map(elem).collect()))
                .collect();
            rels.insert(name, Value::Array(tuples));
        }
        let mut obj = serde_json::Map::new();
        obj.insert("constants".into(), json!(self.sig.constants()));
        obj.insert("unnamed".into(), json!(self.unnamed));
        obj.insert("relations".into(), Value::Object(rels));
        if let Definedness::BySupport(set) = &self.defined {
            obj.insert("defined_supports".into(), json!(set));
        }
        Value::Object(obj)
    }

    /// Reads structure JSON against `sig`. Constants listed in the JSON
    /// must match the signature's constants; relations missing from the
    /// JSON are empty.
    pub fn from_json(value: &Value, sig: Arc<Signature>) -> Result<Self> {
        let bad = |m: &str| FolError::InvalidStructure(m.to_string());
        let obj = value.as_object().ok_or_else(|| bad("expected an object"))?;
        if let Some(cs) = obj.get("constants") {
            let cs: Vec<String> = serde_json::from_value(cs.clone())
                .map_err(|e| bad(&format!("constants: {e}")))?;
            if cs != sig.constants() {
                return Err(bad("constants differ from the formula's signature"));
            }
        }
        let unnamed = obj
            .get("unnamed")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing `unnamed`"))? as u32;
        let mut s = PartialStructure::empty_total(sig.clone(), unnamed);
        if let Some(rels) = obj.get("relations") {
            let rels = rels.as_object().ok_or_else(|| bad("`relations` must be an object"))?;
            for (name, tuples) in rels {
                let id = sig
                    .relation_id(name)
                    .ok_or_else(|| FolError::UnknownRelation(name.clone()))?;
                let tuples = tuples.as_array().ok_or_else(|| bad("tuples must be arrays"))?;
                for t in tuples {
                    let t = t.as_array().ok_or_else(|| bad("tuple must be an array"))?;
                    let mut tuple = Vec::with_capacity(t.len());
                    for e in t {
                        tuple.push(match e {
                            Value::Number(n) => Elem::Unnamed(
                                n.as_u64().ok_or_else(|| bad("bad element"))? as u32,
                            ),
                            Value::String(c) => Elem::Const(
                                sig.constant_id(c)
                                    .ok_or_else(|| FolError::UnknownConstant(c.clone()))?
                                    .0,
                            ),
                            _ => return Err(bad("element must be an integer or a constant")),
                        });
                    }
                    s.set_true(id, tuple)?;
                }
            }
        }
        Ok(s)
    }

    /// Restriction to the relations of `sub` (a sub-signature with the
    /// same constants).
    pub fn reduct(&self, sub: Arc<Signature>) -> Result<Self> {
        if sub.constants() != self.sig.constants() {
            return Err(FolError::Invalid("reduct must keep the constants".into()));
        }
        let mut truths = Vec::with_capacity(sub.num_relations());
        for (name, arity) in sub.relations() {
            let id = self
                .sig
                .relation_id(name)
                .ok_or_else(|| FolError::UnknownRelation(name.to_string()))?;
            if self.sig.relation_arity(id) != arity {
                return Err(FolError::ArityMismatch {
                    name: name.to_string(),
                    expected: self.sig.relation_arity(id),
                    found: arity,
                });
            }
            truths.push(self.truths[id.0].clone());
        }
        Ok(PartialStructure {
            sig: sub,
            unnamed: self.unnamed,
            truths,
            defined: self.defined.clone(),
        })
    }

    /// Expansion to a larger signature; the new relations are empty.
    pub fn expand_signature(&self, sup: Arc<Signature>) -> Result<Self> {
        if sup.constants() != self.sig.constants() {
            return Err(FolError::Invalid("expansion must keep the constants".into()));
        }
        let mut truths = vec![BTreeSet::new(); sup.num_relations()];
        for (r, set) in self.truths.iter().enumerate() {
            let name = self.sig.relation_name(RelId(r));
            let id = sup
                .relation_id(name)
                .ok_or_else(|| FolError::UnknownRelation(name.to_string()))?;
            truths[id.0] = set.clone();
        }
        Ok(PartialStructure {
            sig: sup,
            unnamed: self.unnamed,
            truths,
            defined: self.defined.clone(),
        })
    }

    /// Summary map `relation -> rendered true tuples`, for diagnostics.
    pub fn describe(&self) -> BTreeMap<String, Vec<String>> {
        self.truths
            .iter()
            .enumerate()
            .map(|(r, set)| {
                (
                    self.sig.relation_name(RelId(r)).to_string(),
                    set.iter().map(|t| self.render_tuple(t)).collect(),
                )
            })
            .collect()
    }
}

impl PartialEq for PartialStructure {
    fn eq(&self, other: &Self) -> bool {
        self.unnamed == other.unnamed && self.truths == other.truths && self.defined == other.defined
    }
}

impl Eq for PartialStructure {}

impl Hash for PartialStructure {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.unnamed.hash(state);
        self.truths.hash(state);
        self.defined.hash(state);
    }
}

impl PartialOrd for PartialStructure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PartialStructure {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.unnamed, &self.truths, &self.defined).cmp(&(other.unnamed, &other.truths, &other.defined))
    }
}

impl fmt::Debug for PartialStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PartialStructure")
            .field("unnamed", &self.unnamed)
            .field("total", &self.is_total())
            .field("true", &self.describe())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Arc<Signature> {
        Arc::new(Signature::from_parts(["c"], [("R", 2), ("P", 1)]).unwrap())
    }

    #[test]
    fn json_roundtrip() {
        let s = sig();
        let mut a = PartialStructure::empty_total(s.clone(), 2);
        a.set_true_by_name("R", vec![Elem::Unnamed(1), Elem::Const(0)]).unwrap();
        a.set_true_by_name("P", vec![Elem::Unnamed(2)]).unwrap();
        let v = a.to_json().unwrap();
        assert_eq!(v["relations"]["R"], json!([[1, "c"]]));
        let b = PartialStructure::from_json(&v, s).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn support_definedness() {
        let s = sig();
        let supports: BTreeSet<Support> = [vec![], vec![1]].into_iter().collect();
        let mut a = PartialStructure::empty_partial(s.clone(), 2, supports);
        let r = s.relation_id("R").unwrap();
        assert_eq!(a.value(r, &[Elem::Unnamed(1), Elem::Const(0)]), Some(false));
        assert_eq!(a.value(r, &[Elem::Unnamed(1), Elem::Unnamed(2)]), None);
        assert!(a.set_true(r, vec![Elem::Unnamed(2), Elem::Unnamed(2)]).is_err());
        a.set_true(r, vec![Elem::Unnamed(1), Elem::Unnamed(1)]).unwrap();
        assert_eq!(a.value(r, &[Elem::Unnamed(1), Elem::Unnamed(1)]), Some(true));
    }

    #[test]
    fn constants_sort_first() {
        assert!(Elem::Const(5) < Elem::Unnamed(1));
        let a = PartialStructure::empty_total(sig(), 2);
        assert_eq!(a.domain(), vec![Elem::Const(0), Elem::Unnamed(1), Elem::Unnamed(2)]);
    }
}
