//! Game positions: a partial structure over `1..=k` plus the assignment
//! built so far.

use std::fmt;
use std::sync::Arc;

use maslov_folib::{Definedness, Elem, PartialStructure, Signature};
use serde_json::{json, Value};

use crate::error::{GameError, Result};

/// The player owning a move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Player {
    Abelard,
    Eloisa,
}

/// A position `(𝔏_t, f_t)`. The assignment lists the values of the
/// special variables followed by `y₁..y_t`, so its length fixes the order.
/// Unnamed elements are introduced in increasing order, which makes the
/// structural form canonical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    order: usize,
    structure: PartialStructure,
    assignment: Vec<Elem>,
}

impl Position {
    /// Checks the onto condition: every unnamed element is assigned.
    pub fn new(order: usize, structure: PartialStructure, assignment: Vec<Elem>) -> Result<Self> {
        let k = structure.unnamed_size();
        for i in 1..=k {
            if !assignment.contains(&Elem::Unnamed(i)) {
                return Err(GameError::IllegalPosition(format!(
                    "unnamed element {i} is not in the image of the assignment"
                )));
            }
        }
        if let Some(e) = assignment.iter().find(|e| !structure.contains_elem(**e)) {
            return Err(GameError::IllegalPosition(format!("{e:?} is outside the domain")));
        }
        Ok(Position {
            order,
            structure,
            assignment,
        })
    }

    pub(crate) fn new_unchecked(order: usize, structure: PartialStructure, assignment: Vec<Elem>) -> Self {
        Position {
            order,
            structure,
            assignment,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn structure(&self) -> &PartialStructure {
        &self.structure
    }

    pub fn assignment(&self) -> &[Elem] {
        &self.assignment
    }

    /// Number of unnamed elements.
    pub fn size(&self) -> u32 {
        self.structure.unnamed_size()
    }

    pub fn to_json(&self) -> Value {
        let sig = self.structure.signature();
        let asg: Vec<Value> = self
            .assignment
            .iter()
            .map(|e| match e {
                Elem::Const(_) => json!(e.display(sig)),
                Elem::Unnamed(i) => json!(i),
            })
            .collect();
        json!({
            "order": self.order,
            "assignment": asg,
            "structure": self.structure.to_json_unchecked(),
        })
    }

    pub fn from_json(v: &Value, sig: Arc<Signature>) -> Result<Self> {
        let bad = |m: &str| GameError::Json(m.to_string());
        let order = v.get("order").and_then(Value::as_u64).ok_or_else(|| bad("missing order"))? as usize;
        let sv = v.get("structure").ok_or_else(|| bad("missing structure"))?;
        let total = PartialStructure::from_json(sv, sig.clone())?;
        let supports = sv
            .get("defined_supports")
            .ok_or_else(|| bad("position structures list their defined supports"))?;
        let supports = serde_json::from_value(supports.clone()).map_err(|e| bad(&e.to_string()))?;
        let mut truths = vec![std::collections::BTreeSet::new(); sig.num_relations()];
        for (r, t) in total.iter_true() {
            truths[r.0].insert(t.clone());
        }
        let structure = PartialStructure::from_parts(
            sig.clone(),
            total.unnamed_size(),
            Definedness::BySupport(supports),
            truths,
        )?;
        let mut assignment = Vec::new();
        for e in v.get("assignment").and_then(Value::as_array).ok_or_else(|| bad("missing assignment"))? {
            assignment.push(match e {
                Value::Number(n) => Elem::Unnamed(n.as_u64().ok_or_else(|| bad("bad element"))? as u32),
                Value::String(c) => Elem::Const(
                    sig.constant_id(c)
                        .ok_or_else(|| bad(&format!("unknown constant {c}")))?
                        .0,
                ),
                _ => return Err(bad("element must be a number or a constant")),
            });
        }
        Position::new(order, structure, assignment)
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = self.structure.signature();
        let asg: Vec<String> = self.assignment.iter().map(|e| e.display(sig)).collect();
        f.debug_struct("Position")
            .field("order", &self.order)
            .field("assignment", &asg)
            .field("facts", &self.structure.describe())
            .finish()
    }
}
