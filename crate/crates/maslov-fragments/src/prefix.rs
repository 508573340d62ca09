//! φ-prefixes: for each atom, the binders of its variables in nesting order.

use std::collections::BTreeMap;

use maslov_folib::{Atom, Formula, Quant, Var};
use serde::Serialize;

use crate::error::Result;
use crate::nnf::to_nnf;

pub type Prefix = Vec<(Quant, Var)>;

/// Information about one quantifier occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Binder {
    pub quant: Quant,
    pub var: Var,
    /// Some existential quantifier has this binder in its scope.
    pub under_exists: bool,
    /// Pre-order position of the binder in the formula.
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrefixProfile {
    /// Atom occurrences in left-to-right order with their prefixes.
    pub atoms: Vec<(Atom, Prefix)>,
    pub binders: BTreeMap<Var, Binder>,
}

impl PrefixProfile {
    pub fn prefix_of(&self, index: usize) -> &Prefix {
        &self.atoms[index].1
    }

    pub fn universal_count(&self) -> usize {
        self.binders.values().filter(|b| b.quant == Quant::Forall).count()
    }

    /// Atoms whose prefix has length at least two and does not end with ∃.
    pub fn constrained(&self) -> impl Iterator<Item = &(Atom, Prefix)> {
        self.atoms
            .iter()
            .filter(|(_, p)| p.len() >= 2 && p.last().map(|x| x.0) != Some(Quant::Exists))
    }

    /// Whether any universal quantifier lies in the scope of an existential one.
    pub fn has_alternation(&self) -> bool {
        self.binders
            .values()
            .any(|b| b.quant == Quant::Forall && b.under_exists)
    }
}

/// Computes the profile of a formula; the input is brought to negation
/// normal form first.
pub fn compute_prefixes(f: &Formula) -> Result<PrefixProfile> {
    let f = to_nnf(&f.rectify())?;
    Ok(profile_of_nnf(&f))
}

pub(crate) fn profile_of_nnf(f: &Formula) -> PrefixProfile {
    let mut p = PrefixProfile {
        atoms: Vec::new(),
        binders: BTreeMap::new(),
    };
    walk(f, &mut Vec::new(), false, &mut p);
    p
}

fn walk(f: &Formula, stack: &mut Prefix, under_exists: bool, out: &mut PrefixProfile) {
    match f {
        Formula::Atom(a) => {
            let vars = a.var_set();
            let prefix = stack
                .iter()
                .filter(|(_, v)| vars.contains(v))
                .cloned()
                .collect();
            out.atoms.push((a.clone(), prefix));
        }
        Formula::Not(g) => walk(g, stack, under_exists, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            walk(a, stack, under_exists, out);
            walk(b, stack, under_exists, out);
        }
        Formula::Forall(..) | Formula::Exists(..) => {
            let (q, v, body) = f.as_quantifier().expect("quantifier");
            let position = out.binders.len();
            out.binders.insert(
                v.clone(),
                Binder {
                    quant: q,
                    var: v.clone(),
                    under_exists,
                    position,
                },
            );
            stack.push((q, v.clone()));
            walk(body, stack, under_exists || q == Quant::Exists, out);
            stack.pop();
        }
    }
}

/// Renders a prefix as `forall y. exists z`.
pub fn show_prefix(p: &Prefix) -> String {
    p.iter()
        .map(|(q, v)| format!("{q} {v}"))
        .collect::<Vec<_>>()
        .join(". ")
}
