//! Identification of constants.
//!
//! Structures in this workspace interpret distinct constants by distinct
//! elements. A sentence whose models may identify constants is handled by
//! guessing which constants coincide, rewriting each constant to the first
//! constant of its block, and solving the rewritten sentence.

use std::collections::BTreeMap;
use std::sync::Arc;

use maslov_folib::{model_check_sentence, Formula, PartialStructure, Signature, Term};
use serde::Serialize;

use crate::error::{ReductionError, Result};

/// Maximum number of constants for which partitions are enumerated.
pub const PARTITION_CAP: usize = 8;

/// A partition of an ordered list of constants. The representative of a
/// block is its member that comes first in the list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ConstantPartition {
    constants: Vec<String>,
    /// Block index of each constant; blocks are numbered by first occurrence.
    block_of: Vec<usize>,
}

impl ConstantPartition {
    pub fn identity(constants: &[String]) -> Self {
        ConstantPartition {
            constants: constants.to_vec(),
            block_of: (0..constants.len()).collect(),
        }
    }

    pub fn from_blocks(constants: &[String], blocks: &[Vec<String>]) -> Result<Self> {
        let mut assigned: Vec<Option<usize>> = vec![None; constants.len()];
        for (b, block) in blocks.iter().enumerate() {
            for c in block {
                let i = constants
                    .iter()
                    .position(|x| x == c)
                    .ok_or_else(|| ReductionError::UnknownConstant(c.clone()))?;
                if assigned[i].replace(b).is_some() {
                    return Err(ReductionError::NotAPartition(c.clone()));
                }
            }
        }
        let raw: Vec<usize> = assigned
            .iter()
            .zip(constants)
            .map(|(a, c)| a.ok_or_else(|| ReductionError::NotAPartition(c.clone())))
            .collect::<Result<_>>()?;
        Ok(Self::from_labels(constants, &raw))
    }

    /// Builds a partition from arbitrary block labels, renumbering them.
    fn from_labels(constants: &[String], labels: &[usize]) -> Self {
        let mut renumber = BTreeMap::new();
        let block_of = labels
            .iter()
            .map(|l| {
                let n = renumber.len();
                *renumber.entry(*l).or_insert(n)
            })
            .collect();
        ConstantPartition {
            constants: constants.to_vec(),
            block_of,
        }
    }

    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    pub fn num_blocks(&self) -> usize {
        self.block_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<String>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (c, b) in self.constants.iter().zip(&self.block_of) {
            out[*b].push(c.clone());
        }
        out
    }

    /// Index of the representative of constant number `i`.
    pub fn iota(&self, i: usize) -> usize {
        let b = self.block_of[i];
        self.block_of.iter().position(|x| *x == b).expect("block has a member")
    }

    pub fn representative(&self, c: &str) -> Result<&str> {
        let i = self
            .constants
            .iter()
            .position(|x| x == c)
            .ok_or_else(|| ReductionError::UnknownConstant(c.to_string()))?;
        Ok(&self.constants[self.iota(i)])
    }

    pub fn representatives(&self) -> Vec<String> {
        (0..self.constants.len())
            .filter(|&i| self.iota(i) == i)
            .map(|i| self.constants[i].clone())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.num_blocks() == self.constants.len()
    }
}

/// Every partition of `constants`, in the order of restricted growth strings.
pub fn enumerate_partitions(constants: &[String]) -> Result<Vec<ConstantPartition>> {
    if constants.len() > PARTITION_CAP {
        return Err(ReductionError::TooManyConstants {
            found: constants.len(),
            cap: PARTITION_CAP,
        });
    }
    let n = constants.len();
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(i: usize, max: usize, labels: &mut Vec<usize>, cs: &[String], out: &mut Vec<ConstantPartition>) {
        if i == labels.len() {
            out.push(ConstantPartition::from_labels(cs, labels));
            return;
        }
        for l in 0..=max {
            labels[i] = l;
            rec(i + 1, max.max(l + 1), labels, cs, out);
        }
    }
    if n == 0 {
        out.push(ConstantPartition::identity(constants));
    } else {
        labels[0] = 0;
        rec(1, 1, &mut labels, constants, &mut out);
    }
    Ok(out)
}

fn check_covers(sig: &Signature, p: &ConstantPartition) -> Result<()> {
    for c in sig.constants() {
        if !p.constants.contains(c) {
            return Err(ReductionError::NotAPartition(c.clone()));
        }
    }
    for c in &p.constants {
        if !sig.is_constant(c) {
            return Err(ReductionError::UnknownConstant(c.clone()));
        }
    }
    Ok(())
}

/// Replaces every constant by the representative of its block. The symbol
/// count of the formula does not change.
pub fn reduce_constants(f: &Formula, p: &ConstantPartition) -> Result<Formula> {
    for c in f.constants() {
        p.representative(&c)?;
    }
    Ok(f.map_terms(&|t| match t {
        Term::Const(c) => Term::Const(p.representative(c).expect("checked").to_string()),
        other => other.clone(),
    }))
}

/// The signature of the reduced sentence: only representatives remain.
pub fn reduced_signature(sig: &Signature, p: &ConstantPartition) -> Result<Signature> {
    check_covers(sig, p)?;
    Ok(sig.restrict_constants(&p.representatives()))
}

/// A structure over the reduced signature together with the denotation of
/// every original constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedModel {
    pub base: PartialStructure,
    /// Original constant name to the representative it denotes in `base`.
    pub denotation: BTreeMap<String, String>,
}

impl ExpandedModel {
    /// Truth of a sentence over the original signature. A constant term
    /// denotes the element of its representative, so evaluation amounts to
    /// evaluating the substituted sentence in the base structure.
    pub fn satisfies(&self, f: &Formula) -> Result<bool> {
        let g = f.map_terms(&|t| match t {
            Term::Const(c) => Term::Const(self.denotation.get(c).cloned().unwrap_or_else(|| c.clone())),
            other => other.clone(),
        });
        Ok(model_check_sentence(&self.base, &g)?)
    }

    /// The partition induced by the denotation map.
    pub fn induced_partition(&self, constants: &[String]) -> ConstantPartition {
        let labels: Vec<usize> = constants
            .iter()
            .map(|c| {
                let rep = &self.denotation[c];
                constants.iter().position(|x| x == rep).expect("representative listed")
            })
            .collect();
        ConstantPartition::from_labels(constants, &labels)
    }
}

/// Interprets the missing constants of `original` by their representatives.
/// `reduced` is checked to be a model of `reduced_formula`.
pub fn expand_model(
    reduced: &PartialStructure,
    reduced_formula: &Formula,
    p: &ConstantPartition,
    original: &Signature,
) -> Result<ExpandedModel> {
    check_covers(original, p)?;
    let expected = reduced_signature(original, p)?;
    if reduced.signature().constants() != expected.constants() {
        return Err(ReductionError::Fol(maslov_folib::FolError::Invalid(
            "structure is not over the reduced signature".into(),
        )));
    }
    if !model_check_sentence(reduced, reduced_formula)? {
        return Err(ReductionError::NotAModel);
    }
    let denotation = p
        .constants
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), p.constants[p.iota(i)].clone()))
        .collect();
    Ok(ExpandedModel {
        base: reduced.clone(),
        denotation,
    })
}

/// Convenience: the reduced sentence together with its signature.
pub fn reduce_with_signature(
    f: &Formula,
    sig: &Signature,
    p: &ConstantPartition,
) -> Result<(Formula, Arc<Signature>)> {
    Ok((reduce_constants(f, p)?, Arc::new(reduced_signature(sig, p)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use maslov_folib::{parse_formula, Elem};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..=5)
            .map(|n| {
                let cs: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
                enumerate_partitions(&cs).unwrap().len()
            })
            .collect();
        assert_eq!(counts, [1, 1, 2, 5, 15, 52]);
        let nine: Vec<String> = (0..9).map(|i| format!("c{i}")).collect();
        assert!(enumerate_partitions(&nine).is_err());
    }

    #[test]
    fn merging_two_constants() {
        let p = parse_formula("const c1 c2; P(c1,c2)").unwrap();
        let part = ConstantPartition::from_blocks(
            p.signature.constants(),
            &[names(&["c1", "c2"])],
        )
        .unwrap();
        let g = reduce_constants(&p.formula, &part).unwrap();
        assert_eq!(g.to_string(), "P(c1,c1)");
        assert_eq!(g.size(), p.formula.size());
    }

    #[test]
    fn identity_partition_changes_nothing() {
        let p = parse_formula("const a b; forall x. R(x,a) | R(b,x)").unwrap();
        let id = ConstantPartition::identity(p.signature.constants());
        assert!(id.is_identity());
        assert_eq!(reduce_constants(&p.formula, &id).unwrap(), p.formula);
    }

    #[test]
    fn expansion_satisfies_the_original() {
        let p = parse_formula("const c1 c2; P(c1,c2)").unwrap();
        let part = ConstantPartition::from_blocks(
            p.signature.constants(),
            &[names(&["c1", "c2"])],
        )
        .unwrap();
        let (g, sig) = reduce_with_signature(&p.formula, &p.signature, &part).unwrap();
        let mut b = PartialStructure::empty_total(sig, 0);
        b.set_true_by_name("P", vec![Elem::Const(0), Elem::Const(0)]).unwrap();
        let e = expand_model(&b, &g, &part, &p.signature).unwrap();
        assert!(e.satisfies(&p.formula).unwrap());
        assert_eq!(e.induced_partition(p.signature.constants()), part);
    }

    #[test]
    fn partitions_must_cover() {
        let cs = names(&["a", "b"]);
        assert!(ConstantPartition::from_blocks(&cs, &[names(&["a"])]).is_err());
        assert!(ConstantPartition::from_blocks(&cs, &[names(&["a", "b"]), names(&["b"])]).is_err());
        assert!(ConstantPartition::from_blocks(&cs, &[names(&["z"])]).is_err());
    }
}
