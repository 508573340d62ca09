//! Splitting positive Boolean combinations of K̄ sentences into a list of
//! conjunctions, one per disjunct of the disjunctive normal form.

use maslov_folib::{rectify_apart, Formula};
use maslov_fragments::classify;

use crate::error::{ReductionError, Result};

fn dnf(f: &Formula) -> Result<Vec<Vec<Formula>>> {
    match f {
        Formula::And(a, b) => {
            let (l, r) = (dnf(a)?, dnf(b)?);
            let mut out = Vec::with_capacity(l.len() * r.len());
            for x in &l {
                for y in &r {
                    let mut c = x.clone();
                    for g in y {
                        if !c.contains(g) {
                            c.push(g.clone());
                        }
                    }
                    out.push(c);
                }
            }
            Ok(out)
        }
        Formula::Or(a, b) => {
            let mut out = dnf(a)?;
            out.extend(dnf(b)?);
            Ok(out)
        }
        leaf => {
            if !leaf.is_sentence() {
                return Err(ReductionError::WrongFragment {
                    class: "K",
                    reason: format!("`{leaf}` is not a sentence"),
                });
            }
            let c = classify(leaf);
            if !c.is_kbar() {
                return Err(ReductionError::WrongFragment {
                    class: "K",
                    reason: format!("`{leaf}`: {}", c.diagnostics.join("; ")),
                });
            }
            Ok(vec![vec![leaf.clone()]])
        }
    }
}

/// The conjunctions of the DNF over the K̄ leaves; the input is satisfiable
/// iff one of them is. Each entry has its conjuncts renamed apart.
pub fn split_positive_boolean(f: &Formula) -> Result<Vec<Formula>> {
    Ok(dnf(f)?
        .into_iter()
        .map(|c| Formula::conjunction(rectify_apart(&c)).expect("non-empty"))
        .collect())
}
