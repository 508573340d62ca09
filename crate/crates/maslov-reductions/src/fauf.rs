//! Translation of ∀-UF sentences into conjunctions of K̄-Skolem sentences.
//!
//! Every maximal universal block μ = ∀ȳ.ν with at most one free variable
//! is replaced by a fresh atom P_μ over that variable, and an axiom
//! `∀x,ȳ. P_μ(x) → Tr[ν]` is added.

use std::collections::BTreeSet;
use std::sync::Arc;

use maslov_folib::{
    model_check, rectify_apart, Assignment, Formula, PartialStructure, Quant, Signature, Term,
    Var,
};
use maslov_fragments::{check_forall_uf, literal_atom, quantifier_block, to_nnf};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{ReductionError, Result};

const FRESH_PREFIX: &str = "Pu_";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Axiom {
    pub predicate: String,
    /// The free variable of the replaced subformula, if any.
    pub parameter: Option<Var>,
    /// The universal subformula that the predicate stands for.
    pub subformula: Formula,
    pub formula: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Translation {
    pub signature: Signature,
    pub top: Formula,
    pub axioms: Vec<Axiom>,
}

impl Translation {
    /// `Tr[φ]` followed by the axioms, with variables renamed apart.
    pub fn conjuncts(&self) -> Vec<Formula> {
        let mut all = vec![self.top.clone()];
        all.extend(self.axioms.iter().map(|a| a.formula.clone()));
        rectify_apart(&all)
    }

    pub fn formula(&self) -> Formula {
        Formula::conjunction(self.conjuncts()).expect("at least one conjunct")
    }

    pub fn signature_arc(&self) -> Arc<Signature> {
        Arc::new(self.signature.clone())
    }
}

fn fresh_predicate(mu: &Formula, taken: &BTreeSet<String>) -> String {
    let digest = Sha256::digest(mu.to_string().as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    (8..=hex.len())
        .step_by(4)
        .map(|n| format!("{FRESH_PREFIX}{}", &hex[..n]))
        .find(|name| !taken.contains(name))
        .unwrap_or_else(|| maslov_folib::formula::fresh_name(&format!("{FRESH_PREFIX}{hex}"), taken))
}

struct Translator {
    taken: BTreeSet<String>,
    signature: Signature,
    axioms: Vec<Axiom>,
}

impl Translator {
    fn tr(&mut self, f: &Formula) -> Result<Formula> {
        if literal_atom(f).is_some() {
            return Ok(f.clone());
        }
        match f {
            Formula::And(a, b) => Ok(Formula::and(self.tr(a)?, self.tr(b)?)),
            Formula::Or(a, b) => Ok(Formula::or(self.tr(a)?, self.tr(b)?)),
            Formula::Exists(..) => {
                let (_, vars, body) = quantifier_block(f).expect("block");
                let inner = self.tr(body)?;
                let prefix: Vec<_> = vars.into_iter().map(|v| (Quant::Exists, v)).collect();
                Ok(Formula::prefixed(&prefix, inner))
            }
            Formula::Forall(..) => {
                let free = f.free_vars();
                if free.len() > 1 {
                    return Err(ReductionError::WideUniversal(f.to_string()));
                }
                let parameter = free.into_iter().next();
                let (_, vars, body) = quantifier_block(f).expect("block");
                let inner = self.tr(body)?;
                let name = fresh_predicate(f, &self.taken);
                self.taken.insert(name.clone());
                let args: Vec<Term> = parameter.iter().cloned().map(Term::Var).collect();
                self.signature.add_relation(name.clone(), args.len())?;
                let atom = Formula::atom(name.clone(), args);
                let mut prefix: Vec<(Quant, Var)> =
                    parameter.iter().map(|x| (Quant::Forall, x.clone())).collect();
                prefix.extend(vars.into_iter().map(|v| (Quant::Forall, v)));
                let axiom = Formula::prefixed(&prefix, Formula::implies(atom.clone(), inner));
                self.axioms.push(Axiom {
                    predicate: name,
                    parameter,
                    subformula: f.clone(),
                    formula: axiom,
                });
                Ok(atom)
            }
            _ => Err(ReductionError::WrongFragment {
                class: "negation normal form",
                reason: f.to_string(),
            }),
        }
    }
}

/// Translates a ∀-UF sentence. Axioms are listed innermost first.
pub fn translate_fauf(f: &Formula, sig: &Signature) -> Result<Translation> {
    if !f.is_sentence() {
        return Err(maslov_fragments::FragmentError::NotASentence(
            f.free_vars().into_iter().map(|v| v.0).collect(),
        )
        .into());
    }
    let nnf = to_nnf(&f.rectify())?;
    check_forall_uf(&nnf).map_err(|reason| ReductionError::WrongFragment {
        class: "forall-UF",
        reason,
    })?;
    let mut taken: BTreeSet<String> = sig.constants().iter().cloned().collect();
    taken.extend(sig.relations().map(|(r, _)| r.to_string()));
    let mut t = Translator {
        taken,
        signature: sig.clone(),
        axioms: Vec::new(),
    };
    let top = t.tr(&nnf)?;
    Ok(Translation {
        signature: t.signature,
        top,
        axioms: t.axioms,
    })
}

/// Expands a model of the source sentence to the translated signature,
/// interpreting each fresh predicate by the set of elements satisfying the
/// subformula it replaced.
pub fn expand_translation_model(a: &PartialStructure, t: &Translation) -> Result<PartialStructure> {
    let mut out = a.expand_signature(t.signature_arc())?;
    for ax in &t.axioms {
        match &ax.parameter {
            None => {
                if model_check(a, &ax.subformula, &Assignment::new())? {
                    out.set_true_by_name(&ax.predicate, vec![])?;
                }
            }
            Some(x) => {
                for d in a.domain() {
                    let asg = Assignment::from([(x.clone(), d)]);
                    if model_check(a, &ax.subformula, &asg)? {
                        out.set_true_by_name(&ax.predicate, vec![d])?;
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use maslov_folib::parse_formula;
    use maslov_fragments::{classify, examples};

    #[test]
    fn quantifier_free_input_is_untouched() {
        let p = parse_formula("const c; P(c) | ~Q(c)").unwrap();
        let t = translate_fauf(&p.formula, &p.signature).unwrap();
        assert!(t.axioms.is_empty());
        assert_eq!(t.top, p.formula);
    }

    #[test]
    fn lost_proof_gets_two_predicates() {
        let p = parse_formula(examples::LOST_PROOF).unwrap();
        let t = translate_fauf(&p.formula, &p.signature).unwrap();
        assert_eq!(t.axioms.len(), 2);
        // The inner block over m has the proof as its parameter.
        let inner = &t.axioms[0];
        assert_eq!(inner.parameter, Some(Var::new("p")));
        assert!(inner.subformula.to_string().starts_with("forall m."));
        assert_eq!(t.signature.arity(&inner.predicate), Some(1));
        // The root block has no free variable.
        assert_eq!(t.axioms[1].parameter, None);
        assert_eq!(t.top, Formula::atom(t.axioms[1].predicate.clone(), vec![]));
        for c in t.conjuncts() {
            let k = classify(&c);
            assert!(k.is_skolem(), "{c}: {:?}", k.diagnostics);
        }
    }

    #[test]
    fn names_are_stable() {
        let p = parse_formula(examples::LOST_PROOF).unwrap();
        let a = translate_fauf(&p.formula, &p.signature).unwrap();
        let b = translate_fauf(&p.formula, &p.signature).unwrap();
        assert_eq!(a, b);
        assert!(a.axioms.iter().all(|x| x.predicate.starts_with(FRESH_PREFIX)));
    }

    #[test]
    fn non_uniform_input_is_rejected() {
        let p = parse_formula(examples::TRANS).unwrap();
        assert!(matches!(
            translate_fauf(&p.formula, &p.signature),
            Err(ReductionError::WrongFragment { .. })
        ));
    }
}
