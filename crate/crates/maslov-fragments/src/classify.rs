//! Syntactic classification.

use std::collections::BTreeSet;
use std::fmt;

use maslov_folib::{Formula, Quant, Var};
use serde::Serialize;

use crate::nnf::{conjuncts, to_nnf};
use crate::prefix::{profile_of_nnf, show_prefix, PrefixProfile};
use crate::uf::check_forall_uf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FragmentClass {
    Kbar,
    DKbar,
    KbarSkolem,
    /// K̄ with at most this many universal quantifiers (the least such bound).
    KbarForall(usize),
    Ackermann,
    Godel,
    ForallUf,
    None,
}

impl fmt::Display for FragmentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FragmentClass::Kbar => write!(f, "K"),
            FragmentClass::DKbar => write!(f, "DK"),
            FragmentClass::KbarSkolem => write!(f, "K-Skolem"),
            FragmentClass::KbarForall(k) => write!(f, "K^forall={k}"),
            FragmentClass::Ackermann => write!(f, "Ackermann"),
            FragmentClass::Godel => write!(f, "Godel"),
            FragmentClass::ForallUf => write!(f, "forall-UF"),
            FragmentClass::None => write!(f, "none"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub classes: BTreeSet<FragmentClass>,
    /// Grade of the sentence when it lies in K̄.
    pub grade: Option<usize>,
    pub specials: Vec<Var>,
    pub universal_count: usize,
    /// Grades of the top-level conjuncts when the sentence lies in DK̄.
    pub conjunct_grades: Vec<usize>,
    pub diagnostics: Vec<String>,
}

impl Classification {
    pub fn contains(&self, c: FragmentClass) -> bool {
        self.classes.contains(&c)
    }

    pub fn is_kbar(&self) -> bool {
        self.contains(FragmentClass::Kbar)
    }

    pub fn is_skolem(&self) -> bool {
        self.contains(FragmentClass::KbarSkolem)
    }

    pub fn class_names(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.to_string()).collect()
    }
}

/// The outcome of the special-variable search on an NNF sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Specials {
    Found(Vec<Var>),
    Rejected(String),
}

pub(crate) fn find_specials(p: &PrefixProfile) -> Specials {
    let mut constrained = p.constrained();
    if let Some((first_atom, shared)) = constrained.next() {
        for (atom, prefix) in constrained {
            if prefix != shared {
                return Specials::Rejected(format!(
                    "atom {atom} has prefix `{}` but atom {first_atom} has `{}`",
                    show_prefix(prefix),
                    show_prefix(shared)
                ));
            }
        }
        if let Some((_, v)) = shared.iter().find(|(q, _)| *q == Quant::Exists) {
            return Specials::Rejected(format!(
                "atom {first_atom} has prefix `{}` containing the existential {v}",
                show_prefix(shared)
            ));
        }
        if let Some((_, v)) = shared.iter().find(|(_, v)| p.binders[v].under_exists) {
            return Specials::Rejected(format!(
                "variable {v} of atom {first_atom} lies in the scope of an existential quantifier"
            ));
        }
        return Specials::Found(shared.iter().map(|(_, v)| v.clone()).collect());
    }
    // Nothing constrains the choice: take every universal outside all
    // existential scopes, in binding order.
    let mut free: Vec<_> = p
        .binders
        .values()
        .filter(|b| b.quant == Quant::Forall && !b.under_exists)
        .collect();
    free.sort_by_key(|b| b.position);
    Specials::Found(free.into_iter().map(|b| b.var.clone()).collect())
}

/// Classifies a sentence. Formulas outside every class come back with
/// `FragmentClass::None` and a diagnostic.
pub fn classify(f: &Formula) -> Classification {
    let mut c = Classification {
        classes: BTreeSet::new(),
        grade: None,
        specials: Vec::new(),
        universal_count: f.count_quantifiers(Quant::Forall),
        conjunct_grades: Vec::new(),
        diagnostics: Vec::new(),
    };
    if !f.is_sentence() {
        c.diagnostics.push(format!(
            "free variables: {}",
            f.free_vars().iter().map(|v| v.0.as_str()).collect::<Vec<_>>().join(", ")
        ));
        c.classes.insert(FragmentClass::None);
        return c;
    }
    let nnf = match to_nnf(&f.rectify()) {
        Ok(g) => g,
        Err(e) => {
            c.diagnostics.push(e.to_string());
            c.classes.insert(FragmentClass::None);
            return c;
        }
    };
    let profile = profile_of_nnf(&nnf);
    match find_specials(&profile) {
        Specials::Found(s) => {
            c.classes.insert(FragmentClass::Kbar);
            c.classes.insert(FragmentClass::KbarForall(c.universal_count));
            c.grade = Some(s.len());
            c.specials = s;
            if !profile.has_alternation() {
                c.classes.insert(FragmentClass::KbarSkolem);
                match c.universal_count {
                    1 => {
                        c.classes.insert(FragmentClass::Ackermann);
                    }
                    2 => {
                        c.classes.insert(FragmentClass::Godel);
                    }
                    _ => {}
                }
            } else {
                c.diagnostics
                    .push("a universal quantifier lies in the scope of an existential one".into());
            }
        }
        Specials::Rejected(reason) => c.diagnostics.push(reason),
    }
    let mut grades = Vec::new();
    for part in conjuncts(&nnf) {
        match find_specials(&profile_of_nnf(part)) {
            Specials::Found(s) => grades.push(s.len()),
            Specials::Rejected(reason) => {
                if !c.is_kbar() {
                    c.diagnostics.push(format!("conjunct `{part}`: {reason}"));
                }
                grades.clear();
                break;
            }
        }
    }
    if !grades.is_empty() {
        c.classes.insert(FragmentClass::DKbar);
        c.conjunct_grades = grades;
    }
    match check_forall_uf(&nnf) {
        Ok(()) => {
            c.classes.insert(FragmentClass::ForallUf);
        }
        Err(e) => c.diagnostics.push(format!("not forall-UF: {e}")),
    }
    if c.classes.is_empty() {
        c.classes.insert(FragmentClass::None);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use maslov_folib::parse_formula;

    fn class_of(src: &str) -> Classification {
        classify(&parse_formula(src).unwrap().formula)
    }

    #[test]
    fn co_authors_has_grade_three() {
        let c = class_of(examples::CO_AUTHORS);
        assert!(c.is_kbar() && c.is_skolem());
        assert_eq!(c.grade, Some(3));
        let names: Vec<_> = c.specials.iter().map(|v| v.0.as_str()).collect();
        assert_eq!(names, ["s1", "s2", "s3"]);
    }

    #[test]
    fn marriage_has_grade_two_with_alternation() {
        let c = class_of(examples::MARRIAGE);
        assert!(c.is_kbar());
        assert!(!c.is_skolem());
        assert_eq!(c.grade, Some(2));
        let names: Vec<_> = c.specials.iter().map(|v| v.0.as_str()).collect();
        assert_eq!(names, ["h", "w"]);
    }

    #[test]
    fn transitivity_is_unclassifiable() {
        let c = class_of(examples::TRANS);
        assert_eq!(c.classes, BTreeSet::from([FragmentClass::None]));
        assert!(c.diagnostics.iter().any(|d| d.contains("T(")), "{:?}", c.diagnostics);
    }

    #[test]
    fn ackermann_and_godel_prefixes() {
        let a = class_of("forall x. exists y z. R(x,y) & R(y,z)");
        assert!(a.contains(FragmentClass::Ackermann));
        assert!(a.contains(FragmentClass::KbarForall(1)));
        let g = class_of("forall x y. exists z. R(x,y) -> (R(x,z) & R(z,y))");
        assert!(g.contains(FragmentClass::Godel));
        assert!(g.contains(FragmentClass::KbarForall(2)));
    }

    #[test]
    fn conjunction_of_different_grades_is_only_dk() {
        let c = class_of("(forall x y. R(x,y) | R(y,x)) & (forall u v w. T(u,v,w) -> T(w,v,u))");
        assert!(!c.is_kbar());
        assert!(c.contains(FragmentClass::DKbar));
        assert_eq!(c.conjunct_grades, vec![2, 3]);
    }

    #[test]
    fn lost_proof_is_forall_uf() {
        let c = class_of(examples::LOST_PROOF);
        assert!(c.contains(FragmentClass::ForallUf), "{:?}", c.diagnostics);
    }

    #[test]
    fn existential_before_special_block_is_rejected() {
        // Alternation in front of the universal block that would be special.
        let c = class_of("forall y. exists z. forall x1 x2. R(y,z) & (R(x1,x2) -> ~R(x2,x1))");
        assert!(!c.is_kbar());
    }
}
