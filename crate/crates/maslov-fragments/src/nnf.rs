//! Negation normal form under the relaxed convention: implications are
//! accepted when their premise is quantifier-free, and a negation may
//! never end up in front of a quantifier.

use maslov_folib::Formula;

use crate::error::{FragmentError, Result};

/// Pushes negations down to the atoms and removes implications.
pub fn to_nnf(f: &Formula) -> Result<Formula> {
    push(f, false)
}

fn push(f: &Formula, neg: bool) -> Result<Formula> {
    Ok(match f {
        Formula::Atom(_) => {
            if neg {
                Formula::not(f.clone())
            } else {
                f.clone()
            }
        }
        Formula::Not(g) => push(g, !neg)?,
        Formula::And(a, b) if !neg => Formula::and(push(a, false)?, push(b, false)?),
        Formula::And(a, b) => Formula::or(push(a, true)?, push(b, true)?),
        Formula::Or(a, b) if !neg => Formula::or(push(a, false)?, push(b, false)?),
        Formula::Or(a, b) => Formula::and(push(a, true)?, push(b, true)?),
        Formula::Implies(a, b) => {
            if !a.is_quantifier_free() {
                return Err(FragmentError::QuantifiedPremise(f.to_string()));
            }
            if neg {
                Formula::and(push(a, false)?, push(b, true)?)
            } else {
                Formula::or(push(a, true)?, push(b, false)?)
            }
        }
        Formula::Forall(..) | Formula::Exists(..) => {
            if neg {
                return Err(FragmentError::NegatedQuantifier(f.to_string()));
            }
            let (q, v, body) = f.as_quantifier().expect("quantifier");
            Formula::quantified(q, v.clone(), push(body, false)?)
        }
    })
}

/// True when the formula is built from literals with ∧, ∨ and quantifiers.
pub fn is_nnf(f: &Formula) -> bool {
    match f {
        Formula::Atom(_) => true,
        Formula::Not(g) => matches!(**g, Formula::Atom(_)),
        Formula::And(a, b) | Formula::Or(a, b) => is_nnf(a) && is_nnf(b),
        Formula::Implies(..) => false,
        Formula::Forall(_, b) | Formula::Exists(_, b) => is_nnf(b),
    }
}

/// The literal's atom, if `f` is an atom or a negated atom.
pub fn literal_atom(f: &Formula) -> Option<&maslov_folib::Atom> {
    match f {
        Formula::Atom(a) => Some(a),
        Formula::Not(g) => match &**g {
            Formula::Atom(a) => Some(a),
            _ => None,
        },
        _ => None,
    }
}

/// Top-level conjuncts, flattening nested conjunctions.
pub fn conjuncts(f: &Formula) -> Vec<&Formula> {
    let mut out = Vec::new();
    let mut stack = vec![f];
    while let Some(g) = stack.pop() {
        match g {
            Formula::And(a, b) => {
                stack.push(b);
                stack.push(a);
            }
            _ => out.push(g),
        }
    }
    out
}

/// Leaves of a positive Boolean combination: the maximal subformulas whose
/// root is neither a conjunction nor a disjunction.
pub fn boolean_leaves(f: &Formula) -> Vec<&Formula> {
    let mut out = Vec::new();
    let mut stack = vec![f];
    while let Some(g) = stack.pop() {
        match g {
            Formula::And(a, b) | Formula::Or(a, b) => {
                stack.push(b);
                stack.push(a);
            }
            _ => out.push(g),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use maslov_folib::parse_formula;

    fn nnf(src: &str) -> Result<Formula> {
        to_nnf(&parse_formula(src).unwrap().formula)
    }

    #[test]
    fn implication_with_open_premise_becomes_disjunction() {
        let f = nnf("forall x. P(x) -> exists y. R(x,y)").unwrap();
        assert_eq!(f.to_string(), "forall x. ~P(x) | (exists y. R(x,y))");
        assert!(is_nnf(&f));
    }

    #[test]
    fn de_morgan_reaches_the_atoms() {
        let f = nnf("forall x. ~(P(x) & ~Q(x))").unwrap();
        assert_eq!(f.to_string(), "forall x. ~P(x) | Q(x)");
    }

    #[test]
    fn negated_quantifier_is_rejected() {
        assert!(matches!(
            nnf("~forall x. P(x)"),
            Err(FragmentError::NegatedQuantifier(_))
        ));
        assert!(matches!(
            nnf("(forall x. P(x)) -> Q0"),
            Err(FragmentError::QuantifiedPremise(_))
        ));
    }
}
