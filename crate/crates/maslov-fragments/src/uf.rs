//! Membership in the ∀-uniform fragment, checked on negation normal form.

use std::collections::BTreeSet;

use maslov_folib::{Formula, Quant, Var};

use crate::nnf::{boolean_leaves, literal_atom};

/// Splits off a maximal block of equal quantifiers.
pub fn quantifier_block(f: &Formula) -> Option<(Quant, Vec<Var>, &Formula)> {
    let (q, v, mut body) = f.as_quantifier()?;
    let mut vars = vec![v.clone()];
    while let Some((q2, v2, b2)) = body.as_quantifier() {
        if q2 != q {
            break;
        }
        vars.push(v2.clone());
        body = b2;
    }
    Some((q, vars, body))
}

/// Checks an NNF formula against the ∀-UF grammar. The error names the
/// first offending subformula.
pub fn check_forall_uf(f: &Formula) -> Result<(), String> {
    if let Some(a) = literal_atom(f) {
        return if a.var_set().len() <= 1 {
            Ok(())
        } else {
            Err(format!("literal {f} has more than one variable outside a quantifier block"))
        };
    }
    match f {
        Formula::And(a, b) | Formula::Or(a, b) => {
            check_forall_uf(a)?;
            check_forall_uf(b)
        }
        Formula::Forall(..) => {
            let free = f.free_vars();
            if free.len() > 1 {
                return Err(format!(
                    "universal subformula `{f}` has {} free variables",
                    free.len()
                ));
            }
            let (_, _, body) = quantifier_block(f).expect("block");
            let mut uniform: Option<(BTreeSet<Var>, String)> = None;
            for leaf in boolean_leaves(body) {
                match literal_atom(leaf) {
                    Some(a) => {
                        let vars = a.var_set();
                        if vars.len() <= 1 {
                            continue;
                        }
                        match &uniform {
                            None => uniform = Some((vars, leaf.to_string())),
                            Some((v, first)) if *v != vars => {
                                return Err(format!(
                                    "literals {first} and {leaf} in `{f}` use different variable sets"
                                ))
                            }
                            _ => {}
                        }
                    }
                    None => check_forall_uf(leaf)?,
                }
            }
            Ok(())
        }
        Formula::Exists(..) => {
            let (_, block, body) = quantifier_block(f).expect("block");
            for leaf in boolean_leaves(body) {
                match literal_atom(leaf) {
                    Some(a) => {
                        let vars = a.var_set();
                        if vars.len() > 1 && !block.iter().any(|v| vars.contains(v)) {
                            return Err(format!(
                                "literal {leaf} under `{}` mentions none of its variables",
                                block.iter().map(|v| v.0.as_str()).collect::<Vec<_>>().join(" ")
                            ));
                        }
                    }
                    None => check_forall_uf(leaf)?,
                }
            }
            Ok(())
        }
        _ => Err(format!("`{f}` is not in negation normal form")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nnf::to_nnf;
    use maslov_folib::parse_formula;

    fn check(src: &str) -> Result<(), String> {
        check_forall_uf(&to_nnf(&parse_formula(src).unwrap().formula).unwrap())
    }

    #[test]
    fn one_dimensional_examples() {
        assert!(check("forall x y. R(x,y) | ~R(x,y) | P(x)").is_ok());
        assert!(check("forall x y. R(x,y) | S(y,x)").is_ok());
        assert!(check("forall x. exists y z. R(x,y) & T(y,z,x)").is_ok());
    }

    #[test]
    fn non_uniform_block_is_rejected() {
        let e = check("forall x y z. T(x,y) & T(y,z)").unwrap_err();
        assert!(e.contains("different variable sets"), "{e}");
        assert!(check("forall x. exists y. forall z. R(x,z) | R(y,z)").is_err());
    }
}
