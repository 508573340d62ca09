//! Pretty printing in the ASCII input syntax.
//!
//! Output re-parses to the same tree. Binding strength is `~` > `&` > `|`
//! > `->`; `&` and `|` nest to the left, `->` to the right, and a
//! > quantifier used as an operand is always parenthesised.

use std::fmt;

use crate::formula::{Formula, Quant};
use crate::signature::Signature;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Top,
    Implies,
    Or,
    And,
    Unary,
}

fn prec_of(f: &Formula) -> Prec {
    match f {
        Formula::Atom(_) | Formula::Not(_) => Prec::Unary,
        Formula::And(..) => Prec::And,
        Formula::Or(..) => Prec::Or,
        Formula::Implies(..) => Prec::Implies,
        Formula::Forall(..) | Formula::Exists(..) => Prec::Top,
    }
}

fn write_at(f: &Formula, ctx: Prec, out: &mut String) {
    let own = prec_of(f);
    let paren = own < ctx;
    if paren {
        out.push('(');
    }
    match f {
        Formula::Atom(a) => out.push_str(&a.to_string()),
        Formula::Not(a) => {
            out.push('~');
            write_at(a, Prec::Unary, out);
        }
        Formula::And(a, b) => {
            write_at(a, Prec::And, out);
            out.push_str(" & ");
            write_at(b, Prec::Unary, out);
        }
        Formula::Or(a, b) => {
            write_at(a, Prec::Or, out);
            out.push_str(" | ");
            write_at(b, Prec::And, out);
        }
        Formula::Implies(a, b) => {
            write_at(a, Prec::Or, out);
            out.push_str(" -> ");
            write_at(b, Prec::Implies, out);
        }
        Formula::Forall(..) | Formula::Exists(..) => {
            let (q, _, _) = f.as_quantifier().expect("quantifier node");
            let mut vars = Vec::new();
            let mut body = f;
            while let Some((q2, v, b)) = body.as_quantifier() {
                if q2 != q {
                    break;
                }
                vars.push(v.to_string());
                body = b;
            }
            out.push_str(match q {
                Quant::Forall => "forall ",
                Quant::Exists => "exists ",
            });
            out.push_str(&vars.join(" "));
            out.push_str(". ");
            write_at(body, Prec::Top, out);
        }
    }
    if paren {
        out.push(')');
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_at(self, Prec::Top, &mut s);
        f.write_str(&s)
    }
}

/// Header plus formula, suitable for writing to a file.
pub fn render(sig: &Signature, f: &Formula) -> String {
    let header = sig.header();
    if header.is_empty() {
        f.to_string()
    } else {
        format!("{header}\n{f}")
    }
}

#[cfg(test)]
mod tests {
    use crate::parse::parse_formula;

    fn roundtrip(src: &str) {
        let p = parse_formula(src).unwrap();
        let text = super::render(&p.signature, &p.formula);
        let q = parse_formula(&text).unwrap();
        assert_eq!(p.formula, q.formula, "printed as {text}");
    }

    #[test]
    fn precedence_roundtrips() {
        roundtrip("A -> B -> C");
        roundtrip("(A -> B) -> C");
        roundtrip("A & (B | C)");
        roundtrip("(A & B) & C");
        roundtrip("A & (B & C)");
        roundtrip("~(A | B) & ~~C");
        roundtrip("(forall x. P(x)) & Q");
        roundtrip("Q & (forall x. P(x)) & R");
        roundtrip("const c; forall x y. exists z. (R(x,y) -> R(z,c))");
    }

    #[test]
    fn quantifier_blocks_are_merged() {
        let p = parse_formula("forall x. forall y. exists z. R(x,y,z)").unwrap();
        assert_eq!(p.formula.to_string(), "forall x y. exists z. R(x,y,z)");
    }
}
