//! Text syntax for formulas.
//!
//! ```text
//! const c1 c2; rel R/3, P/1;
//! forall x y. (P(x) & R(x,c1,y)) -> exists z. ~P(z)
//! ```
//!
//! Both ASCII (`forall`, `exists`, `~`, `&`, `|`, `->`) and Unicode
//! (`∀`, `∃`, `¬`, `∧`, `∨`, `→`) spellings are accepted. Identifiers may
//! contain letters, digits, `_` and `'`. An identifier in argument
//! position is a constant when declared with `const`, otherwise a
//! variable. Relations need not be declared; their arity is fixed by the
//! first use. Bound variables are renamed apart, so the result is always
//! rectified.

use std::collections::BTreeSet;

use crate::error::{FolError, Result};
use crate::formula::{Atom, Formula, Quant, Term, Var};
use crate::signature::Signature;

/// A formula together with the signature it was parsed against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub signature: Signature,
    pub formula: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(usize),
    Forall,
    Exists,
    Const,
    Rel,
    Not,
    And,
    Or,
    Implies,
    LParen,
    RParen,
    Comma,
    Dot,
    Semi,
    Slash,
    Eq,
    Eof,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut push = |tok: Tok| out.push(Spanned { tok, line: l0, column: c0 });
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let single = match c {
            '∀' => Some(Tok::Forall),
            '∃' => Some(Tok::Exists),
            '~' | '¬' | '!' => Some(Tok::Not),
            '&' | '∧' => Some(Tok::And),
            '|' | '∨' => Some(Tok::Or),
            '→' => Some(Tok::Implies),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            ';' => Some(Tok::Semi),
            '/' => Some(Tok::Slash),
            '=' | '≠' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(t) = single {
            push(t);
            i += 1;
            col += 1;
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'>') {
            push(Tok::Implies);
            i += 2;
            col += 2;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let all_digits = i >= chars.len() || !is_ident_char(chars[i]);
            if all_digits {
                push(Tok::Num(s.parse().map_err(|_| FolError::Syntax {
                    line: l0,
                    column: c0,
                    message: format!("number `{s}` out of range"),
                })?));
                col += i - start;
                continue;
            }
            i = start;
        }
        if is_ident_char(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            push(match s.as_str() {
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                "const" => Tok::Const,
                "rel" => Tok::Rel,
                _ => Tok::Ident(s),
            });
            continue;
        }
        return Err(FolError::Syntax {
            line,
            column: col,
            message: format!("unexpected character `{c}`"),
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    sig: Signature,
    /// Binder renaming stack: (source name, rectified name).
    scope: Vec<(String, String)>,
    used: BTreeSet<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let s = &self.toks[self.pos];
        Err(FolError::Syntax {
            line: s.line,
            column: s.column,
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else if *self.peek() == Tok::Eq {
            self.err("equality is not supported")
        } else {
            self.err(format!("expected {what}, found {}", describe(self.peek())))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            t => self.err(format!("expected {what}, found {}", describe(&t))),
        }
    }

    fn headers(&mut self) -> Result<()> {
        loop {
            match self.peek() {
                Tok::Const => {
                    self.bump();
                    while let Tok::Ident(_) = self.peek() {
                        let name = self.ident("constant name")?;
                        if let Err(e) = self.sig.add_constant(name) {
                            return self.err(e.to_string());
                        }
                    }
                    self.expect(Tok::Semi, "`;`")?;
                }
                Tok::Rel => {
                    self.bump();
                    loop {
                        let name = self.ident("relation name")?;
                        self.expect(Tok::Slash, "`/`")?;
                        let arity = match self.bump() {
                            Tok::Num(n) => n,
                            _ => {
                                self.pos -= 1;
                                return self.err("expected arity");
                            }
                        };
                        if let Err(e) = self.sig.add_relation(name, arity) {
                            return self.err(e.to_string());
                        }
                        if *self.peek() == Tok::Comma {
                            self.bump();
                        }
                        if *self.peek() == Tok::Semi {
                            break;
                        }
                    }
                    self.expect(Tok::Semi, "`;`")?;
                }
                _ => return Ok(()),
            }
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        if matches!(self.peek(), Tok::Forall | Tok::Exists) {
            return self.quantified();
        }
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn quantified(&mut self) -> Result<Formula> {
        let q = match self.bump() {
            Tok::Forall => Quant::Forall,
            Tok::Exists => Quant::Exists,
            _ => unreachable!("caller checked the token"),
        };
        let mut vars = Vec::new();
        while let Tok::Ident(_) = self.peek() {
            let name = self.ident("variable")?;
            if self.sig.is_constant(&name) {
                return self.err(format!("cannot quantify over constant `{name}`"));
            }
            vars.push(name);
        }
        if vars.is_empty() {
            return self.err("expected a variable after quantifier");
        }
        self.expect(Tok::Dot, "`.`")?;
        let mut renamed = Vec::new();
        for v in &vars {
            let fresh = crate::formula::fresh_name(v, &self.used);
            self.used.insert(fresh.clone());
            self.scope.push((v.clone(), fresh.clone()));
            renamed.push(Var(fresh));
        }
        let body = self.formula()?;
        for _ in &vars {
            self.scope.pop();
        }
        let prefix: Vec<(Quant, Var)> = renamed.into_iter().map(|v| (q, v)).collect();
        Ok(Formula::prefixed(&prefix, body))
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conjunction()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => self.quantified(),
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(_) => self.atom(),
            Tok::Eq => self.err("equality is not supported"),
            t => {
                let d = describe(t);
                self.err(format!("expected a formula, found {d}"))
            }
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        let start = self.pos;
        let rel = self.ident("relation name")?;
        if self.sig.is_constant(&rel) {
            self.pos = start;
            return self.err(format!("constant `{rel}` used as a relation"));
        }
        let mut args = Vec::new();
        if *self.peek() == Tok::LParen {
            self.bump();
            loop {
                let name = self.ident("argument")?;
                args.push(self.term(name));
                match self.peek() {
                    Tok::Comma => {
                        self.bump();
                    }
                    _ => break,
                }
            }
            self.expect(Tok::RParen, "`)`")?;
        }
        if *self.peek() == Tok::Eq {
            return self.err("equality is not supported");
        }
        match self.sig.arity(&rel) {
            Some(a) if a != args.len() => {
                self.pos = start;
                return Err(FolError::ArityMismatch {
                    name: rel,
                    expected: a,
                    found: args.len(),
                });
            }
            Some(_) => {}
            None => {
                if let Err(e) = self.sig.add_relation(rel.clone(), args.len()) {
                    self.pos = start;
                    return self.err(e.to_string());
                }
            }
        }
        Ok(Formula::Atom(Atom { rel, args }))
    }

    fn term(&self, name: String) -> Term {
        if let Some((_, n)) = self.scope.iter().rev().find(|(o, _)| *o == name) {
            return Term::Var(Var(n.clone()));
        }
        if self.sig.is_constant(&name) {
            Term::Const(name)
        } else {
            Term::Var(Var(name))
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Num(n) => format!("number `{n}`"),
        Tok::Eof => "end of input".into(),
        other => format!("{other:?}"),
    }
}

/// Parses a formula with an optional signature header.
pub fn parse_formula(text: &str) -> Result<Parsed> {
    parse_with_signature(text, Signature::new())
}

/// Parses against an existing signature; the header may extend it.
pub fn parse_with_signature(text: &str, sig: Signature) -> Result<Parsed> {
    let toks = lex(text)?;
    let mut p = Parser {
        used: BTreeSet::new(),
        toks,
        pos: 0,
        sig,
        scope: Vec::new(),
    };
    p.headers()?;
    for c in p.sig.constants() {
        p.used.insert(c.clone());
    }
    let formula = p.formula()?;
    if *p.peek() != Tok::Eof {
        return p.err(format!("unexpected {}", describe(p.peek())));
    }
    // Free variables must not coincide with renamed binders.
    let free = formula.free_vars();
    let formula = if free.iter().any(|v| p.used.contains(&v.0)) {
        formula.rectify()
    } else {
        formula
    };
    Ok(Parsed {
        signature: p.sig,
        formula,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_simple_sentence() {
        let p = parse_formula("forall x. P(x)").unwrap();
        assert_eq!(
            p.formula,
            Formula::forall(Var::new("x"), Formula::atom("P", vec![Term::var("x")]))
        );
        assert_eq!(p.signature.arity("P"), Some(1));
    }

    #[test]
    fn unbalanced_parenthesis_reports_position() {
        match parse_formula("forall x. P(x") {
            Err(FolError::Syntax { line, column, .. }) => {
                assert_eq!(line, 1);
                assert_eq!(column, 14);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn implication_is_right_associative_and_weakest() {
        let p = parse_formula("A -> B | C & D -> E").unwrap();
        let a = |n: &str| Formula::atom(n, vec![]);
        let expected = Formula::implies(
            a("A"),
            Formula::implies(Formula::or(a("B"), Formula::and(a("C"), a("D"))), a("E")),
        );
        assert_eq!(p.formula, expected);
    }

    #[test]
    fn constants_come_from_header() {
        let p = parse_formula("const c; forall x. R(x,c)").unwrap();
        let atom = p.formula.atoms()[0].clone();
        assert_eq!(atom.args[1], Term::constant("c"));
        assert_eq!(atom.args[0], Term::var("x"));
    }

    #[test]
    fn shadowing_is_renamed() {
        let p = parse_formula("forall x. (P(x) & exists x. Q(x))").unwrap();
        assert!(p.formula.is_rectified());
        let names: Vec<String> = p.formula.bound_vars().into_iter().map(|(_, v)| v.0).collect();
        assert_eq!(names, vec!["x", "x_1"]);
    }

    #[test]
    fn equality_and_arity_errors() {
        assert!(matches!(
            parse_formula("forall x y. x = y"),
            Err(FolError::Syntax { .. })
        ));
        assert!(matches!(
            parse_formula("forall x. (P(x) & P(x,x))"),
            Err(FolError::ArityMismatch { .. })
        ));
        assert!(matches!(
            parse_formula("rel R/2; forall x. R(x)"),
            Err(FolError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn unicode_syntax() {
        let a = parse_formula("∀x.∃y.(R(x,y) ∧ ¬P(y)) ∨ Q").unwrap();
        let b = parse_formula("forall x. exists y. (R(x,y) & ~P(y)) | Q").unwrap();
        assert_eq!(a.formula, b.formula);
    }

    #[test]
    fn primes_in_identifiers() {
        let p = parse_formula("forall d. exists d'. later(d',d)").unwrap();
        let names: Vec<String> = p.formula.bound_vars().into_iter().map(|(_, v)| v.0).collect();
        assert_eq!(names, vec!["d", "d'"]);
    }
}
