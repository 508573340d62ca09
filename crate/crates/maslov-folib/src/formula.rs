//! Formula syntax trees.
//!
//! Formulas are relational and equality-free. Terms are variables or
//! constants; there are no function symbols of positive arity.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

/// A variable name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Var(pub String);

impl Var {
    pub fn new(name: impl Into<String>) -> Self {
        Var(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Term {
    Var(Var),
    Const(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(Var::new(name))
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self {
            Term::Var(v) => Some(v),
            Term::Const(_) => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Const(c) => f.write_str(c),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Atom {
    pub rel: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(rel: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            rel: rel.into(),
            args,
        }
    }

    /// Distinct variables in order of first occurrence.
    pub fn vars(&self) -> Vec<&Var> {
        let mut out: Vec<&Var> = Vec::new();
        for t in &self.args {
            if let Term::Var(v) = t {
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        out
    }

    pub fn var_set(&self) -> BTreeSet<Var> {
        self.vars().into_iter().cloned().collect()
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rel)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Quant {
    Forall,
    Exists,
}

impl fmt::Display for Quant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quant::Forall => "forall",
            Quant::Exists => "exists",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
}

impl Formula {
    pub fn atom(rel: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Atom(Atom::new(rel, args))
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(v: Var, body: Formula) -> Self {
        Formula::Forall(v, Box::new(body))
    }

    pub fn exists(v: Var, body: Formula) -> Self {
        Formula::Exists(v, Box::new(body))
    }

    pub fn quantified(q: Quant, v: Var, body: Formula) -> Self {
        match q {
            Quant::Forall => Formula::forall(v, body),
            Quant::Exists => Formula::exists(v, body),
        }
    }

    /// Wraps `body` in the given quantifiers, the first one outermost.
    pub fn prefixed(prefix: &[(Quant, Var)], body: Formula) -> Self {
        prefix
            .iter()
            .rev()
            .fold(body, |acc, (q, v)| Formula::quantified(*q, v.clone(), acc))
    }

    /// Left-nested conjunction; `None` for an empty list.
    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Option<Self> {
        items.into_iter().reduce(Formula::and)
    }

    pub fn disjunction(items: impl IntoIterator<Item = Formula>) -> Option<Self> {
        items.into_iter().reduce(Formula::or)
    }

    pub fn as_quantifier(&self) -> Option<(Quant, &Var, &Formula)> {
        match self {
            Formula::Forall(v, b) => Some((Quant::Forall, v, b)),
            Formula::Exists(v, b) => Some((Quant::Exists, v, b)),
            _ => None,
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Not(a) => a.is_quantifier_free(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    /// Number of symbol occurrences in the fully parenthesised word.
    ///
    /// An atom `R(t1,...,tn)` counts the symbol, the arguments, the commas
    /// and both parentheses; a binary connective adds itself and a pair of
    /// parentheses; a quantifier adds itself and its variable.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(a) => {
                let n = a.args.len();
                if n == 0 {
                    1
                } else {
                    2 * n + 2
                }
            }
            Formula::Not(a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                3 + a.size() + b.size()
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => 2 + b.size(),
        }
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.visit_atoms(&mut |a| out.push(a));
        out
    }

    pub fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a Atom)) {
        match self {
            Formula::Atom(a) => f(a),
            Formula::Not(a) => a.visit_atoms(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
            Formula::Forall(_, b) | Formula::Exists(_, b) => b.visit_atoms(f),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Atom(a) => {
                for v in a.vars() {
                    if !bound.contains(v) {
                        out.insert(v.clone());
                    }
                }
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, b) | Formula::Exists(v, b) => {
                bound.push(v.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Bound variables in binder pre-order.
    pub fn bound_vars(&self) -> Vec<(Quant, Var)> {
        let mut out = Vec::new();
        self.collect_bound(&mut out);
        out
    }

    fn collect_bound(&self, out: &mut Vec<(Quant, Var)>) {
        match self {
            Formula::Atom(_) => {}
            Formula::Not(a) => a.collect_bound(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_bound(out);
                b.collect_bound(out);
            }
            Formula::Forall(v, b) => {
                out.push((Quant::Forall, v.clone()));
                b.collect_bound(out);
            }
            Formula::Exists(v, b) => {
                out.push((Quant::Exists, v.clone()));
                b.collect_bound(out);
            }
        }
    }

    /// Relation symbols with the arity of their first occurrence.
    pub fn relations(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        self.visit_atoms(&mut |a| {
            out.entry(a.rel.clone()).or_insert(a.args.len());
        });
        out
    }

    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |a| {
            for t in &a.args {
                if let Term::Const(c) = t {
                    out.insert(c.clone());
                }
            }
        });
        out
    }

    pub fn count_quantifiers(&self, q: Quant) -> usize {
        self.bound_vars().iter().filter(|(k, _)| *k == q).count()
    }

    /// Applies `f` to every term, bottom-up, without touching binders.
    pub fn map_terms(&self, f: &impl Fn(&Term) -> Term) -> Formula {
        match self {
            Formula::Atom(a) => Formula::Atom(Atom {
                rel: a.rel.clone(),
                args: a.args.iter().map(f).collect(),
            }),
            Formula::Not(a) => Formula::not(a.map_terms(f)),
            Formula::And(a, b) => Formula::and(a.map_terms(f), b.map_terms(f)),
            Formula::Or(a, b) => Formula::or(a.map_terms(f), b.map_terms(f)),
            Formula::Implies(a, b) => Formula::implies(a.map_terms(f), b.map_terms(f)),
            Formula::Forall(v, b) => Formula::forall(v.clone(), b.map_terms(f)),
            Formula::Exists(v, b) => Formula::exists(v.clone(), b.map_terms(f)),
        }
    }

    /// Renames variables (free and bound) according to `map`.
    pub fn rename_vars(&self, map: &BTreeMap<Var, Var>) -> Formula {
        let rn = |v: &Var| map.get(v).cloned().unwrap_or_else(|| v.clone());
        match self {
            Formula::Atom(a) => Formula::Atom(Atom {
                rel: a.rel.clone(),
                args: a
                    .args
                    .iter()
                    .map(|t| match t {
                        Term::Var(v) => Term::Var(rn(v)),
                        c => c.clone(),
                    })
                    .collect(),
            }),
            Formula::Not(a) => Formula::not(a.rename_vars(map)),
            Formula::And(a, b) => Formula::and(a.rename_vars(map), b.rename_vars(map)),
            Formula::Or(a, b) => Formula::or(a.rename_vars(map), b.rename_vars(map)),
            Formula::Implies(a, b) => Formula::implies(a.rename_vars(map), b.rename_vars(map)),
            Formula::Forall(v, b) => Formula::forall(rn(v), b.rename_vars(map)),
            Formula::Exists(v, b) => Formula::exists(rn(v), b.rename_vars(map)),
        }
    }

    /// True when no variable is bound twice and no bound variable is free
    /// elsewhere.
    pub fn is_rectified(&self) -> bool {
        let bound = self.bound_vars();
        let names: BTreeSet<&Var> = bound.iter().map(|(_, v)| v).collect();
        if names.len() != bound.len() {
            return false;
        }
        let free = self.free_vars();
        names.iter().all(|v| !free.contains(*v))
    }

    /// Renames binders so that every variable is bound exactly once and
    /// differs from every name in `avoid` and every free variable.
    pub fn rectify_avoiding(&self, avoid: &BTreeSet<String>) -> Formula {
        let mut used: BTreeSet<String> = avoid.clone();
        for v in self.free_vars() {
            used.insert(v.0);
        }
        self.rectify_rec(&mut used, &mut Vec::new())
    }

    pub fn rectify(&self) -> Formula {
        self.rectify_avoiding(&BTreeSet::new())
    }

    fn rectify_rec(&self, used: &mut BTreeSet<String>, scope: &mut Vec<(Var, Var)>) -> Formula {
        let lookup = |scope: &Vec<(Var, Var)>, v: &Var| {
            scope
                .iter()
                .rev()
                .find(|(o, _)| o == v)
                .map(|(_, n)| n.clone())
                .unwrap_or_else(|| v.clone())
        };
        match self {
            Formula::Atom(a) => Formula::Atom(Atom {
                rel: a.rel.clone(),
                args: a
                    .args
                    .iter()
                    .map(|t| match t {
                        Term::Var(v) => Term::Var(lookup(scope, v)),
                        c => c.clone(),
                    })
                    .collect(),
            }),
            Formula::Not(a) => Formula::not(a.rectify_rec(used, scope)),
            Formula::And(a, b) => {
                let a = a.rectify_rec(used, scope);
                Formula::and(a, b.rectify_rec(used, scope))
            }
            Formula::Or(a, b) => {
                let a = a.rectify_rec(used, scope);
                Formula::or(a, b.rectify_rec(used, scope))
            }
            Formula::Implies(a, b) => {
                let a = a.rectify_rec(used, scope);
                Formula::implies(a, b.rectify_rec(used, scope))
            }
            Formula::Forall(v, b) | Formula::Exists(v, b) => {
                let fresh = fresh_name(&v.0, used);
                used.insert(fresh.clone());
                scope.push((v.clone(), Var(fresh.clone())));
                let body = b.rectify_rec(used, scope);
                scope.pop();
                let q = if matches!(self, Formula::Forall(..)) {
                    Quant::Forall
                } else {
                    Quant::Exists
                };
                Formula::quantified(q, Var(fresh), body)
            }
        }
    }
}

/// `base` itself if unused, otherwise `base_1`, `base_2`, ...
pub fn fresh_name(base: &str, used: &BTreeSet<String>) -> String {
    if !used.contains(base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}_{i}"))
        .find(|n| !used.contains(n))
        .expect("infinitely many candidates")
}

/// Renames the variables of each formula apart from all earlier ones.
pub fn rectify_apart(formulas: &[Formula]) -> Vec<Formula> {
    let mut used: BTreeSet<String> = BTreeSet::new();
    let mut out = Vec::with_capacity(formulas.len());
    for f in formulas {
        let mut avoid = used.clone();
        for c in f.constants() {
            avoid.insert(c);
        }
        let g = f.rectify_avoiding(&avoid);
        for (_, v) in g.bound_vars() {
            used.insert(v.0);
        }
        for v in g.free_vars() {
            used.insert(v.0);
        }
        out.push(g);
    }
    out
}
