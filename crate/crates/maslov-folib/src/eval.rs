//! Three-valued evaluation and model checking.
//!
//! Formulas are compiled to a slot-indexed tree. Evaluation follows
//! Kleene's strong three-valued logic: an atom is unknown when it is
//! undefined in the structure or mentions an unassigned variable. Before
//! enumerating the values of a quantified variable the body is evaluated
//! once with that variable unassigned; a definite answer there holds for
//! every value and the loop is skipped.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{FolError, Result};
use crate::formula::{Formula, Quant, Term, Var};
use crate::signature::{RelId, Signature};
use crate::structure::{Elem, PartialStructure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Truth {
    False,
    Unknown,
    True,
}

impl Truth {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn definite(self) -> Option<bool> {
        match self {
            Truth::True => Some(true),
            Truth::False => Some(false),
            Truth::Unknown => None,
        }
    }

    pub fn not(self) -> Self {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Unknown => Truth::Unknown,
        }
    }

    pub fn and(self, o: Self) -> Self {
        match (self, o) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Unknown,
        }
    }

    pub fn or(self, o: Self) -> Self {
        self.not().and(o.not()).not()
    }
}

/// Read access to a (possibly partial) interpretation.
pub trait Interp: Sync {
    fn domain(&self) -> Vec<Elem>;
    fn value(&self, rel: RelId, tuple: &[Elem]) -> Option<bool>;
    /// `false` only if no tuple matching `pattern` (where `None` is a
    /// wildcard) can be true. Returning `true` is always safe.
    fn could_hold(&self, _rel: RelId, _pattern: &[Option<Elem>]) -> bool {
        true
    }
}

/// Tables larger than this are not scanned by `could_hold`.
const SCAN_LIMIT: usize = 2048;

impl Interp for PartialStructure {
    fn domain(&self) -> Vec<Elem> {
        PartialStructure::domain(self)
    }

    fn value(&self, rel: RelId, tuple: &[Elem]) -> Option<bool> {
        PartialStructure::value(self, rel, tuple)
    }

    fn could_hold(&self, rel: RelId, pattern: &[Option<Elem>]) -> bool {
        if !self.is_total() {
            return true;
        }
        let set = self.true_tuples(rel);
        if set.len() > SCAN_LIMIT {
            return true;
        }
        set.iter().any(|t| {
            t.iter()
                .zip(pattern)
                .all(|(e, p)| p.is_none_or(|p| p == *e))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Slot(usize),
    Elem(Elem),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Atom { rel: RelId, args: Vec<Arg> },
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Implies(Box<Node>, Box<Node>),
    Quant { q: Quant, slot: usize, body: Box<Node> },
}

/// A formula compiled against a signature.
#[derive(Debug, Clone)]
pub struct Compiled {
    pub root: Node,
    /// Variable name of each slot; free variables come first.
    pub slots: Vec<Var>,
    pub num_free: usize,
}

impl Compiled {
    pub fn new(f: &Formula, sig: &Signature) -> Result<Self> {
        let free: Vec<Var> = f.free_vars().into_iter().collect();
        let mut slots = free.clone();
        let mut scope: Vec<(Var, usize)> = free.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let root = compile_node(f, sig, &mut slots, &mut scope)?;
        Ok(Compiled {
            root,
            num_free: free.len(),
            slots,
        })
    }

    /// Compiles a formula whose free variables get the given slot order.
    pub fn with_free_order(f: &Formula, sig: &Signature, order: &[Var]) -> Result<Self> {
        for v in f.free_vars() {
            if !order.contains(&v) {
                return Err(FolError::UnassignedVariable(v.0));
            }
        }
        let mut slots = order.to_vec();
        let mut scope: Vec<(Var, usize)> = order.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let root = compile_node(f, sig, &mut slots, &mut scope)?;
        Ok(Compiled {
            root,
            num_free: order.len(),
            slots,
        })
    }

    pub fn slot_of(&self, v: &Var) -> Option<usize> {
        self.slots[..self.num_free].iter().position(|s| s == v)
    }

    /// Evaluates with the free slots taken from `free`; bound slots start
    /// unassigned.
    pub fn eval<I: Interp>(&self, interp: &I, free: &[Option<Elem>]) -> Evaluation {
        let mut asg = vec![None; self.slots.len()];
        asg[..free.len()].copy_from_slice(free);
        let mut ev = Evaluator::new(interp);
        let truth = ev.full(&self.root, &mut asg);
        Evaluation {
            truth,
            undefined: ev.undefined,
        }
    }

    /// Like [`Compiled::eval`] but splits the outermost quantifier across
    /// threads.
    pub fn eval_parallel<I: Interp>(&self, interp: &I, free: &[Option<Elem>]) -> Evaluation {
        let mut asg = vec![None; self.slots.len()];
        asg[..free.len()].copy_from_slice(free);
        let Node::Quant { q, slot, body } = &self.root else {
            return self.eval(interp, free);
        };
        let ev = Evaluator::new(interp);
        if let Some(b) = ev.abs(body, &asg).definite() {
            return Evaluation {
                truth: Truth::from_bool(b),
                undefined: None,
            };
        }
        let domain = ev.domain.clone();
        let results: Vec<Evaluation> = domain
            .par_iter()
            .map(|d| {
                let mut local = asg.clone();
                local[*slot] = Some(*d);
                let mut ev = Evaluator::new(interp);
                let truth = ev.full(body, &mut local);
                Evaluation {
                    truth,
                    undefined: ev.undefined,
                }
            })
            .collect();
        combine(*q, results)
    }

    /// Three-valued evaluation without enumerating quantified variables.
    pub fn eval_abstract<I: Interp>(&self, interp: &I, free: &[Option<Elem>]) -> Truth {
        let mut asg = vec![None; self.slots.len()];
        asg[..free.len()].copy_from_slice(free);
        Evaluator::new(interp).abs(&self.root, &asg)
    }

    /// All atoms of the compiled tree in left-to-right order.
    pub fn atoms(&self) -> Vec<(RelId, &[Arg])> {
        fn go<'a>(n: &'a Node, out: &mut Vec<(RelId, &'a [Arg])>) {
            match n {
                Node::Atom { rel, args } => out.push((*rel, args)),
                Node::Not(a) => go(a, out),
                Node::And(v) | Node::Or(v) => v.iter().for_each(|c| go(c, out)),
                Node::Implies(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                Node::Quant { body, .. } => go(body, out),
            }
        }
        let mut out = Vec::new();
        go(&self.root, &mut out);
        out
    }
}

fn combine(q: Quant, results: Vec<Evaluation>) -> Evaluation {
    let (stop, keep) = match q {
        Quant::Forall => (Truth::False, Truth::True),
        Quant::Exists => (Truth::True, Truth::False),
    };
    let mut out = Evaluation {
        truth: keep,
        undefined: None,
    };
    for r in results {
        if r.truth == stop {
            return Evaluation {
                truth: stop,
                undefined: None,
            };
        }
        if r.truth == Truth::Unknown {
            out.truth = Truth::Unknown;
            if out.undefined.is_none() {
                out.undefined = r.undefined;
            }
        }
    }
    out
}

fn compile_node(
    f: &Formula,
    sig: &Signature,
    slots: &mut Vec<Var>,
    scope: &mut Vec<(Var, usize)>,
) -> Result<Node> {
    Ok(match f {
        Formula::Atom(a) => {
            let rel = sig
                .relation_id(&a.rel)
                .ok_or_else(|| FolError::UnknownRelation(a.rel.clone()))?;
            let arity = sig.relation_arity(rel);
            if arity != a.args.len() {
                return Err(FolError::ArityMismatch {
                    name: a.rel.clone(),
                    expected: arity,
                    found: a.args.len(),
                });
            }
            let mut args = Vec::with_capacity(a.args.len());
            for t in &a.args {
                args.push(match t {
                    Term::Var(v) => {
                        let slot = scope
                            .iter()
                            .rev()
                            .find(|(w, _)| w == v)
                            .map(|(_, s)| *s)
                            .ok_or_else(|| FolError::UnassignedVariable(v.0.clone()))?;
                        Arg::Slot(slot)
                    }
                    Term::Const(c) => Arg::Elem(Elem::Const(
                        sig.constant_id(c)
                            .ok_or_else(|| FolError::UnknownConstant(c.clone()))?
                            .0,
                    )),
                });
            }
            Node::Atom { rel, args }
        }
        Formula::Not(a) => Node::Not(Box::new(compile_node(a, sig, slots, scope)?)),
        Formula::And(..) => {
            let mut items = Vec::new();
            flatten(f, true, &mut items);
            Node::And(
                items
                    .into_iter()
                    .map(|g| compile_node(g, sig, slots, scope))
                    .collect::<Result<_>>()?,
            )
        }
        Formula::Or(..) => {
            let mut items = Vec::new();
            flatten(f, false, &mut items);
            Node::Or(
                items
                    .into_iter()
                    .map(|g| compile_node(g, sig, slots, scope))
                    .collect::<Result<_>>()?,
            )
        }
        Formula::Implies(a, b) => Node::Implies(
            Box::new(compile_node(a, sig, slots, scope)?),
            Box::new(compile_node(b, sig, slots, scope)?),
        ),
        Formula::Forall(v, b) | Formula::Exists(v, b) => {
            let q = if matches!(f, Formula::Forall(..)) {
                Quant::Forall
            } else {
                Quant::Exists
            };
            let slot = slots.len();
            slots.push(v.clone());
            scope.push((v.clone(), slot));
            let body = compile_node(b, sig, slots, scope)?;
            scope.pop();
            Node::Quant {
                q,
                slot,
                body: Box::new(body),
            }
        }
    })
}

fn flatten<'a>(f: &'a Formula, conj: bool, out: &mut Vec<&'a Formula>) {
    match (f, conj) {
        (Formula::And(a, b), true) | (Formula::Or(a, b), false) => {
            flatten(a, conj, out);
            flatten(b, conj, out);
        }
        _ => out.push(f),
    }
}

/// Result of a full evaluation. `undefined` names the first undefined
/// atom met when the truth value is unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub truth: Truth,
    pub undefined: Option<(RelId, Vec<Elem>)>,
}

struct Evaluator<'a, I: Interp> {
    interp: &'a I,
    domain: Vec<Elem>,
    undefined: Option<(RelId, Vec<Elem>)>,
}

impl<'a, I: Interp> Evaluator<'a, I> {
    fn new(interp: &'a I) -> Self {
        Evaluator {
            domain: interp.domain(),
            interp,
            undefined: None,
        }
    }

    fn atom_abs(&self, rel: RelId, args: &[Arg], asg: &[Option<Elem>]) -> Truth {
        let mut tuple = Vec::with_capacity(args.len());
        let mut complete = true;
        for a in args {
            let e = match a {
                Arg::Slot(s) => asg[*s],
                Arg::Elem(e) => Some(*e),
            };
            complete &= e.is_some();
            tuple.push(e);
        }
        if complete {
            let t: Vec<Elem> = tuple.into_iter().map(|e| e.expect("complete")).collect();
            match self.interp.value(rel, &t) {
                Some(b) => Truth::from_bool(b),
                None => Truth::Unknown,
            }
        } else if self.interp.could_hold(rel, &tuple) {
            Truth::Unknown
        } else {
            Truth::False
        }
    }

    fn abs(&self, n: &Node, asg: &[Option<Elem>]) -> Truth {
        match n {
            Node::Atom { rel, args } => self.atom_abs(*rel, args, asg),
            Node::Not(a) => self.abs(a, asg).not(),
            Node::And(items) => {
                let mut acc = Truth::True;
                for c in items {
                    acc = acc.and(self.abs(c, asg));
                    if acc == Truth::False {
                        break;
                    }
                }
                acc
            }
            Node::Or(items) => {
                let mut acc = Truth::False;
                for c in items {
                    acc = acc.or(self.abs(c, asg));
                    if acc == Truth::True {
                        break;
                    }
                }
                acc
            }
            Node::Implies(a, b) => {
                let l = self.abs(a, asg);
                if l == Truth::False {
                    return Truth::True;
                }
                l.not().or(self.abs(b, asg))
            }
            Node::Quant { slot, body, .. } => {
                debug_assert!(asg[*slot].is_none());
                self.abs(body, asg)
            }
        }
    }

    fn full(&mut self, n: &Node, asg: &mut Vec<Option<Elem>>) -> Truth {
        match n {
            Node::Atom { rel, args } => {
                let t = self.atom_abs(*rel, args, asg);
                if t == Truth::Unknown && self.undefined.is_none() {
                    let tuple: Option<Vec<Elem>> = args
                        .iter()
                        .map(|a| match a {
                            Arg::Slot(s) => asg[*s],
                            Arg::Elem(e) => Some(*e),
                        })
                        .collect();
                    if let Some(tuple) = tuple {
                        self.undefined = Some((*rel, tuple));
                    }
                }
                t
            }
            Node::Not(a) => self.full(a, asg).not(),
            Node::And(items) => {
                let mut acc = Truth::True;
                for c in items {
                    acc = acc.and(self.full(c, asg));
                    if acc == Truth::False {
                        return acc;
                    }
                }
                acc
            }
            Node::Or(items) => {
                let mut acc = Truth::False;
                for c in items {
                    acc = acc.or(self.full(c, asg));
                    if acc == Truth::True {
                        return acc;
                    }
                }
                acc
            }
            Node::Implies(a, b) => {
                let l = self.full(a, asg);
                if l == Truth::False {
                    return Truth::True;
                }
                l.not().or(self.full(b, asg))
            }
            Node::Quant { q, slot, body } => {
                asg[*slot] = None;
                if let Some(b) = self.abs(body, asg).definite() {
                    return Truth::from_bool(b);
                }
                let (stop, mut acc) = match q {
                    Quant::Forall => (Truth::False, Truth::True),
                    Quant::Exists => (Truth::True, Truth::False),
                };
                for i in 0..self.domain.len() {
                    asg[*slot] = Some(self.domain[i]);
                    let r = self.full(body, asg);
                    if r == stop {
                        acc = stop;
                        break;
                    }
                    if r == Truth::Unknown {
                        acc = Truth::Unknown;
                    }
                }
                asg[*slot] = None;
                acc
            }
        }
    }
}

/// Partial assignment of free variables.
pub type Assignment = BTreeMap<Var, Elem>;

/// Tarskian truth of `f` in `a` under `asg`. Fails naming the first
/// undefined atom when the value cannot be determined.
pub fn model_check(a: &PartialStructure, f: &Formula, asg: &Assignment) -> Result<bool> {
    let c = Compiled::new(f, a.signature())?;
    let mut free = Vec::with_capacity(c.num_free);
    for v in &c.slots[..c.num_free] {
        let e = *asg.get(v).ok_or_else(|| FolError::UnassignedVariable(v.0.clone()))?;
        if !a.contains_elem(e) {
            return Err(FolError::OutOfDomain(format!("{e:?}")));
        }
        free.push(Some(e));
    }
    let ev = if a.is_total() && a.domain().len() >= 4 {
        c.eval_parallel(a, &free)
    } else {
        c.eval(a, &free)
    };
    match ev.truth.definite() {
        Some(b) => Ok(b),
        None => {
            let what = match ev.undefined {
                Some((r, t)) => format!("{}{}", a.signature().relation_name(r), a.render_tuple(&t)),
                None => "unknown atom".to_string(),
            };
            Err(FolError::UndefinedAtom(what))
        }
    }
}

/// [`model_check`] for sentences.
pub fn model_check_sentence(a: &PartialStructure, f: &Formula) -> Result<bool> {
    model_check(a, f, &Assignment::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_formula;
    use std::collections::BTreeSet;
    use std::sync::Arc;

    fn structure(src: &str, k: u32, facts: &[(&str, &[u32])]) -> (PartialStructure, Formula) {
        let p = parse_formula(src).unwrap();
        let sig = Arc::new(p.signature);
        let mut a = PartialStructure::empty_total(sig, k);
        for (r, t) in facts {
            a.set_true_by_name(r, t.iter().map(|i| Elem::Unnamed(*i)).collect())
                .unwrap();
        }
        (a, p.formula)
    }

    #[test]
    fn exists_on_singleton() {
        let (a, f) = structure("exists y. P(y)", 1, &[("P", &[1])]);
        assert!(model_check_sentence(&a, &f).unwrap());
    }

    #[test]
    fn forall_exists_fails_on_dead_end() {
        let (a, f) = structure("forall x. exists y. R(x,y)", 2, &[("R", &[1, 2])]);
        assert!(!model_check_sentence(&a, &f).unwrap());
    }

    #[test]
    fn undefined_atom_is_reported() {
        let p = parse_formula("forall x. exists y. R(x,y)").unwrap();
        let sig = Arc::new(p.signature);
        let supports: BTreeSet<Vec<u32>> = [vec![], vec![1], vec![2]].into_iter().collect();
        let a = PartialStructure::empty_partial(sig, 2, supports);
        match model_check_sentence(&a, &p.formula) {
            Err(FolError::UndefinedAtom(s)) => assert!(s.starts_with("R(")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn free_variables_need_values() {
        let (a, f) = structure("exists y. R(x,y)", 2, &[("R", &[1, 2])]);
        assert!(model_check(&a, &f, &Assignment::new()).is_err());
        let mut asg = Assignment::new();
        asg.insert(Var::new("x"), Elem::Unnamed(1));
        assert!(model_check(&a, &f, &asg).unwrap());
        asg.insert(Var::new("x"), Elem::Unnamed(2));
        assert!(!model_check(&a, &f, &asg).unwrap());
    }

    #[test]
    fn kleene_tables() {
        use Truth::*;
        assert_eq!(Unknown.and(False), False);
        assert_eq!(Unknown.or(True), True);
        assert_eq!(Unknown.and(True), Unknown);
        assert_eq!(Unknown.not(), Unknown);
    }
}
