//! Generators for the sentences `φ_n`.
//!
//! Every relation has arguments in blocks: `n` permutation slots, one
//! witness slot, (in the constant-free variant) the pair `q₀, q₁`, and an
//! `n`-slot unary counter.

use maslov_folib::{Formula, Quant, Signature, Term, Var};

use crate::error::{HardError, Result};

/// Relation names: `P`, `W`, `Cr` (forward cycling), `S`, `Cl` (backward
/// cycling), `Z`, and for the constant-free variant `U` and `F`.
pub const RELATIONS: [&str; 6] = ["P", "W", "Cr", "S", "Cl", "Z"];

/// A generated sentence together with its signature.
#[derive(Debug, Clone)]
pub struct Instance {
    pub n: usize,
    pub formula: Formula,
    pub signature: Signature,
    pub constant_free: bool,
}

/// Builds the atoms of one variant.
struct Vocab {
    n: usize,
    constant_free: bool,
}

impl Vocab {
    fn q0(&self) -> Term {
        if self.constant_free {
            Term::var("q0")
        } else {
            Term::constant("q0")
        }
    }

    fn q1(&self) -> Term {
        if self.constant_free {
            Term::var("q1")
        } else {
            Term::constant("q1")
        }
    }

    fn x(&self, i: usize) -> Term {
        Term::var(format!("x{i}"))
    }

    fn rs(&self) -> Vec<Term> {
        (1..=self.n - 2).map(|i| Term::var(format!("r{i}"))).collect()
    }

    /// `x_{order[0]}, …`, 1-based.
    fn xs(&self, order: &[usize]) -> Vec<Term> {
        order.iter().map(|&i| self.x(i)).collect()
    }

    fn identity(&self) -> Vec<Term> {
        self.xs(&(1..=self.n).collect::<Vec<_>>())
    }

    /// `x₂, x₁, x₃, …, x_n`.
    fn swapped(&self) -> Vec<Term> {
        let mut o: Vec<usize> = (1..=self.n).collect();
        o.swap(0, 1);
        self.xs(&o)
    }

    /// `x₂, …, x_n, x₁`.
    fn rotated_left(&self) -> Vec<Term> {
        self.xs(&(2..=self.n).chain([1]).collect::<Vec<_>>())
    }

    /// `x₂, …, x_{n−1}, x₁, x_n`.
    fn rotated_left_but_last(&self) -> Vec<Term> {
        self.xs(&(2..self.n).chain([1, self.n]).collect::<Vec<_>>())
    }

    /// `x_n, x₁, …, x_{n−1}`.
    fn rotated_right(&self) -> Vec<Term> {
        self.xs(&[self.n].into_iter().chain(1..self.n).collect::<Vec<_>>())
    }

    /// Counter `r₁, …, r_{n−2}, q₀, q₀`.
    fn tail_zero(&self) -> Vec<Term> {
        let mut c = self.rs();
        c.extend([self.q0(), self.q0()]);
        c
    }

    /// Counter `q₁, r₁, …, r_{n−2}, q₀`.
    fn head_one(&self) -> Vec<Term> {
        let mut c = vec![self.q1()];
        c.extend(self.rs());
        c.push(self.q0());
        c
    }

    /// Counter `q₁, q₁, r₁, …, r_{n−2}`.
    fn head_two(&self) -> Vec<Term> {
        let mut c = vec![self.q1(), self.q1()];
        c.extend(self.rs());
        c
    }

    fn zeros(&self) -> Vec<Term> {
        vec![self.q0(); self.n]
    }

    fn atom(&self, rel: &str, perm: Vec<Term>, mid: Term, counter: Vec<Term>) -> Formula {
        let mut args = perm;
        args.push(mid);
        if self.constant_free {
            args.extend([self.q0(), self.q1()]);
        }
        args.extend(counter);
        Formula::atom(rel, args)
    }

    fn y(&self) -> Term {
        Term::var("y")
    }

    fn w(&self) -> Term {
        Term::var("w")
    }

    /// The seven groups shared by both variants. The seed atom of the
    /// permutation group is only present with constants.
    fn core(&self) -> Vec<Formula> {
        let y = || self.y();
        let imp = Formula::implies;
        let and = Formula::and;
        let mut perm = vec![imp(
            self.atom("P", self.identity(), y(), self.tail_zero()),
            and(
                self.atom("P", self.swapped(), y(), self.tail_zero()),
                self.atom("P", self.rotated_left(), y(), self.tail_zero()),
            ),
        )];
        if !self.constant_free {
            let cs = (1..=self.n).map(|i| Term::constant(format!("c{i}"))).collect();
            perm.insert(0, self.atom("P", cs, self.q0(), self.zeros()));
        }
        let witness = imp(
            self.atom("P", self.identity(), y(), self.tail_zero()),
            self.atom("W", self.identity(), self.w(), self.zeros()),
        );
        let cyclic = and(
            imp(
                self.atom("W", self.identity(), y(), self.tail_zero()),
                self.atom("Cr", self.rotated_left(), y(), self.head_one()),
            ),
            imp(
                self.atom("Cr", self.identity(), y(), self.tail_zero()),
                self.atom("Cr", self.rotated_left(), y(), self.head_one()),
            ),
        );
        let smaller = and(
            imp(
                self.atom("Cr", self.identity(), y(), self.head_one()),
                self.atom("S", self.identity(), y(), self.head_one()),
            ),
            imp(
                self.atom("S", self.identity(), y(), self.head_one()),
                and(
                    self.atom("S", self.swapped(), y(), self.head_one()),
                    self.atom("S", self.rotated_left_but_last(), y(), self.head_one()),
                ),
            ),
        );
        let cyclic_inv = and(
            imp(
                self.atom("S", self.identity(), y(), self.head_one()),
                self.atom("Cl", self.identity(), y(), self.head_one()),
            ),
            imp(
                self.atom("Cl", self.identity(), y(), self.head_two()),
                self.atom("Cl", self.rotated_right(), y(), self.head_one()),
            ),
        );
        let decrease = and(
            imp(
                self.atom("Cl", self.identity(), y(), self.head_one()),
                self.atom("Z", self.identity(), y(), self.tail_zero()),
            ),
            imp(
                self.atom("Z", self.identity(), y(), self.head_one()),
                self.atom("Z", self.identity(), y(), self.tail_zero()),
            ),
        );
        let neg = imp(
            self.atom("Z", self.identity(), y(), self.tail_zero()),
            Formula::not(self.atom("W", self.identity(), y(), self.tail_zero())),
        );
        let mut out = vec![Formula::conjunction(perm).expect("non-empty")];
        out.extend([witness, cyclic, smaller, cyclic_inv, decrease, neg]);
        out
    }

    /// The four groups that manufacture `q₀`, `q₁` and `c₁ … c_n` without
    /// constants.
    fn seeding(&self) -> Vec<Formula> {
        let u = |t: Term| Formula::atom("U", vec![t]);
        let (q0, q1, w, y) = (self.q0(), self.q1(), self.w(), self.y());
        // F has blocks x̄ | y | q₀, q₁ | counter, like the widened relations,
        // but its pair slot carries the witness in the seed atom.
        let f_atom = |perm: Vec<Term>, mid: Term, pair: [Term; 2], counter: Vec<Term>| {
            let mut args = perm;
            args.push(mid);
            args.extend(pair);
            args.extend(counter);
            Formula::atom("F", args)
        };
        let neg = Formula::implies(u(q0.clone()), Formula::not(u(w.clone())));
        let unif = Formula::implies(
            Formula::and(Formula::not(u(q0.clone())), Formula::not(u(q1.clone()))),
            Formula::and(
                f_atom(self.zeros(), q0.clone(), [q0.clone(), w.clone()], self.zeros()),
                u(w.clone()),
            ),
        );
        let pair = || [self.q0(), self.q1()];
        let shifted: Vec<Term> = std::iter::once(w.clone()).chain((1..self.n).map(|i| self.x(i))).collect();
        let shift = Formula::implies(
            Formula::and(
                f_atom(self.identity(), y.clone(), pair(), self.tail_zero()),
                Formula::not(u(self.x(self.n))),
            ),
            Formula::and(f_atom(shifted, y.clone(), pair(), self.tail_zero()), u(w)),
        );
        let first_perm = Formula::implies(
            Formula::and(
                f_atom(self.identity(), y.clone(), pair(), self.tail_zero()),
                u(self.x(self.n)),
            ),
            self.atom("P", self.identity(), y, self.tail_zero()),
        );
        vec![neg, unif, shift, first_perm]
    }

    fn prefix(&self) -> Vec<(Quant, Var)> {
        let mut names: Vec<String> = (1..=self.n).map(|i| format!("x{i}")).collect();
        names.push("y".into());
        if self.constant_free {
            names.extend(["q0".into(), "q1".into()]);
        }
        names.extend((1..=self.n - 2).map(|i| format!("r{i}")));
        let mut p: Vec<(Quant, Var)> = names.into_iter().map(|v| (Quant::Forall, Var::new(v))).collect();
        p.push((Quant::Exists, Var::new("w")));
        p
    }

    fn signature(&self) -> Result<Signature> {
        let arity = 2 * self.n + 1 + if self.constant_free { 2 } else { 0 };
        let mut rels: Vec<(&str, usize)> = RELATIONS.iter().map(|r| (*r, arity)).collect();
        let consts: Vec<String> = if self.constant_free {
            rels.extend([("U", 1), ("F", arity)]);
            Vec::new()
        } else {
            (1..=self.n).map(|i| format!("c{i}")).chain(["q0".into(), "q1".into()]).collect()
        };
        Ok(Signature::from_parts(consts, rels)?)
    }
}

fn generate(n: usize, constant_free: bool) -> Result<Instance> {
    if n < 3 {
        return Err(HardError::TooSmall(n));
    }
    let v = Vocab { n, constant_free };
    let mut parts = if constant_free { v.seeding() } else { Vec::new() };
    parts.extend(v.core());
    let matrix = Formula::conjunction(parts).expect("non-empty");
    Ok(Instance {
        n,
        formula: Formula::prefixed(&v.prefix(), matrix),
        signature: v.signature()?,
        constant_free,
    })
}

/// `∀x₁…x_n, y, r₁…r_{n−2}. ∃w. ψ_n` over constants `c₁…c_n, q₀, q₁`.
pub fn gen_phi_n(n: usize) -> Result<Instance> {
    generate(n, false)
}

/// The variant with `q₀, q₁` as universal variables, `U` marking the
/// elements playing `q₁`, and `F` building the stand-ins for `c₁…c_n`.
pub fn gen_phi_n_constant_free(n: usize) -> Result<Instance> {
    generate(n, true)
}
