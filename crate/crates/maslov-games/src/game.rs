//! The satisfiability game `SAT(φ, β)` for a prenex K-sentence: opening
//! moves, Abelard's and Eloisa's moves and the winning condition.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use itertools::Itertools;
use maslov_folib::{
    check_closed, support_of, Compiled, Elem, Formula, OuterTypeSet, PartialStructure, Quant, RelId,
    Signature, SupportIndex, Term, Truth, TypeAtom, Var, Violation,
};
use maslov_fragments::{to_prenex, Prenex};

use crate::error::{GameError, Result};
use crate::position::{Player, Position};

/// Argument of a matrix atom: a variable (index into the prefix order) or
/// a constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Var(usize),
    Const(u32),
}

/// An atom of the matrix with its variables resolved to prefix positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameAtom {
    pub rel: RelId,
    pub args: Vec<Slot>,
    vars: Vec<usize>,
}

impl GameAtom {
    /// Prefix positions of the variables occurring in the atom, sorted.
    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    /// The last variable of the atom in prefix order.
    pub fn max_var(&self) -> Option<usize> {
        self.vars.last().copied()
    }

    /// The tuple denoted under an assignment covering the atom's variables.
    pub fn instantiate(&self, asg: &[Elem]) -> Vec<Elem> {
        self.args
            .iter()
            .map(|s| match s {
                Slot::Var(v) => asg[*v],
                Slot::Const(c) => Elem::Const(*c),
            })
            .collect()
    }

    /// The tuple with every variable sent to `e` and constants kept.
    pub fn collapse(&self, e: Elem) -> Vec<Elem> {
        self.args
            .iter()
            .map(|s| match s {
                Slot::Var(_) => e,
                Slot::Const(c) => Elem::Const(*c),
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct Game {
    sig: Arc<Signature>,
    beta: OuterTypeSet,
    prenex: Prenex,
    vars: Vec<Var>,
    compiled: Compiled,
    atoms: Vec<GameAtom>,
    ones: Vec<TypeAtom>,
    one_index: HashMap<TypeAtom, usize>,
    by_profile: HashMap<Vec<usize>, Vec<TypeAtom>>,
    max_grade: u32,
}

impl Game {
    /// Sets up `SAT(φ, β)`. The matrix is read over β's signature, which may
    /// contain more symbols than φ uses.
    pub fn new(prenex: &Prenex, beta: &OuterTypeSet) -> Result<Self> {
        let sig = beta
            .signature_arc()
            .cloned()
            .ok_or_else(|| GameError::NotClosed {
                grade: 0,
                reason: "the type set is empty".into(),
            })?;
        let vars = prenex.variables();
        let k = prenex.specials.len();
        let max_grade = vars.len() as u32;
        let compiled = Compiled::with_free_order(&prenex.matrix, &sig, &vars)
            .map_err(|e| GameError::SignatureMismatch(e.to_string()))?;
        let mut atoms: BTreeSet<GameAtom> = BTreeSet::new();
        for a in prenex.matrix.atoms() {
            let rel = sig
                .relation_id(&a.rel)
                .ok_or_else(|| GameError::SignatureMismatch(format!("unknown relation {}", a.rel)))?;
            let mut args = Vec::with_capacity(a.args.len());
            for t in &a.args {
                args.push(match t {
                    Term::Var(v) => Slot::Var(
                        vars.iter()
                            .position(|w| w == v)
                            .ok_or_else(|| GameError::NotKbar(format!("free variable {v} in the matrix")))?,
                    ),
                    Term::Const(c) => Slot::Const(
                        sig.constant_id(c)
                            .ok_or_else(|| GameError::SignatureMismatch(format!("unknown constant {c}")))?
                            .0,
                    ),
                });
            }
            let vs: Vec<usize> = args
                .iter()
                .filter_map(|s| match s {
                    Slot::Var(v) => Some(*v),
                    Slot::Const(_) => None,
                })
                .sorted()
                .dedup()
                .collect();
            atoms.insert(GameAtom { rel, args, vars: vs });
        }
        for a in &atoms {
            let vs = &a.vars;
            if vs.len() <= 1 {
                continue;
            }
            let last = *vs.last().expect("non-empty");
            let ok = if last < k {
                vs.len() == k
            } else {
                prenex.word[last - k].0 == Quant::Exists
            };
            if !ok {
                return Err(GameError::NotKbar(format!(
                    "atom {}({:?}) has a prefix that is neither special nor ends with an existential",
                    sig.relation_name(a.rel),
                    a.args
                )));
            }
        }
        let report = check_closed(beta, max_grade);
        let blocking: Vec<&Violation> = report
            .violations
            .iter()
            .filter(|v| !matches!(v, Violation::GradeTooLarge { .. }))
            .collect();
        if !report.consistent || !blocking.is_empty() {
            return Err(GameError::NotClosed {
                grade: max_grade,
                reason: format!("{:?}", blocking.first()),
            });
        }
        let ones: Vec<TypeAtom> = beta.one_types().into_iter().cloned().collect();
        let one_index: HashMap<TypeAtom, usize> =
            ones.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let mut by_profile: HashMap<Vec<usize>, Vec<TypeAtom>> = HashMap::new();
        for t in beta.members() {
            if t.grade() >= 2 && t.grade() <= max_grade {
                let key: Vec<usize> = t.one_types().iter().map(|p| one_index[p]).collect();
                by_profile.entry(key).or_default().push(t.clone());
            }
        }
        Ok(Game {
            sig,
            beta: beta.clone(),
            prenex: prenex.clone(),
            vars,
            compiled,
            atoms: atoms.into_iter().collect(),
            ones,
            one_index,
            by_profile,
            max_grade,
        })
    }

    /// Prenexes `f` (which must be a K-sentence) and sets up the game.
    pub fn from_sentence(f: &Formula, beta: &OuterTypeSet) -> Result<Self> {
        Game::new(&to_prenex(f)?, beta)
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn beta(&self) -> &OuterTypeSet {
        &self.beta
    }

    pub fn prenex(&self) -> &Prenex {
        &self.prenex
    }

    /// The grade K.
    pub fn grade(&self) -> usize {
        self.prenex.specials.len()
    }

    /// The number M of non-special quantifiers, i.e. of rounds after Round 0.
    pub fn rounds(&self) -> usize {
        self.prenex.word.len()
    }

    /// `K + M`, the largest grade used by the game.
    pub fn max_grade(&self) -> u32 {
        self.max_grade
    }

    /// Specials followed by `y₁..y_M`.
    pub fn variables(&self) -> &[Var] {
        &self.vars
    }

    /// Quantifier of the variable at prefix position `v`.
    pub fn quantifier_of(&self, v: usize) -> Quant {
        let k = self.grade();
        if v < k {
            Quant::Forall
        } else {
            self.prenex.word[v - k].0
        }
    }

    pub fn atoms(&self) -> &[GameAtom] {
        &self.atoms
    }

    pub fn compiled_matrix(&self) -> &Compiled {
        &self.compiled
    }

    /// β_* in the set's order.
    pub fn one_types(&self) -> &[TypeAtom] {
        &self.ones
    }

    pub fn one_type_index(&self, t: &TypeAtom) -> Option<usize> {
        self.one_index.get(t).copied()
    }

    /// Outer-types of β whose coordinate 1-types are the given indices.
    pub fn outer_types_with(&self, profile: &[usize]) -> &[TypeAtom] {
        self.by_profile.get(profile).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Who moves next, or `None` at order M.
    pub fn to_move(&self, pos: &Position) -> Option<Player> {
        let t = pos.order();
        if t >= self.rounds() {
            return None;
        }
        Some(match self.prenex.word[t].0 {
            Quant::Forall => Player::Abelard,
            Quant::Exists => Player::Eloisa,
        })
    }

    /// 1-type of an unnamed element of a position.
    pub fn one_type_of(&self, pos: &Position, e: u32) -> Result<TypeAtom> {
        Ok(SupportIndex::new(pos.structure()).one_type(e)?)
    }

    /// Round 0: an outer-type of grade at most K and an assignment of the
    /// special variables onto its unnamed elements (constants allowed).
    pub fn opening_moves(&self) -> Vec<Position> {
        let k = self.grade();
        let nc = self.sig.num_constants() as u32;
        let mut out = Vec::new();
        for l0 in self.beta.members() {
            let g = l0.grade();
            if g as usize > k {
                continue;
            }
            let values: Vec<Elem> = (0..nc).map(Elem::Const).chain((1..=g).map(Elem::Unnamed)).collect();
            for asg in std::iter::repeat_n(values.iter().copied(), k).multi_cartesian_product() {
                if (1..=g).all(|i| asg.contains(&Elem::Unnamed(i))) {
                    out.push(Position::new_unchecked(0, l0.body().clone(), asg));
                }
            }
        }
        out
    }

    /// All legal successors of `pos` for the player to move.
    pub fn legal_moves(&self, pos: &Position) -> Result<Vec<Position>> {
        match self.to_move(pos) {
            None => Ok(Vec::new()),
            Some(Player::Abelard) => self.abelard_moves(pos),
            Some(Player::Eloisa) => self.eloisa_moves(pos, false),
        }
    }

    /// Reuse of a constant or of an existing element, then a fresh element
    /// of every 1-type of β.
    pub fn abelard_moves(&self, pos: &Position) -> Result<Vec<Position>> {
        let t = pos.order();
        let mut out = Vec::new();
        for e in pos.structure().domain() {
            let mut asg = pos.assignment().to_vec();
            asg.push(e);
            out.push(Position::new_unchecked(t + 1, pos.structure().clone(), asg));
        }
        let k = pos.size();
        for alpha in &self.ones {
            let mut s = grow(pos.structure(), k + 1);
            s.define_supports([vec![k + 1]]);
            set_one_type(&mut s, alpha, k + 1)?;
            let mut asg = pos.assignment().to_vec();
            asg.push(Elem::Unnamed(k + 1));
            out.push(Position::new_unchecked(t + 1, s, asg));
        }
        Ok(out)
    }

    /// Eloisa's moves: a 1-type for the fresh element and an outer-type for
    /// every set of at most `K+M` elements containing it.
    ///
    /// With `reduced`, candidate outer-types for a set are merged when they
    /// agree on every atom of the matrix that the new position already
    /// decides on that set. Such moves lead to games with the same value:
    /// later moves only look at 1-types, and no atom read later can have its
    /// support inside the current elements unless its variables are
    /// already assigned.
    pub fn eloisa_moves(&self, pos: &Position, reduced: bool) -> Result<Vec<Position>> {
        let t = pos.order();
        let k = pos.size();
        let fresh = k + 1;
        let mut asg = pos.assignment().to_vec();
        asg.push(Elem::Unnamed(fresh));
        let idx = SupportIndex::new(pos.structure());
        let mut existing = Vec::with_capacity(k as usize);
        for e in 1..=k {
            let tp = idx.one_type(e)?;
            existing.push(self.one_index.get(&tp).copied().ok_or_else(|| {
                GameError::IllegalPosition(format!("element {e} has a 1-type outside the type set"))
            })?);
        }
        let max_others = (self.max_grade as usize).saturating_sub(1).min(k as usize);
        let mut subsets: Vec<Vec<u32>> = Vec::new();
        for size in 1..=max_others {
            subsets.extend((1..=k).combinations(size));
        }
        let ynew = self.grade() + t;
        let relevant: Vec<Vec<&GameAtom>> = subsets
            .iter()
            .map(|s| {
                let mut full = s.clone();
                full.push(fresh);
                self.atoms
                    .iter()
                    .filter(|a| a.max_var() == Some(ynew) && support_of(&a.instantiate(&asg)) == full)
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        for (ai, alpha) in self.ones.iter().enumerate() {
            let mut choices: Vec<Vec<&TypeAtom>> = Vec::with_capacity(subsets.len());
            for (si, s) in subsets.iter().enumerate() {
                let mut key: Vec<usize> = s.iter().map(|e| existing[*e as usize - 1]).collect();
                key.push(ai);
                let cands = self.outer_types_with(&key);
                if cands.is_empty() {
                    return Err(GameError::NotClosed {
                        grade: self.max_grade,
                        reason: format!("no outer-type extends the 1-type sequence {key:?}"),
                    });
                }
                let mut full = s.clone();
                full.push(fresh);
                let mut list: Vec<&TypeAtom> = Vec::new();
                let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
                for c in cands {
                    if reduced {
                        let sig: Vec<bool> = relevant[si]
                            .iter()
                            .map(|a| hull_value(c, &full, a.rel, &a.instantiate(&asg)))
                            .collect();
                        if !seen.insert(sig) {
                            continue;
                        }
                    }
                    list.push(c);
                }
                choices.push(list);
            }
            let mut base = grow(pos.structure(), fresh);
            base.define_supports([vec![fresh]]);
            base.define_supports(subsets.iter().map(|s| {
                let mut full = s.clone();
                full.push(fresh);
                full
            }));
            set_one_type(&mut base, alpha, fresh)?;
            if choices.is_empty() {
                out.push(Position::new_unchecked(t + 1, base, asg.clone()));
                continue;
            }
            for pick in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
                let mut s = base.clone();
                for (sub, beta) in subsets.iter().zip(pick) {
                    let mut full = sub.clone();
                    full.push(fresh);
                    for (r, tuple) in beta.hull_truths() {
                        s.set_true(r, map_coords(&tuple, &full))?;
                    }
                }
                out.push(Position::new_unchecked(t + 1, s, asg.clone()));
            }
        }
        Ok(out)
    }

    /// Winning condition at order M.
    pub fn eloisa_wins_at(&self, pos: &Position) -> Result<bool> {
        if pos.order() != self.rounds() {
            return Err(GameError::IllegalPosition(format!(
                "position of order {} is not final",
                pos.order()
            )));
        }
        let free: Vec<Option<Elem>> = pos.assignment().iter().copied().map(Some).collect();
        match self.compiled.eval(pos.structure(), &free).truth {
            Truth::True => Ok(true),
            Truth::False => Ok(false),
            Truth::Unknown => Err(GameError::IllegalPosition(
                "the matrix reads an undefined atom at a final position".into(),
            )),
        }
    }

    /// Truth value of a matrix atom in a position, if its variables are
    /// assigned and the atom is defined.
    pub fn atom_value(&self, pos: &Position, atom: &GameAtom) -> Option<bool> {
        if atom.max_var().is_some_and(|v| v >= pos.assignment().len()) {
            return None;
        }
        pos.structure().value(atom.rel, &atom.instantiate(pos.assignment()))
    }
}

/// Same structure with `size` unnamed elements (the new ones undefined).
pub(crate) fn grow(s: &PartialStructure, size: u32) -> PartialStructure {
    let ident: Vec<u32> = (1..=s.unnamed_size()).collect();
    s.relabel(&ident, size)
}

/// Writes the non-ground facts of a 1-type onto element `e`.
pub fn set_one_type(s: &mut PartialStructure, alpha: &TypeAtom, e: u32) -> Result<()> {
    for (r, t) in alpha.body().iter_true() {
        if t.iter().any(|x| !x.is_const()) {
            let tuple = t
                .iter()
                .map(|x| match x {
                    Elem::Unnamed(_) => Elem::Unnamed(e),
                    c => *c,
                })
                .collect();
            s.set_true(r, tuple)?;
        }
    }
    Ok(())
}

/// Sends coordinate `i` of a type to `elems[i-1]`.
pub fn map_coords(tuple: &[Elem], elems: &[u32]) -> Vec<Elem> {
    tuple
        .iter()
        .map(|x| match x {
            Elem::Unnamed(i) => Elem::Unnamed(elems[*i as usize - 1]),
            c => *c,
        })
        .collect()
}

/// Value in outer-type `t`, laid on `elems`, of a tuple over `elems`.
fn hull_value(t: &TypeAtom, elems: &[u32], rel: RelId, tuple: &[Elem]) -> bool {
    let local: Vec<Elem> = tuple
        .iter()
        .map(|x| match x {
            Elem::Unnamed(e) => Elem::Unnamed(elems.iter().position(|y| y == e).expect("in the set") as u32 + 1),
            c => *c,
        })
        .collect();
    t.body().value(rel, &local).unwrap_or(false)
}
