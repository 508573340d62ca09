//! The three-stage construction of a model on the vertex set of a
//! colourful tournament.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;
use maslov_folib::{model_check_sentence, Elem, PartialStructure, Quant, RelId, TypeAtom};
use maslov_games::{map_coords, set_one_type, Game, GameError, StrategyTable};
use maslov_tournaments::{find_paradoxical, verify_paradoxical_len, ColourfulTournament, ParadoxReport, Tournament};
use rayon::prelude::*;
use serde::Serialize;

use crate::colours::{position_colours, PositionColours};
use crate::error::{ModelError, Result};

#[derive(Debug, Clone, Copy)]
pub struct BuildConfig {
    /// Upper bound on the number of element sets visited in Stage 3.
    pub subset_limit: u128,
    /// Model-check the result against the sentence.
    pub verify: bool,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            subset_limit: 50_000_000,
            verify: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BuildReport {
    pub vertices: usize,
    pub colours: usize,
    /// `|ℱ|·|β_*|·2^{|atoms|}` as a decimal string (it may not fit in JSON numbers).
    pub colour_bound: String,
    pub domination_length: usize,
    /// Sets whose hull was copied from an equivalent position.
    pub witness_hulls: usize,
    /// Sets completed from the type set with a non-empty hull.
    pub completed_hulls: usize,
    pub true_facts: usize,
    pub model_checked: bool,
}

#[derive(Debug, Clone)]
pub struct BuiltModel {
    pub structure: PartialStructure,
    pub report: BuildReport,
}

/// Length of the tuples Eloisa ever has to dominate: the number of
/// variables assigned before her last move. Arc colours are the first
/// this many variables; later ones never label a dominating arc.
pub fn domination_length(game: &Game) -> usize {
    let k = game.grade();
    (0..game.rounds())
        .rev()
        .find(|&t| game.quantifier_of(k + t) == Quant::Exists)
        .map_or(0, |t| k + t)
}

/// Outcome of [`find_properly_self_dominating`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfDomination {
    pub dominator: usize,
    /// `(vertex, variable index)` pairs of `g_B`, in the order of the input set.
    pub labels: Vec<(usize, usize)>,
}

/// Looks for the vertex of `set` that dominates the others and checks that
/// the induced variable map is proper for its colour position.
pub fn find_properly_self_dominating<T: Tournament + ?Sized>(
    game: &Game,
    colours: &[maslov_games::Position],
    t: &T,
    set: &[usize],
) -> Result<Option<SelfDomination>> {
    let max = game.max_grade() as usize;
    if set.len() < 2 || set.len() > max {
        return Err(ModelError::SizeOutOfRange { size: set.len(), max });
    }
    let Some(&d) = set.iter().find(|&&d| set.iter().all(|&a| a == d || t.arc(d, a))) else {
        return Ok(None);
    };
    let rho = colours
        .get(t.vertex_colour(d) as usize)
        .ok_or_else(|| ModelError::ColourMismatch(format!("vertex {d} has no colour position")))?;
    let last = game.grade() + rho.order() - 1;
    let f = rho.assignment();
    let mut labels = Vec::with_capacity(set.len());
    let mut seen = HashSet::new();
    for &a in set {
        let v = if a == d { last } else { t.arc_colour(d, a) as usize };
        if v > last {
            return Ok(None);
        }
        match f[v] {
            Elem::Unnamed(e) if seen.insert(e) => labels.push((a, v)),
            _ => return Ok(None),
        }
    }
    Ok(Some(SelfDomination { dominator: d, labels }))
}

/// Samples a tournament that is paradoxical for the colours of `pc` and
/// the game's domination length.
pub fn sample_tournament(game: &Game, pc: &PositionColours, seed: u64, max_multiplicity: usize) -> Result<ColourfulTournament> {
    let ell = domination_length(game);
    Ok(find_paradoxical(pc.len(), ell, ell, seed, max_multiplicity)?)
}

/// Builds a model of the game's sentence on the vertices of `t`, whose
/// vertex colours index `position_colours(game, omega)` and whose arc
/// colours are variable indices.
pub fn build_model(game: &Game, omega: &StrategyTable, t: &ColourfulTournament, cfg: &BuildConfig) -> Result<BuiltModel> {
    let pc = position_colours(game, omega)?;
    let ell = domination_length(game);
    if pc.is_empty() {
        return build_without_colours(game, cfg);
    }
    if t.vertex_colours() != pc.len() || t.arc_colours() != ell {
        return Err(ModelError::ColourMismatch(format!(
            "need {} vertex colours and {ell} arc colours, got {} and {}",
            pc.len(),
            t.vertex_colours(),
            t.arc_colours()
        )));
    }
    if let ParadoxReport::Fail { colour, tuple, arc_colours } = verify_paradoxical_len(t, ell)? {
        return Err(ModelError::NotParadoxical(format!(
            "no vertex of colour {colour} dominates {tuple:?} via {arc_colours:?}"
        )));
    }
    build_on(game, &pc, t, cfg)
}

/// Samples a suitable tournament and builds the model on it.
pub fn build_model_auto(game: &Game, omega: &StrategyTable, seed: u64, cfg: &BuildConfig) -> Result<BuiltModel> {
    let pc = position_colours(game, omega)?;
    if pc.is_empty() {
        return build_without_colours(game, cfg);
    }
    let t = sample_tournament(game, &pc, seed, 4096)?;
    build_on(game, &pc, &t, cfg)
}

/// Without Eloisa positions nothing needs a witness: one element of the
/// first 1-type, completed from the type set, is enough.
fn build_without_colours(game: &Game, cfg: &BuildConfig) -> Result<BuiltModel> {
    let alpha = game
        .one_types()
        .first()
        .ok_or_else(|| ModelError::Postcondition("type set has no 1-types".into()))?;
    let mut a = PartialStructure::empty_total(game.signature().clone(), 1);
    set_one_type(&mut a, alpha, 1)?;
    for (r, t) in alpha.body().iter_true() {
        if t.iter().all(|e| e.is_const()) {
            a.set_true(r, t.clone())?;
        }
    }
    finish(game, a, 0, 0, 0, "0".into(), cfg)
}

fn finish(
    game: &Game,
    a: PartialStructure,
    colours: usize,
    witness_hulls: usize,
    completed_hulls: usize,
    colour_bound: String,
    cfg: &BuildConfig,
) -> Result<BuiltModel> {
    if cfg.verify && !model_check_sentence(&a, &game.prenex().to_formula())? {
        return Err(ModelError::Postcondition("the built structure does not satisfy the sentence".into()));
    }
    Ok(BuiltModel {
        report: BuildReport {
            vertices: a.unnamed_size() as usize,
            colours,
            colour_bound,
            domination_length: domination_length(game),
            witness_hulls,
            completed_hulls,
            true_facts: a.num_true(),
            model_checked: cfg.verify,
        },
        structure: a,
    })
}

type Facts = Vec<(RelId, Vec<Elem>)>;

/// Stages 1 to 3 on an arbitrary tournament coloured by `pc`.
pub(crate) fn build_on<T: Tournament + ?Sized>(
    game: &Game,
    pc: &PositionColours,
    t: &T,
    cfg: &BuildConfig,
) -> Result<BuiltModel> {
    let n = t.len();
    let k = game.grade();
    let sig = game.signature().clone();
    let zero = game
        .beta()
        .zero_type()
        .ok_or_else(|| ModelError::Postcondition("type set without a 0-type".into()))?;
    let mut a = PartialStructure::empty_total(sig.clone(), n as u32);

    // Stage 1: 1-types (and with them the ground facts).
    for (r, tuple) in zero.body().iter_true() {
        a.set_true(r, tuple.clone())?;
    }
    let mut type_of = Vec::with_capacity(n);
    for v in 0..n {
        let c = t.vertex_colour(v) as usize;
        let member = &pc.classes.get(c).ok_or_else(|| {
            ModelError::ColourMismatch(format!("vertex {v} has colour {c} outside the colour set"))
        })?[0];
        let rho = &member.position;
        let Elem::Unnamed(e) = rho.assignment()[k + rho.order() - 1] else {
            return Err(ModelError::Postcondition("Eloisa's move assigned a constant".into()));
        };
        let idx = member.types[e as usize - 1];
        set_one_type(&mut a, &game.one_types()[idx], v as u32 + 1)?;
        type_of.push(idx);
    }

    // Hulls of sets larger than the largest arity are empty.
    let max_set = (game.max_grade() as usize).min(sig.max_arity());

    // Stage 2: witnesses over properly self-dominating sets.
    let per_dominator: Vec<Vec<(Vec<u32>, Facts)>> = (0..n)
        .into_par_iter()
        .map(|b| witness_hulls(game, pc, t, &type_of, b, max_set))
        .collect::<Result<_>>()?;
    let mut defined: HashSet<Vec<u32>> = HashSet::new();
    let mut witness = 0;
    for (set, facts) in per_dominator.into_iter().flatten() {
        if !defined.insert(set.clone()) {
            return Err(ModelError::Conflict(set));
        }
        witness += 1;
        for (r, tuple) in facts {
            a.set_true(r, tuple)?;
        }
    }

    // Stage 3: every other set of at most `max_set` elements.
    let mut total: u128 = 0;
    for s in 2..=max_set {
        total = total.saturating_add(binomial(n as u128, s as u128));
    }
    if total > cfg.subset_limit {
        return Err(ModelError::TooLarge {
            subsets: total,
            limit: cfg.subset_limit,
        });
    }
    let mut choice: HashMap<Vec<usize>, Facts> = HashMap::new();
    let mut completed = 0;
    for s in 2..=max_set {
        for set in (1..=n as u32).combinations(s) {
            if defined.contains(&set) {
                continue;
            }
            let profile: Vec<usize> = set.iter().map(|&v| type_of[v as usize - 1]).collect();
            if !choice.contains_key(&profile) {
                let cands = game.outer_types_with(&profile);
                let best: &TypeAtom = cands
                    .iter()
                    .min_by_key(|c| c.hull_truths().len())
                    .ok_or_else(|| GameError::NotClosed {
                        grade: game.max_grade(),
                        reason: format!("no outer-type extends {profile:?}"),
                    })?;
                choice.insert(profile.clone(), best.hull_truths());
            }
            let facts = &choice[&profile];
            if !facts.is_empty() {
                completed += 1;
                for (r, tuple) in facts {
                    a.set_true(*r, map_coords(tuple, &set))?;
                }
            }
        }
    }
    let bound = pc.class_bound(game).to_string();
    finish(game, a, pc.len(), witness, completed, bound, cfg)
}

/// Stage 2 for one dominator `b`: every properly self-dominating set it
/// dominates, with the hull copied from a matching equivalent position.
fn witness_hulls<T: Tournament + ?Sized>(
    game: &Game,
    pc: &PositionColours,
    t: &T,
    type_of: &[usize],
    b: usize,
    max_set: usize,
) -> Result<Vec<(Vec<u32>, Facts)>> {
    let mut out = Vec::new();
    if max_set < 2 {
        return Ok(out);
    }
    let class = &pc.classes[t.vertex_colour(b) as usize];
    let rho = &class[0].position;
    let last = game.grade() + rho.order() - 1;
    let f = rho.assignment();
    let Elem::Unnamed(fresh) = f[last] else {
        return Ok(out);
    };
    // Vertices dominated by b, grouped by the element their label points to.
    let mut groups: Vec<(u32, Vec<usize>)> = Vec::new();
    for a in 0..t.len() {
        if a == b || !t.arc(b, a) {
            continue;
        }
        let v = t.arc_colour(b, a) as usize;
        if v >= last {
            continue;
        }
        if let Elem::Unnamed(e) = f[v] {
            match groups.iter_mut().find(|(x, _)| *x == e) {
                Some((_, g)) => g.push(a),
                None => groups.push((e, vec![a])),
            }
        }
    }
    groups.sort();
    let mut lookup: HashMap<(Vec<u32>, Vec<usize>), Option<usize>> = HashMap::new();
    for size in 1..max_set {
        for chosen in groups.iter().combinations(size) {
            let elems: Vec<u32> = chosen.iter().map(|(e, _)| *e).collect();
            for verts in chosen.iter().map(|(_, g)| g.iter().copied()).multi_cartesian_product() {
                let types: Vec<usize> = verts.iter().map(|&v| type_of[v]).collect();
                let found = *lookup.entry((elems.clone(), types.clone())).or_insert_with(|| {
                    class.iter().position(|m| {
                        elems
                            .iter()
                            .zip(&types)
                            .all(|(e, ty)| m.types[*e as usize - 1] == *ty)
                    })
                });
                let Some(mi) = found else { continue };
                let star = &class[mi].position;
                // element of the position -> vertex (1-based)
                let mut to_vertex: Vec<(u32, u32)> = elems.iter().zip(&verts).map(|(e, v)| (*e, *v as u32 + 1)).collect();
                to_vertex.push((fresh, b as u32 + 1));
                let mut support: Vec<u32> = to_vertex.iter().map(|(e, _)| *e).collect();
                support.sort_unstable();
                let facts: Facts = star
                    .structure()
                    .truths_with_support(&support)
                    .map(|(r, tuple)| {
                        let mapped = tuple
                            .iter()
                            .map(|x| match x {
                                Elem::Unnamed(e) => Elem::Unnamed(
                                    to_vertex.iter().find(|(y, _)| y == e).expect("in the support").1,
                                ),
                                c => *c,
                            })
                            .collect();
                        (r, mapped)
                    })
                    .collect();
                let mut set: Vec<u32> = to_vertex.iter().map(|(_, v)| *v).collect();
                set.sort_unstable();
                out.push((set, facts));
            }
        }
    }
    Ok(out)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Solves the game and, when Eloisa wins, builds a model on a sampled
/// tournament. `None` means Abelard wins.
pub fn solve_and_build(game: &Game, seed: u64, cfg: &BuildConfig) -> Result<Option<BuiltModel>> {
    match maslov_games::solve(game, &maslov_games::SolveConfig::default())? {
        maslov_games::Solution::Eloisa(omega) => build_model_auto(game, &omega, seed, cfg).map(Some),
        maslov_games::Solution::Abelard(_) => Ok(None),
    }
}
