//! Vertex colours: Eloisa's positions under a strategy, up to the
//! equivalence that only looks at what her last move decided.

use std::collections::HashMap;

use maslov_folib::Elem;
use maslov_games::{Game, Position, StrategyTable};

use crate::error::{ModelError, Result};

fn check_position(game: &Game, p: &Position) -> Result<()> {
    if p.structure().signature() != game.signature().as_ref() {
        return Err(ModelError::DifferentGames("position over another signature".into()));
    }
    let t = p.order();
    if t == 0 || t > game.rounds() || p.assignment().len() != game.grade() + t {
        return Err(ModelError::DifferentGames(format!(
            "position of order {t} with {} assigned variables",
            p.assignment().len()
        )));
    }
    Ok(())
}

/// Everything `~` compares, as a hashable key.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct EquivKey {
    size: u32,
    assignment: Vec<Elem>,
    last_type: Option<usize>,
    atoms: Vec<Option<bool>>,
}

fn equiv_key(game: &Game, p: &Position) -> Result<EquivKey> {
    check_position(game, p)?;
    let last = game.grade() + p.order() - 1;
    let last_type = match p.assignment()[last] {
        Elem::Unnamed(e) => {
            let tp = game.one_type_of(p, e)?;
            Some(game.one_type_index(&tp).ok_or_else(|| {
                ModelError::DifferentGames("1-type of the last element is not in the type set".into())
            })?)
        }
        Elem::Const(_) => None,
    };
    let atoms = game
        .atoms()
        .iter()
        .filter(|a| a.max_var() == Some(last))
        .map(|a| game.atom_value(p, a))
        .collect();
    Ok(EquivKey {
        size: p.size(),
        assignment: p.assignment().to_vec(),
        last_type,
        atoms,
    })
}

/// `ρ₁ ~ ρ₂`: same domain and assignment, same 1-type of the last assigned
/// element, and agreement on every matrix atom whose last variable is the
/// last assigned one.
pub fn position_equiv(game: &Game, p: &Position, q: &Position) -> Result<bool> {
    Ok(equiv_key(game, p)? == equiv_key(game, q)?)
}

/// A position reached by Eloisa together with the 1-type index of each of
/// its unnamed elements.
#[derive(Debug, Clone)]
pub struct Member {
    pub position: Position,
    pub types: Vec<usize>,
}

/// The colour set ℛ: one representative per `~`-class of Eloisa's positions.
#[derive(Debug, Clone)]
pub struct PositionColours {
    /// Least member of every class, in sorted order.
    pub colours: Vec<Position>,
    /// Members of each class, sorted; `classes[i][0]` is `colours[i]`.
    pub classes: Vec<Vec<Member>>,
    /// Number of distinct assignments of Eloisa's positions.
    pub assignments: usize,
}

impl PositionColours {
    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    /// `|ℱ|·|β_*|·2^{|atoms|}`, saturating.
    pub fn class_bound(&self, game: &Game) -> u128 {
        let atoms = game.atoms().len() as u32;
        (self.assignments as u128)
            .saturating_mul(game.one_types().len() as u128)
            .saturating_mul(if atoms >= 127 { u128::MAX } else { 1u128 << atoms })
    }
}

/// Groups the positions produced by `omega` into `~`-classes and checks
/// the bound on their number.
pub fn position_colours(game: &Game, omega: &StrategyTable) -> Result<PositionColours> {
    let positions = omega.eloisa_positions();
    let mut index: HashMap<EquivKey, usize> = HashMap::new();
    let mut classes: Vec<Vec<Member>> = Vec::new();
    for p in positions {
        let key = equiv_key(game, p)?;
        let types = (1..=p.size())
            .map(|e| {
                let tp = game.one_type_of(p, e)?;
                game.one_type_index(&tp)
                    .ok_or_else(|| ModelError::DifferentGames("1-type outside the type set".into()))
            })
            .collect::<Result<Vec<usize>>>()?;
        let member = Member {
            position: p.clone(),
            types,
        };
        match index.get(&key) {
            Some(&i) => classes[i].push(member),
            None => {
                index.insert(key, classes.len());
                classes.push(vec![member]);
            }
        }
    }
    let out = PositionColours {
        colours: classes.iter().map(|c| c[0].position.clone()).collect(),
        assignments: omega.assignments().len(),
        classes,
    };
    if out.len() as u128 > out.class_bound(game) {
        return Err(ModelError::Postcondition(format!(
            "{} position colours exceed the bound {}",
            out.len(),
            out.class_bound(game)
        )));
    }
    Ok(out)
}
