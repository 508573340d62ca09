//! Prenex normal form with the special variables in front.

use std::collections::BTreeSet;

use maslov_folib::{Formula, Quant, Var};
use serde::Serialize;

use crate::classify::{find_specials, Specials};
use crate::error::{FragmentError, Result};
use crate::nnf::to_nnf;
use crate::prefix::profile_of_nnf;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prenex {
    /// The special variables x₁..x_K, including the dummy when one was added.
    pub specials: Vec<Var>,
    /// The remaining quantifier word Q₁y₁..Q_My_M.
    pub word: Vec<(Quant, Var)>,
    pub matrix: Formula,
    /// Set when the input had grade zero and a vacuous universal was prepended.
    pub dummy: Option<Var>,
}

impl Prenex {
    pub fn grade(&self) -> usize {
        self.specials.len()
    }

    pub fn to_formula(&self) -> Formula {
        let mut prefix: Vec<(Quant, Var)> = self
            .specials
            .iter()
            .map(|v| (Quant::Forall, v.clone()))
            .collect();
        prefix.extend(self.word.iter().cloned());
        Formula::prefixed(&prefix, self.matrix.clone())
    }

    /// True when the word has no universal after an existential.
    pub fn is_skolem_shape(&self) -> bool {
        let first_exists = self.word.iter().position(|(q, _)| *q == Quant::Exists);
        match first_exists {
            Some(i) => self.word[i..].iter().all(|(q, _)| *q == Quant::Exists),
            None => true,
        }
    }

    /// All variables bound by the prefix in order.
    pub fn variables(&self) -> Vec<Var> {
        self.specials
            .iter()
            .cloned()
            .chain(self.word.iter().map(|(_, v)| v.clone()))
            .collect()
    }
}

struct QNode {
    quant: Quant,
    var: Var,
    children: Vec<usize>,
    parent: Option<usize>,
}

fn strip(f: &Formula, parent: Option<usize>, nodes: &mut Vec<QNode>, roots: &mut Vec<usize>) -> Formula {
    match f {
        Formula::And(a, b) => Formula::and(strip(a, parent, nodes, roots), strip(b, parent, nodes, roots)),
        Formula::Or(a, b) => Formula::or(strip(a, parent, nodes, roots), strip(b, parent, nodes, roots)),
        Formula::Forall(..) | Formula::Exists(..) => {
            let (q, v, body) = f.as_quantifier().expect("quantifier");
            let id = nodes.len();
            nodes.push(QNode {
                quant: q,
                var: v.clone(),
                children: Vec::new(),
                parent,
            });
            match parent {
                Some(p) => nodes[p].children.push(id),
                None => roots.push(id),
            }
            strip(body, Some(id), nodes, roots)
        }
        _ => f.clone(),
    }
}

/// Converts a K̄ sentence into `∀x̄. Q₁y₁…Q_My_M. ψ`. Among the admissible
/// quantifier orders the one placing universals as early as possible is
/// chosen, so inputs of K̄-Skolem come out with a `∀*∃*` prefix.
pub fn to_prenex(f: &Formula) -> Result<Prenex> {
    if !f.is_sentence() {
        return Err(FragmentError::NotASentence(
            f.free_vars().into_iter().map(|v| v.0).collect(),
        ));
    }
    let nnf = to_nnf(&f.rectify())?;
    let specials = match find_specials(&profile_of_nnf(&nnf)) {
        Specials::Found(s) => s,
        Specials::Rejected(reason) => {
            return Err(FragmentError::NotInClass {
                class: "K".into(),
                reason,
            })
        }
    };
    let mut nodes = Vec::new();
    let mut roots = Vec::new();
    let matrix = strip(&nnf, None, &mut nodes, &mut roots);

    let special_set: BTreeSet<&Var> = specials.iter().collect();
    let mut placed = vec![false; nodes.len()];
    let mut ancestors = Vec::new();
    for (i, n) in nodes.iter().enumerate() {
        if special_set.contains(&n.var) {
            placed[i] = true;
            let mut p = n.parent;
            while let Some(a) = p {
                if !placed[a] && !special_set.contains(&nodes[a].var) {
                    ancestors.push(a);
                }
                placed[a] = true;
                p = nodes[a].parent;
            }
        }
    }
    ancestors.sort_unstable();
    ancestors.dedup();
    let mut word: Vec<(Quant, Var)> = ancestors
        .iter()
        .map(|&a| (nodes[a].quant, nodes[a].var.clone()))
        .collect();
    // Greedy linear extension of the quantifier forest, universals first,
    // ties broken by position in the formula.
    let available = |placed: &[bool], i: usize| {
        !placed[i] && nodes[i].parent.is_none_or(|p| placed[p])
    };
    loop {
        let next = (0..nodes.len())
            .filter(|&i| available(&placed, i))
            .min_by_key(|&i| (nodes[i].quant == Quant::Exists, i));
        let Some(i) = next else { break };
        placed[i] = true;
        word.push((nodes[i].quant, nodes[i].var.clone()));
    }

    let (specials, dummy) = if specials.is_empty() {
        let used: BTreeSet<String> = nodes
            .iter()
            .map(|n| n.var.0.clone())
            .chain(f.constants())
            .collect();
        let d = Var::new(maslov_folib::formula::fresh_name("x", &used));
        (vec![d.clone()], Some(d))
    } else {
        (specials, None)
    };
    Ok(Prenex {
        specials,
        word,
        matrix,
        dummy,
    })
}
