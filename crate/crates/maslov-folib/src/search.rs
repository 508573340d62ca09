//! Bounded brute-force model search.
//!
//! Sizes are tried in increasing order. For each size the search keeps a
//! dense three-valued table per relation and runs a depth-first search
//! that always branches on the first undefined atom met by the evaluator,
//! trying `false` before `true`. As soon as the sentence evaluates to true
//! the remaining undefined atoms are set to false.

use std::sync::Arc;

use crate::error::{FolError, Result};
use crate::eval::{Compiled, Interp, Truth};
use crate::formula::Formula;
use crate::signature::{RelId, Signature};
use crate::structure::{Elem, PartialStructure};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_size: u32,
    /// Maximum number of evaluated search nodes over all sizes.
    pub node_budget: u64,
    /// Maximum number of table cells for a single size.
    pub cell_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_size: 4,
            node_budget: 10_000_000,
            cell_cap: 1 << 24,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Model(PartialStructure),
    /// No model with at most this many unnamed elements.
    NoneUpTo(u32),
    /// Search stopped early; sizes below `completed_below` were exhausted.
    BudgetExhausted { nodes: u64, completed_below: u32, reason: String },
}

impl SearchOutcome {
    pub fn model(&self) -> Option<&PartialStructure> {
        match self {
            SearchOutcome::Model(m) => Some(m),
            _ => None,
        }
    }
}

struct Tables {
    num_consts: usize,
    domain: Vec<Elem>,
    arity: Vec<usize>,
    cells: Vec<Vec<i8>>,
}

impl Tables {
    fn pos(&self, e: Elem) -> usize {
        match e {
            Elem::Const(c) => c as usize,
            Elem::Unnamed(i) => self.num_consts + i as usize - 1,
        }
    }

    fn index(&self, tuple: &[Elem]) -> usize {
        let n = self.domain.len();
        tuple.iter().fold(0usize, |acc, e| acc * n + self.pos(*e))
    }
}

impl Interp for Tables {
    fn domain(&self) -> Vec<Elem> {
        self.domain.clone()
    }

    fn value(&self, rel: RelId, tuple: &[Elem]) -> Option<bool> {
        match self.cells[rel.0][self.index(tuple)] {
            -1 => None,
            0 => Some(false),
            _ => Some(true),
        }
    }
}

/// Searches for a model of the sentence `f` over `sig`.
pub fn bounded_model_search(
    sig: Arc<Signature>,
    f: &Formula,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    if !f.is_sentence() {
        return Err(FolError::NotASentence(
            f.free_vars().into_iter().map(|v| v.0).collect(),
        ));
    }
    if cfg.max_size == 0 {
        return Err(FolError::Invalid("size bound must be at least 1".into()));
    }
    let compiled = Compiled::new(f, &sig)?;
    let mut nodes = 0u64;
    for k in 1..=cfg.max_size {
        let nc = sig.num_constants();
        let n = nc + k as usize;
        let arity: Vec<usize> = sig.relations().map(|(_, a)| a).collect();
        let mut total_cells = 0usize;
        for a in &arity {
            let c = (n as u128).checked_pow(*a as u32).unwrap_or(u128::MAX);
            total_cells = total_cells.saturating_add(c.min(usize::MAX as u128) as usize);
        }
        if total_cells > cfg.cell_cap {
            return Ok(SearchOutcome::BudgetExhausted {
                nodes,
                completed_below: k,
                reason: format!("{total_cells} table cells at size {k} exceed the cap"),
            });
        }
        let mut domain: Vec<Elem> = (0..nc as u32).map(Elem::Const).collect();
        domain.extend((1..=k).map(Elem::Unnamed));
        let mut t = Tables {
            num_consts: nc,
            cells: arity.iter().map(|a| vec![-1i8; n.pow(*a as u32)]).collect(),
            arity,
            domain,
        };
        match dfs(&compiled, &mut t, &mut nodes, cfg.node_budget)? {
            Step::Found => {
                let mut a = PartialStructure::empty_total(sig.clone(), k);
                for (r, cells) in t.cells.iter().enumerate() {
                    for (i, v) in cells.iter().enumerate() {
                        if *v == 1 {
                            a.set_true(RelId(r), decode(&t, r, i))?;
                        }
                    }
                }
                return Ok(SearchOutcome::Model(a));
            }
            Step::Exhausted => {}
            Step::OutOfBudget => {
                return Ok(SearchOutcome::BudgetExhausted {
                    nodes,
                    completed_below: k,
                    reason: format!("node budget {} exhausted", cfg.node_budget),
                })
            }
        }
    }
    Ok(SearchOutcome::NoneUpTo(cfg.max_size))
}

fn decode(t: &Tables, rel: usize, mut idx: usize) -> Vec<Elem> {
    let n = t.domain.len();
    let mut out = vec![Elem::Const(0); t.arity[rel]];
    for slot in out.iter_mut().rev() {
        *slot = t.domain[idx % n];
        idx /= n;
    }
    out
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

fn dfs(c: &Compiled, t: &mut Tables, nodes: &mut u64, budget: u64) -> Result<Step> {
    if *nodes >= budget {
        return Ok(Step::OutOfBudget);
    }
    *nodes += 1;
    let ev = c.eval(&*t, &[]);
    match ev.truth {
        Truth::True => {
            for cells in &mut t.cells {
                for v in cells.iter_mut() {
                    if *v == -1 {
                        *v = 0;
                    }
                }
            }
            Ok(Step::Found)
        }
        Truth::False => Ok(Step::Exhausted),
        Truth::Unknown => {
            let (rel, tuple) = ev
                .undefined
                .ok_or_else(|| FolError::Invalid("unknown value without an open atom".into()))?;
            let i = t.index(&tuple);
            for v in [0i8, 1] {
                t.cells[rel.0][i] = v;
                match dfs(c, t, nodes, budget)? {
                    Step::Exhausted => {}
                    other => return Ok(other),
                }
            }
            t.cells[rel.0][i] = -1;
            Ok(Step::Exhausted)
        }
    }
}
