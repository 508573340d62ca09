//! The prototypical model of `φ_n`: one unnamed element per permutation,
//! serving as that permutation's witness.

use std::collections::BTreeSet;
use std::sync::Arc;

use maslov_folib::{Elem, PartialStructure};
use serde::Serialize;

use crate::error::{HardError, Result};
use crate::perm::{positional_decomposition, Permutation};
use crate::phin::{gen_phi_n, gen_phi_n_constant_free, Instance};

/// Largest `n` for which the model is materialised.
pub const MAX_MODEL_N: usize = 4;

#[derive(Debug, Clone)]
pub struct PrototypicalModel {
    pub n: usize,
    pub instance: Instance,
    pub structure: PartialStructure,
    /// All permutations of `[n]`; the i-th one is witnessed by unnamed
    /// element `offset + i + 1`.
    pub permutations: Vec<Permutation>,
    c: Vec<Elem>,
    q0: Elem,
    q1: Elem,
    offset: u32,
}

/// One relation of the shared vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rel {
    P,
    W,
    Cr,
    S,
    Cl,
    Z,
}

impl Rel {
    pub fn name(self) -> &'static str {
        match self {
            Rel::P => "P",
            Rel::W => "W",
            Rel::Cr => "Cr",
            Rel::S => "S",
            Rel::Cl => "Cl",
            Rel::Z => "Z",
        }
    }
}

impl PrototypicalModel {
    /// Element standing for `c_i`, 1-based.
    pub fn c(&self, i: usize) -> Elem {
        self.c[i - 1]
    }

    pub fn q0(&self) -> Elem {
        self.q0
    }

    pub fn q1(&self) -> Elem {
        self.q1
    }

    /// The unnamed element witnessing `π`.
    pub fn witness(&self, pi: &Permutation) -> Elem {
        let i = self.permutations.binary_search(pi).expect("a permutation of [n]");
        Elem::Unnamed(self.offset + i as u32 + 1)
    }

    /// `⟨c_{σ(1)}, …, c_{σ(n)} | mid | q₁^m q₀^{n−m}⟩`, with the `q₀, q₁`
    /// pair inserted in the constant-free variant.
    pub fn tuple(&self, sigma: &Permutation, mid: Elem, ones: usize) -> Vec<Elem> {
        let n = self.n;
        let mut t: Vec<Elem> = (1..=n).map(|i| self.c(sigma.apply(i))).collect();
        t.push(mid);
        if self.instance.constant_free {
            t.extend([self.q0, self.q1]);
        }
        t.extend((0..n).map(|i| if i < ones { self.q1 } else { self.q0 }));
        t
    }

    pub fn holds(&self, rel: Rel, sigma: &Permutation, mid: Elem, ones: usize) -> bool {
        self.structure
            .value_by_name(rel.name(), &self.tuple(sigma, mid, ones))
            .expect("relation of the vocabulary")
            == Some(true)
    }

    fn set(&mut self, rel: Rel, sigma: &Permutation, mid: Elem, ones: usize) -> Result<()> {
        let t = self.tuple(sigma, mid, ones);
        Ok(self.structure.set_true_by_name(rel.name(), t)?)
    }

    /// Every element `w` with `W(π-tuple | w | q₀…q₀)`, read off the table.
    pub fn witnesses_of(&self, pi: &Permutation) -> Vec<Elem> {
        self.structure
            .domain()
            .into_iter()
            .filter(|&w| self.holds(Rel::W, pi, w, 0))
            .collect()
    }
}

/// The model with constants: `n!` unnamed elements besides
/// `c₁…c_n, q₀, q₁`.
pub fn prototypical_model(n: usize) -> Result<PrototypicalModel> {
    build(gen_phi_n(n)?)
}

/// The analogous model of the constant-free sentence. Unnamed element 1
/// plays `q₀` (the only element outside `U`), 2 plays `q₁`, `3…n+2` play
/// `c₁…c_n`, and the witnesses follow.
pub fn prototypical_model_constant_free(n: usize) -> Result<PrototypicalModel> {
    build(gen_phi_n_constant_free(n)?)
}

fn build(instance: Instance) -> Result<PrototypicalModel> {
    let n = instance.n;
    if n > MAX_MODEL_N {
        return Err(HardError::TooLarge { n, max: MAX_MODEL_N });
    }
    let perms = Permutation::all(n);
    let sig = Arc::new(instance.signature.clone());
    let (c, q0, q1, offset) = if instance.constant_free {
        let c = (1..=n as u32).map(|i| Elem::Unnamed(i + 2)).collect();
        (c, Elem::Unnamed(1), Elem::Unnamed(2), n as u32 + 2)
    } else {
        let c = (0..n as u32).map(Elem::Const).collect();
        (c, Elem::Const(n as u32), Elem::Const(n as u32 + 1), 0)
    };
    let size = offset + perms.len() as u32;
    let mut m = PrototypicalModel {
        n,
        structure: PartialStructure::empty_total(sig, size),
        instance,
        permutations: perms.clone(),
        c,
        q0,
        q1,
        offset,
    };
    let g = Permutation::cycle(n);
    let fixing: Vec<&Permutation> = perms.iter().filter(|r| r.apply(n) == n).collect();
    for sigma in &perms {
        m.set(Rel::P, sigma, q0, 0)?;
    }
    for pi in &perms {
        let w = m.witness(pi);
        m.set(Rel::W, pi, w, 0)?;
        for k in 1..n {
            let shifted = pi.compose(&g.pow(k as i64));
            m.set(Rel::Cr, &shifted, w, k)?;
            for rho in &fixing {
                let inner = shifted.compose(rho);
                m.set(Rel::S, &inner, w, k)?;
                for j in 0..k {
                    let back = inner.compose(&g.pow(-(j as i64)));
                    m.set(Rel::Cl, &back, w, k - j)?;
                    for ones in 0..=k - j {
                        m.set(Rel::Z, &back, w, ones)?;
                    }
                }
            }
        }
    }
    if m.instance.constant_free {
        seed_constant_free(&mut m)?;
    }
    Ok(m)
}

/// `U` holds everywhere except at `q₀`; `F` holds on the shifting chain
/// `⟨c_{n−s+1}, …, c_n, q₀, …, q₀ | q₀ | q₀, q₁ | q₀…q₀⟩`, `s = 0…n`.
fn seed_constant_free(m: &mut PrototypicalModel) -> Result<()> {
    let n = m.n;
    for e in m.structure.domain() {
        if e != m.q0 {
            m.structure.set_true_by_name("U", vec![e])?;
        }
    }
    for s in 0..=n {
        let mut t: Vec<Elem> = (n - s + 1..=n).map(|i| m.c(i)).collect();
        t.extend(std::iter::repeat_n(m.q0, n - s));
        t.extend([m.q0, m.q0, m.q1]);
        t.extend(std::iter::repeat_n(m.q0, n));
        m.structure.set_true_by_name("F", t)?;
    }
    Ok(())
}

/// The step of the distinctness argument that failed for a pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ChainStep {
    Seed,
    Witness,
    Reached { ones: usize },
    Drained { ones: usize },
    Excluded,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainReport {
    pub pairs_checked: usize,
    pub failures: Vec<(Permutation, Permutation, ChainStep)>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every ordered pair `π ≠ π'`: `P` holds on the `π`-tuple, `W` at
/// `w_π`, `Cl` at the `π'`-tuple under `w_π` with `k − j` ones, `Z` at
/// every smaller counter, and `W` fails at `(π'-tuple, w_π)`.
pub fn check_chain(m: &PrototypicalModel) -> ChainReport {
    let mut failures = Vec::new();
    let mut pairs = 0;
    for pi in &m.permutations {
        let w = m.witness(pi);
        for pi2 in &m.permutations {
            let Some(d) = positional_decomposition(pi, pi2).expect("same size") else {
                continue;
            };
            pairs += 1;
            let step = if !m.holds(Rel::P, pi, m.q0, 0) {
                Some(ChainStep::Seed)
            } else if !m.holds(Rel::W, pi, w, 0) {
                Some(ChainStep::Witness)
            } else if !m.holds(Rel::Cl, pi2, w, d.k - d.j) {
                Some(ChainStep::Reached { ones: d.k - d.j })
            } else if let Some(ones) = (0..d.k - d.j).rev().find(|&o| !m.holds(Rel::Z, pi2, w, o)) {
                Some(ChainStep::Drained { ones })
            } else if m.holds(Rel::W, pi2, w, 0) {
                Some(ChainStep::Excluded)
            } else {
                None
            };
            if let Some(s) = step {
                failures.push((pi.clone(), pi2.clone(), s));
            }
        }
    }
    ChainReport {
        pairs_checked: pairs,
        failures,
    }
}

/// Number of distinct elements found as `W`-witnesses, one per permutation.
pub fn distinct_witnesses(m: &PrototypicalModel) -> usize {
    let chosen: BTreeSet<Elem> = m
        .permutations
        .iter()
        .filter_map(|pi| m.witnesses_of(pi).first().copied())
        .collect();
    chosen.len()
}
