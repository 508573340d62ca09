//! Permutations of `[n] = {1, …, n}` and the decomposition that tells two
//! permutations apart.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{HardError, Result};

/// A bijection of `[n]`, stored as its images `π(1), …, π(n)`.
///
/// Composition is the usual one: `(σ ∘ τ)(i) = σ(τ(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
                return Err(HardError::NotAPermutation { n, images });
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// The cycle `γ: 1 ↦ 2 ↦ … ↦ n ↦ 1`.
    pub fn cycle(n: usize) -> Self {
        Permutation((1..=n).map(|i| i % n + 1).collect())
    }

    /// The transposition of `a` and `b`.
    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut v: Vec<usize> = (1..=n).collect();
        v.swap(a - 1, b - 1);
        Permutation(v)
    }

    /// All permutations of `[n]` in lexicographic order of their images.
    pub fn all(n: usize) -> Vec<Permutation> {
        (1..=n).permutations(n).map(Permutation).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `π(i)` for `i ∈ [n]`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Permutation(other.0.iter().map(|&i| self.apply(i)).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut v = vec![0; self.len()];
        for (i, &p) in self.0.iter().enumerate() {
            v[p - 1] = i + 1;
        }
        Permutation(v)
    }

    /// `self^e`; negative exponents use the inverse.
    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Permutation::identity(self.len());
        for _ in 0..e.unsigned_abs() {
            out = base.compose(&out);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| p == i + 1)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(" "))
    }
}

/// A witness `π' = γ^{-j} ∘ ρ ∘ γ^k ∘ π` with `0 ≤ j < k < n` and `ρ(n) = n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// The index `i` with `π'(i) > π(i)` the witness was read from.
    pub index: usize,
    pub j: usize,
    pub k: usize,
    pub rho: Permutation,
}

impl Decomposition {
    /// `γ^{-j} ∘ ρ ∘ γ^k ∘ π`.
    pub fn recompose(&self, pi: &Permutation) -> Permutation {
        let g = Permutation::cycle(pi.len());
        g.pow(-(self.j as i64)).compose(&self.rho).compose(&g.pow(self.k as i64)).compose(pi)
    }

    /// The side conditions on `j`, `k` and `ρ`.
    pub fn is_admissible(&self) -> bool {
        let n = self.rho.len();
        self.j < self.k && self.k < n && self.rho.apply(n) == n
    }
}

/// Writes `π'` as `γ^{-j} ∘ ρ ∘ γ^k ∘ π`, reading `j` and `k` off the least
/// index where `π'` exceeds `π`. Returns `None` exactly when `π' = π`.
pub fn decompose_permutation(pi: &Permutation, pi2: &Permutation) -> Result<Option<Decomposition>> {
    let n = pi.len();
    if pi2.len() != n {
        return Err(HardError::SizeMismatch(n, pi2.len()));
    }
    let Some(i) = (1..=n).find(|&i| pi2.apply(i) > pi.apply(i)) else {
        // Equal sums force equality once no image grows.
        debug_assert_eq!(pi, pi2);
        return Ok(None);
    };
    let k = n - pi.apply(i);
    let j = n - pi2.apply(i);
    let g = Permutation::cycle(n);
    let rho = g
        .pow(j as i64)
        .compose(pi2)
        .compose(&pi.inverse())
        .compose(&g.pow(-(k as i64)));
    let d = Decomposition { index: i, j, k, rho };
    assert!(d.is_admissible(), "decomposition {d:?} breaks its side conditions");
    assert_eq!(&d.recompose(pi), pi2, "decomposition does not recompose");
    Ok(Some(d))
}

/// Every admissible `(j, k, ρ)` with `γ^{-j} ∘ ρ ∘ γ^k ∘ π = π'`, found by
/// trying all of them.
pub fn search_decompositions(pi: &Permutation, pi2: &Permutation) -> Result<Vec<(usize, usize, Permutation)>> {
    let n = pi.len();
    if pi2.len() != n {
        return Err(HardError::SizeMismatch(n, pi2.len()));
    }
    let g = Permutation::cycle(n);
    let fixing: Vec<Permutation> = Permutation::all(n).into_iter().filter(|r| r.apply(n) == n).collect();
    let mut found = Vec::new();
    for k in 1..n {
        for j in 0..k {
            let left = g.pow(-(j as i64));
            let right = g.pow(k as i64).compose(pi);
            for rho in &fixing {
                if &left.compose(rho).compose(&right) == pi2 {
                    found.push((j, k, rho.clone()));
                }
            }
        }
    }
    Ok(found)
}

/// The reflection `i ↦ n − i`, with `n` fixed. It conjugates `γ` to `γ^{-1}`.
pub fn reflection(n: usize) -> Permutation {
    Permutation((1..=n).map(|i| if i == n { n } else { n - i }).collect())
}

/// The decomposition seen by the rewriting rules of the sentence, which act
/// on argument positions: `π' = π ∘ γ^k ∘ ρ ∘ γ^{-j}`.
///
/// It comes from [`decompose_permutation`] on the reflected inverses
/// `r ∘ π^{-1}` and `r ∘ π'^{-1}`: conjugating by `r` turns the result into
/// the right-handed form with `ρ` replaced by `(r ∘ ρ ∘ r)^{-1}`.
pub fn positional_decomposition(pi: &Permutation, pi2: &Permutation) -> Result<Option<Decomposition>> {
    let r = reflection(pi.len());
    let Some(d) = decompose_permutation(&r.compose(&pi.inverse()), &r.compose(&pi2.inverse()))? else {
        return Ok(None);
    };
    let rho = r.compose(&d.rho).compose(&r).inverse();
    let out = Decomposition { rho, ..d };
    assert_eq!(&positional_recompose(&out, pi), pi2, "positional decomposition does not recompose");
    Ok(Some(out))
}

/// `π ∘ γ^k ∘ ρ ∘ γ^{-j}`.
pub fn positional_recompose(d: &Decomposition, pi: &Permutation) -> Permutation {
    let g = Permutation::cycle(pi.len());
    pi.compose(&g.pow(d.k as i64)).compose(&d.rho).compose(&g.pow(-(d.j as i64)))
}
