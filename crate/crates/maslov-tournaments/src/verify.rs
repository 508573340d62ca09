//! Exhaustive and sampled verification of paradoxicality and of the
//! k-extension property.

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, TournamentError};
use crate::tournament::{dominates_unchecked, ColourfulTournament, Tournament};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ParadoxReport {
    Pass {
        /// Number of unordered vertex sets examined.
        sets_checked: u64,
        /// Smallest number of common dominators over all sets.
        min_dominators: usize,
    },
    Fail {
        colour: u32,
        tuple: Vec<usize>,
        arc_colours: Vec<u32>,
    },
}

impl ParadoxReport {
    pub fn passed(&self) -> bool {
        matches!(self, ParadoxReport::Pass { .. })
    }
}

/// Checks the paradoxical property for tuples of length `|𝒬|`.
pub fn verify_paradoxical(t: &ColourfulTournament) -> Result<ParadoxReport> {
    verify_paradoxical_len(t, t.arc_colours())
}

/// Checks the paradoxical property for tuples of length `ell` with arc
/// colour tuples from `𝒬^ell`.
///
/// Each unordered set is examined once: a reordering of the tuple only
/// permutes the required arc-colour tuple, and the requirement ranges over
/// all of `𝒬^ell` anyway.
pub fn verify_paradoxical_len(t: &ColourfulTournament, ell: usize) -> Result<ParadoxReport> {
    let n = t.len();
    if n < ell {
        return Err(TournamentError::TooFewVertices { vertices: n, ell });
    }
    let rc = t.vertex_colours();
    let qc = t.arc_colours();
    let per_colour = qc.checked_pow(ell as u32).expect("colour tuples fit in usize");
    let signatures = rc * per_colour;
    if ell == 0 {
        let all: Vec<usize> = (0..n).collect();
        return Ok(match check_set(t, &all, &[], signatures, per_colour) {
            Ok(m) => ParadoxReport::Pass { sets_checked: 1, min_dominators: m },
            Err(f) => f,
        });
    }
    let firsts: Vec<usize> = (0..=n - ell).collect();
    let outcome: Vec<std::result::Result<(u64, usize), ParadoxReport>> = firsts
        .par_iter()
        .map(|&first| {
            let mut count = 0u64;
            let mut min = usize::MAX;
            for rest in (first + 1..n).combinations(ell - 1) {
                let mut set = Vec::with_capacity(ell);
                set.push(first);
                set.extend(rest);
                let mut dom: FixedBitSet = t.in_set(set[0]).clone();
                for &a in &set[1..] {
                    dom.intersect_with(t.in_set(a));
                }
                let cands: Vec<usize> = dom.ones().collect();
                match check_set(t, &cands, &set, signatures, per_colour) {
                    Ok(m) => min = min.min(m),
                    Err(f) => return Err(f),
                }
                count += 1;
            }
            Ok((count, min))
        })
        .collect();
    let mut total = 0;
    let mut min = usize::MAX;
    for o in outcome {
        let (c, m) = match o {
            Ok(v) => v,
            Err(report) => return Ok(report),
        };
        total += c;
        min = min.min(m);
    }
    Ok(ParadoxReport::Pass {
        sets_checked: total,
        min_dominators: min,
    })
}

/// Marks the signature of every common dominator and reports the first
/// missing one. Returns the number of dominators on success.
fn check_set(
    t: &ColourfulTournament,
    dominators: &[usize],
    set: &[usize],
    signatures: usize,
    per_colour: usize,
) -> std::result::Result<usize, ParadoxReport> {
    let qc = t.arc_colours();
    let mut seen = vec![false; signatures];
    let mut hit = 0;
    for &b in dominators {
        let mut idx = 0usize;
        for &a in set.iter().rev() {
            idx = idx * qc + t.arc_colour(b, a) as usize;
        }
        let s = t.vertex_colour(b) as usize * per_colour + idx;
        // Distinct (r, q̄) requirements need distinct dominators, so a
        // signature is counted once however many vertices carry it.
        if !seen[s] {
            seen[s] = true;
            hit += 1;
        }
    }
    if hit == signatures {
        return Ok(dominators.len());
    }
    let missing = seen.iter().position(|x| !x).expect("some signature missing");
    let colour = (missing / per_colour) as u32;
    let mut rest = missing % per_colour;
    let arc_colours = (0..set.len())
        .map(|_| {
            let q = (rest % qc) as u32;
            rest /= qc;
            q
        })
        .collect();
    Err(ParadoxReport::Fail {
        colour,
        tuple: set.to_vec(),
        arc_colours,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ExtensionReport {
    Pass { pairs_checked: u64 },
    Fail { dominated: Vec<usize>, dominating: Vec<usize> },
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        matches!(self, ExtensionReport::Pass { .. })
    }
}

/// Exhaustive check: for disjoint `A`, `C` with `|A| + |C| ≤ k` some vertex
/// outside both beats every vertex of `A` and is beaten by every vertex of `C`.
pub fn verify_k_extension(t: &ColourfulTournament, k: usize) -> ExtensionReport {
    let n = t.len();
    let mut checked = 0u64;
    for size in 0..=k.min(n) {
        for set in (0..n).combinations(size) {
            for mask in 0u32..(1 << size) {
                let mut cand = FixedBitSet::with_capacity(n);
                cand.insert_range(..);
                let (mut a_side, mut c_side) = (Vec::new(), Vec::new());
                for (i, &v) in set.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        c_side.push(v);
                        cand.intersect_with(t.out_set(v));
                    } else {
                        a_side.push(v);
                        cand.intersect_with(t.in_set(v));
                    }
                }
                for &v in &set {
                    cand.set(v, false);
                }
                checked += 1;
                if cand.count_ones(..) == 0 {
                    return ExtensionReport::Fail {
                        dominated: a_side,
                        dominating: c_side,
                    };
                }
            }
        }
    }
    ExtensionReport::Pass { pairs_checked: checked }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpotCheckReport {
    pub samples: usize,
    pub failures: Vec<(u32, Vec<usize>, Vec<u32>)>,
}

impl SpotCheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Samples random triples `(r, ā, q̄)` and searches the whole vertex set
/// for a colourful dominator. Works on implicit tournaments too big to
/// materialise.
pub fn spot_check_paradoxical<T: Tournament + ?Sized>(
    t: &T,
    samples: usize,
    seed: u64,
) -> Result<SpotCheckReport> {
    let ell = t.arc_colours();
    let n = t.len();
    if n < ell {
        return Err(TournamentError::TooFewVertices { vertices: n, ell });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..samples {
        let r = rng.gen_range(0..t.vertex_colours()) as u32;
        let tuple = rand::seq::index::sample(&mut rng, n, ell).into_vec();
        let q: Vec<u32> = (0..ell).map(|_| rng.gen_range(0..ell) as u32).collect();
        let found = (0..n)
            .into_par_iter()
            .any(|b| dominates_unchecked(t, b, &tuple, r, &q));
        if !found {
            failures.push((r, tuple, q));
        }
    }
    Ok(SpotCheckReport { samples, failures })
}
