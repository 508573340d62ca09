//! Paley tournaments and the explicit colourful construction built on them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Result, TournamentError};
use crate::tournament::{repr_unchecked, Tournament};

/// Default ceiling on the field size for [`build_paley_colourful`].
pub const DEFAULT_PRIME_LIMIT: u64 = 50_000_000;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = (base % m) as u128;
    let m128 = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

/// Euler's criterion: `x` is a non-zero square modulo the odd prime `p`.
pub fn is_quadratic_residue(x: u64, p: u64) -> bool {
    let x = x % p;
    x != 0 && mod_pow(x, (p - 1) / 2, p) == 1
}

/// Smallest prime `p ≡ 3 (mod 4)` with `p ≥ lower`.
pub fn next_paley_prime(lower: u64) -> u64 {
    let mut p = lower.max(3);
    p += (3 + 4 - p % 4) % 4;
    while !is_prime(p) {
        p += 4;
    }
    p
}

/// The Paley tournament on `𝔽_p`: `a → b` iff `a − b` is a non-zero square.
/// Arcs are answered from a residue table of size `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaleyTournament {
    p: u64,
    residue: Vec<bool>,
}

impl PaleyTournament {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(TournamentError::NotPrime(p));
        }
        if p % 4 != 3 {
            return Err(TournamentError::WrongResidue(p));
        }
        let residue = (0..p).map(|x| is_quadratic_residue(x, p)).collect();
        Ok(PaleyTournament { p, residue })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn beats(&self, a: usize, b: usize) -> bool {
        let p = self.p as usize;
        a != b && self.residue[(a + p - b) % p]
    }
}

impl Tournament for PaleyTournament {
    fn len(&self) -> usize {
        self.p as usize
    }

    fn arc(&self, a: usize, b: usize) -> bool {
        self.beats(a, b)
    }

    fn vertex_colour(&self, _: usize) -> u32 {
        0
    }

    fn arc_colour(&self, _: usize, _: usize) -> u32 {
        0
    }

    fn vertex_colours(&self) -> usize {
        1
    }

    fn arc_colours(&self) -> usize {
        1
    }
}

pub fn build_paley(p: u64) -> Result<PaleyTournament> {
    PaleyTournament::new(p)
}

/// Parameters of the explicit construction for `ℛ = {0..2^m−1}` and
/// `𝒬 = {0..2^{2^t−1}−1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PaleyParameters {
    pub t: u32,
    pub m: u32,
    /// `|𝒬| = 2^{2^t−1}`, also the tuple length ℓ.
    pub ell: u64,
    /// `k = t + m + 2^{2^t−1}·2^t`.
    pub k: u64,
}

impl PaleyParameters {
    pub fn new(t: u32, m: u32) -> Option<Self> {
        if t == 0 || m == 0 || t > 5 {
            return None;
        }
        let ell = 1u64.checked_shl((1u32 << t) - 1)?;
        let k = (t as u64) + (m as u64) + ell.checked_mul(1u64 << t)?;
        Some(PaleyParameters { t, m, ell, k })
    }

    /// `k²·2^{2k}` as a decimal string, or `None` when it overflows `u128`.
    pub fn required_size(&self) -> Option<u128> {
        let k = self.k as u128;
        let shift = 2 * self.k;
        if shift >= 120 {
            return None;
        }
        (k * k).checked_mul(1u128 << shift)
    }

    pub fn vertex_colours(&self) -> usize {
        1 << self.m
    }
}

/// The colourful tournament induced on the smallest repr-class, with
/// colours read off the control vertices and the chain table.
#[derive(Debug, Clone)]
pub struct PaleyColourful {
    pub params: PaleyParameters,
    pub base: PaleyTournament,
    pub control_bit: Vec<usize>,
    pub control_mu: Vec<usize>,
    /// Classes sorted by size (ties by repr index), as base-vertex lists.
    pub classes: Vec<Vec<usize>>,
    /// repr index of the smallest class.
    pub n_star: u64,
    /// Vertices of the result, i.e. the smallest class.
    pub vertices: Vec<usize>,
    /// `s(b)` for every vertex of the result, aligned with `vertices`.
    pub chain: Vec<Vec<usize>>,
    index: BTreeMap<usize, usize>,
}

impl PaleyColourful {
    pub fn base_vertex(&self, v: usize) -> usize {
        self.vertices[v]
    }

    pub fn index_of(&self, base: usize) -> Option<usize> {
        self.index.get(&base).copied()
    }

    /// Chain tuples are disjoint and each lies in `C₂ × … × C_{2^t}`.
    pub fn chain_is_valid(&self) -> bool {
        let mut used = std::collections::BTreeSet::new();
        for (v, s) in self.vertices.iter().zip(&self.chain) {
            if !used.insert(*v) {
                return false;
            }
            for (j, x) in s.iter().enumerate() {
                if !self.classes[j + 1].contains(x) || !used.insert(*x) {
                    return false;
                }
            }
        }
        true
    }
}

impl Tournament for PaleyColourful {
    fn len(&self) -> usize {
        self.vertices.len()
    }

    fn arc(&self, a: usize, b: usize) -> bool {
        self.base.beats(self.vertices[a], self.vertices[b])
    }

    fn vertex_colour(&self, v: usize) -> u32 {
        repr_unchecked(&self.control_mu, self.vertices[v], |x, y| self.base.beats(x, y)) as u32
    }

    fn arc_colour(&self, a: usize, b: usize) -> u32 {
        repr_unchecked(&self.chain[b], self.vertices[a], |x, y| self.base.beats(x, y)) as u32
    }

    fn vertex_colours(&self) -> usize {
        self.params.vertex_colours()
    }

    fn arc_colours(&self) -> usize {
        self.params.ell as usize
    }
}

/// Runs the explicit construction with the smallest admissible prime,
/// refusing when that prime exceeds `prime_limit`.
pub fn build_paley_colourful(t: u32, m: u32, prime_limit: u64) -> Result<PaleyColourful> {
    let params = PaleyParameters::new(t, m).ok_or_else(|| TournamentError::ResourceGuard {
        required: format!("parameters t={t}, m={m} out of range"),
        limit: prime_limit,
    })?;
    let required = params.required_size();
    match required {
        Some(r) if r <= prime_limit as u128 => {
            let p = next_paley_prime(r as u64);
            if p > prime_limit {
                return Err(TournamentError::ResourceGuard {
                    required: p.to_string(),
                    limit: prime_limit,
                });
            }
            build_paley_colourful_with_prime(t, m, p)
        }
        Some(r) => Err(TournamentError::ResourceGuard {
            required: r.to_string(),
            limit: prime_limit,
        }),
        None => Err(TournamentError::ResourceGuard {
            required: format!("{}^2 * 2^{}", params.k, 2 * params.k),
            limit: prime_limit,
        }),
    }
}

/// The construction over an explicitly chosen prime. Below the size
/// guarantee the result may fail to be paradoxical.
pub fn build_paley_colourful_with_prime(t: u32, m: u32, p: u64) -> Result<PaleyColourful> {
    let params = PaleyParameters::new(t, m).ok_or_else(|| TournamentError::ResourceGuard {
        required: format!("parameters t={t}, m={m} out of range"),
        limit: p,
    })?;
    let base = PaleyTournament::new(p)?;
    let t_us = t as usize;
    let m_us = m as usize;
    if (p as usize) < t_us + m_us + (1 << t_us) {
        return Err(TournamentError::TooFewVertices {
            vertices: p as usize,
            ell: t_us + m_us + (1 << t_us),
        });
    }
    let control_bit: Vec<usize> = (0..t_us).collect();
    let control_mu: Vec<usize> = (t_us..t_us + m_us).collect();
    let mut by_repr: Vec<Vec<usize>> = vec![Vec::new(); 1 << t_us];
    for x in t_us + m_us..p as usize {
        let n = repr_unchecked(&control_bit, x, |a, b| base.beats(a, b));
        by_repr[n as usize].push(x);
    }
    let mut order: Vec<usize> = (0..by_repr.len()).collect();
    order.sort_by_key(|&i| (by_repr[i].len(), i));
    let n_star = order[0] as u64;
    let classes: Vec<Vec<usize>> = order.iter().map(|&i| by_repr[i].clone()).collect();
    // Greedy maximal chain table: every class is at least as large as the
    // first, so the j-th vertex of C₁ takes the j-th vertex of each class.
    let vertices = classes[0].clone();
    let chain: Vec<Vec<usize>> = (0..vertices.len())
        .map(|j| classes[1..].iter().map(|c| c[j]).collect())
        .collect();
    let index = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    Ok(PaleyColourful {
        params,
        base,
        control_bit,
        control_mu,
        classes,
        n_star,
        vertices,
        chain,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_mod_seven() {
        let r: Vec<u64> = (1..7).filter(|&x| is_quadratic_residue(x, 7)).collect();
        assert_eq!(r, [1, 2, 4]);
        let t = build_paley(7).unwrap();
        assert!(t.beats(1, 0));
        assert!(t.beats(0, 3));
    }

    #[test]
    fn three_vertices_form_a_cycle() {
        let t = build_paley(3).unwrap();
        assert!(t.beats(1, 0) && t.beats(0, 2) && t.beats(2, 1));
    }

    #[test]
    fn invalid_moduli() {
        assert_eq!(build_paley(5).unwrap_err(), TournamentError::WrongResidue(5));
        assert_eq!(build_paley(15).unwrap_err(), TournamentError::NotPrime(15));
    }

    #[test]
    fn parameters_for_one_one() {
        let p = PaleyParameters::new(1, 1).unwrap();
        assert_eq!(p.ell, 2);
        assert_eq!(p.k, 6);
        assert_eq!(p.required_size(), Some(36 * 4096));
        assert_eq!(PaleyParameters::new(2, 1).unwrap().ell, 8);
    }

    #[test]
    fn huge_parameters_are_refused() {
        match build_paley_colourful(2, 1, DEFAULT_PRIME_LIMIT) {
            Err(TournamentError::ResourceGuard { required, .. }) => assert_eq!(required, (1225u128 << 70).to_string()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn next_prime() {
        assert_eq!(next_paley_prime(147_456), 147_487);
        assert_eq!(next_paley_prime(60), 67);
    }
}
