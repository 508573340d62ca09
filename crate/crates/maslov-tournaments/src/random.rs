//! Random colourful tournaments on `ℛ × [n]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, TournamentError};
use crate::tournament::ColourfulTournament;
use crate::verify::{verify_paradoxical_len, ParadoxReport};

/// Resampling budget of [`sample_paradoxical`].
pub const MAX_ATTEMPTS: usize = 32;

/// Per-colour multiplicity `⌈10·(2ℓ)^{ℓ+1}·(ln|ℛ| + ℓ·ln ℓ)⌉`, at least ℓ.
pub fn default_multiplicity(vertex_colours: usize, ell: usize) -> usize {
    let l = ell as f64;
    let ln_l = if ell > 1 { l.ln() } else { 0.0 };
    let bound = 10.0 * (2.0 * l).powi(ell as i32 + 1) * ((vertex_colours as f64).ln() + l * ln_l);
    (bound.ceil() as usize).max(ell)
}

/// Vertex `r·n + i` stands for `(r, i)` and has colour `r`. Orientations and
/// arc colours are drawn independently and uniformly.
pub fn sample_random(vertex_colours: usize, arc_colours: usize, n: usize, seed: u64) -> Result<ColourfulTournament> {
    if n < arc_colours {
        return Err(TournamentError::MultiplicityTooSmall { n, ell: arc_colours });
    }
    sample_coloured(vertex_colours * n, vertex_colours, arc_colours, seed, |v| (v / n) as u32)
}

/// Random tournament on an arbitrary number of vertices, vertex `v`
/// coloured `v mod |ℛ|`.
pub fn sample_random_sized(
    vertices: usize,
    vertex_colours: usize,
    arc_colours: usize,
    seed: u64,
) -> Result<ColourfulTournament> {
    sample_coloured(vertices, vertex_colours, arc_colours, seed, |v| (v % vertex_colours) as u32)
}

fn sample_coloured(
    vertices: usize,
    vertex_colours: usize,
    arc_colours: usize,
    seed: u64,
    mu: impl Fn(usize) -> u32,
) -> Result<ColourfulTournament> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut orient = vec![false; vertices * vertices];
    let mut label = vec![0u32; vertices * vertices];
    for a in 0..vertices {
        for b in a + 1..vertices {
            let forward: bool = rng.gen();
            let q = rng.gen_range(0..arc_colours) as u32;
            orient[a * vertices + b] = forward;
            if forward {
                label[a * vertices + b] = q;
            } else {
                label[b * vertices + a] = q;
            }
        }
    }
    ColourfulTournament::from_fn(
        vertices,
        vertex_colours,
        arc_colours,
        |a, b| orient[a * vertices + b],
        mu,
        |a, b| label[a * vertices + b],
    )
}

/// Resamples (seeds `seed`, `seed+1`, …) until the verifier accepts, at most
/// [`MAX_ATTEMPTS`] times. Returns the tournament and the attempt count.
pub fn sample_paradoxical(
    vertex_colours: usize,
    arc_colours: usize,
    n: usize,
    seed: u64,
) -> Result<(ColourfulTournament, usize)> {
    for attempt in 0..MAX_ATTEMPTS {
        let t = sample_random(vertex_colours, arc_colours, n, seed.wrapping_add(attempt as u64))?;
        if verify_paradoxical_len(&t, arc_colours)?.passed() {
            return Ok((t, attempt + 1));
        }
    }
    Err(TournamentError::NotFound { attempts: MAX_ATTEMPTS })
}

/// Looks for a small paradoxical tournament for tuples of length `ell`:
/// the multiplicity grows geometrically from `ell` up to `max_multiplicity`,
/// with a few samples per size.
pub fn find_paradoxical(
    vertex_colours: usize,
    arc_colours: usize,
    ell: usize,
    seed: u64,
    max_multiplicity: usize,
) -> Result<ColourfulTournament> {
    let mut n = ell.max(1);
    let mut attempts = 0;
    loop {
        for i in 0..4u64 {
            attempts += 1;
            let t = sample_random(vertex_colours, arc_colours.max(1), n.max(arc_colours), seed ^ (n as u64) << 8 ^ i)?;
            if let ParadoxReport::Pass { .. } = verify_paradoxical_len(&t, ell)? {
                return Ok(t);
            }
        }
        if n >= max_multiplicity {
            return Err(TournamentError::NotFound { attempts });
        }
        n = (n + n / 4 + 1).min(max_multiplicity);
    }
}
