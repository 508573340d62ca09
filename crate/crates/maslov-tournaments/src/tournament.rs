//! Tournament representations.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Result, TournamentError};

/// Read access to a vertex- and arc-coloured tournament.
pub trait Tournament: Sync {
    fn len(&self) -> usize;
    /// Whether the arc between distinct `a` and `b` goes from `a` to `b`.
    fn arc(&self, a: usize, b: usize) -> bool;
    fn vertex_colour(&self, v: usize) -> u32;
    /// Colour of the arc `a → b`; only meaningful when `arc(a, b)`.
    fn arc_colour(&self, a: usize, b: usize) -> u32;
    fn vertex_colours(&self) -> usize;
    fn arc_colours(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `repr(ā, b)`: bit `i` is set iff `a_i → b`.
pub fn repr<T: Tournament + ?Sized>(t: &T, tuple: &[usize], b: usize) -> Result<u64> {
    if tuple.contains(&b) {
        return Err(TournamentError::VertexInTuple(b));
    }
    check_distinct(t, tuple)?;
    Ok(repr_unchecked(tuple, b, |x, y| t.arc(x, y)))
}

pub(crate) fn repr_unchecked(tuple: &[usize], b: usize, arc: impl Fn(usize, usize) -> bool) -> u64 {
    tuple
        .iter()
        .enumerate()
        .filter(|(_, &a)| arc(a, b))
        .fold(0u64, |n, (i, _)| n | 1 << i)
}

pub(crate) fn check_distinct<T: Tournament + ?Sized>(t: &T, tuple: &[usize]) -> Result<()> {
    for (i, &a) in tuple.iter().enumerate() {
        if a >= t.len() {
            return Err(TournamentError::VertexOutOfRange(a));
        }
        if tuple[..i].contains(&a) {
            return Err(TournamentError::RepeatedVertex(a));
        }
    }
    Ok(())
}

/// Whether `b` colourfully dominates `ā` via `r` and `q̄`.
pub fn colourfully_dominates<T: Tournament + ?Sized>(
    t: &T,
    b: usize,
    tuple: &[usize],
    r: u32,
    q: &[u32],
) -> Result<bool> {
    if tuple.len() != t.arc_colours() || q.len() != t.arc_colours() {
        return Err(TournamentError::TupleLength {
            expected: t.arc_colours(),
            found: if tuple.len() != t.arc_colours() { tuple.len() } else { q.len() },
        });
    }
    if b >= t.len() {
        return Err(TournamentError::VertexOutOfRange(b));
    }
    check_distinct(t, tuple)?;
    Ok(dominates_unchecked(t, b, tuple, r, q))
}

pub(crate) fn dominates_unchecked<T: Tournament + ?Sized>(
    t: &T,
    b: usize,
    tuple: &[usize],
    r: u32,
    q: &[u32],
) -> bool {
    !tuple.contains(&b)
        && t.vertex_colour(b) == r
        && tuple
            .iter()
            .zip(q)
            .all(|(&a, &qi)| t.arc(b, a) && t.arc_colour(b, a) == qi)
}

/// Explicit tournament with adjacency bitsets and a full label table.
#[derive(Clone, PartialEq, Eq)]
pub struct ColourfulTournament {
    n: usize,
    /// `out[a]` holds every `b` with `a → b`.
    out: Vec<FixedBitSet>,
    /// `inn[b]` holds every `a` with `a → b`.
    inn: Vec<FixedBitSet>,
    labels: Vec<u32>,
    mu: Vec<u32>,
    vertex_colours: usize,
    arc_colours: usize,
}

impl std::fmt::Debug for ColourfulTournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ColourfulTournament {{ n: {}, |R|: {}, |Q|: {} }}",
            self.n, self.vertex_colours, self.arc_colours
        )
    }
}

impl ColourfulTournament {
    /// Builds a tournament from an orientation rule `arc(a, b)` queried for
    /// `a < b`, a vertex colouring and an arc colouring.
    pub fn from_fn(
        n: usize,
        vertex_colours: usize,
        arc_colours: usize,
        mut arc: impl FnMut(usize, usize) -> bool,
        mu: impl Fn(usize) -> u32,
        mut lambda: impl FnMut(usize, usize) -> u32,
    ) -> Result<Self> {
        let mut t = ColourfulTournament {
            n,
            out: vec![FixedBitSet::with_capacity(n); n],
            inn: vec![FixedBitSet::with_capacity(n); n],
            labels: vec![0; n * n],
            mu: (0..n).map(&mu).collect(),
            vertex_colours,
            arc_colours,
        };
        for a in 0..n {
            for b in a + 1..n {
                let (x, y) = if arc(a, b) { (a, b) } else { (b, a) };
                t.out[x].insert(y);
                t.inn[y].insert(x);
            }
        }
        for a in 0..n {
            for b in t.out[a].ones() {
                let l = lambda(a, b);
                t.labels[a * n + b] = l;
            }
        }
        t.validate()?;
        Ok(t)
    }

    /// Copies any tournament into the explicit representation.
    pub fn materialise<T: Tournament + ?Sized>(t: &T) -> Result<Self> {
        Self::from_fn(
            t.len(),
            t.vertex_colours(),
            t.arc_colours(),
            |a, b| t.arc(a, b),
            |v| t.vertex_colour(v),
            |a, b| t.arc_colour(a, b),
        )
    }

    /// Checks the tournament property and the colour ranges.
    pub fn validate(&self) -> Result<()> {
        if self.vertex_colours == 0 || self.arc_colours == 0 {
            return Err(TournamentError::Malformed("empty colour set".into()));
        }
        for a in 0..self.n {
            if self.out[a].contains(a) {
                return Err(TournamentError::Malformed(format!("self-loop at {a}")));
            }
            if self.mu[a] as usize >= self.vertex_colours {
                return Err(TournamentError::Malformed(format!("vertex colour of {a} out of range")));
            }
            for b in a + 1..self.n {
                if self.out[a].contains(b) == self.out[b].contains(a) {
                    return Err(TournamentError::Malformed(format!(
                        "pair {a},{b} does not carry exactly one arc"
                    )));
                }
            }
            for b in self.out[a].ones() {
                if self.labels[a * self.n + b] as usize >= self.arc_colours {
                    return Err(TournamentError::Malformed(format!("arc colour of {a}->{b} out of range")));
                }
            }
        }
        Ok(())
    }

    pub fn out_set(&self, a: usize) -> &FixedBitSet {
        &self.out[a]
    }

    pub fn in_set(&self, b: usize) -> &FixedBitSet {
        &self.inn[b]
    }

    /// Restriction to the listed vertices, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        Self::from_fn(
            vertices.len(),
            self.vertex_colours,
            self.arc_colours,
            |a, b| self.arc(vertices[a], vertices[b]),
            |v| self.mu[vertices[v]],
            |a, b| self.arc_colour(vertices[a], vertices[b]),
        )
    }

    /// Same tournament with different colourings.
    pub fn recoloured(
        &self,
        vertex_colours: usize,
        arc_colours: usize,
        mu: impl Fn(usize) -> u32,
        lambda: impl FnMut(usize, usize) -> u32,
    ) -> Result<Self> {
        Self::from_fn(self.n, vertex_colours, arc_colours, |a, b| self.arc(a, b), mu, lambda)
    }

    pub fn to_json(&self) -> Value {
        let mut arcs = Vec::new();
        for a in 0..self.n {
            for b in self.out[a].ones() {
                arcs.push(json!([a, b, self.labels[a * self.n + b]]));
            }
        }
        json!({
            "vertices": self.n,
            "vertex_colour_count": self.vertex_colours,
            "arc_colour_count": self.arc_colours,
            "vertex_colours": self.mu,
            "arcs": arcs,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        #[derive(Deserialize, Serialize)]
        struct Raw {
            vertices: usize,
            vertex_colours: Vec<u32>,
            arcs: Vec<(usize, usize, u32)>,
            vertex_colour_count: Option<usize>,
            arc_colour_count: Option<usize>,
        }
        let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| TournamentError::Json(e.to_string()))?;
        let n = raw.vertices;
        if raw.vertex_colours.len() != n {
            return Err(TournamentError::Json("one vertex colour per vertex expected".into()));
        }
        let mut dir = vec![None::<(bool, u32)>; n * n];
        for &(a, b, l) in &raw.arcs {
            if a >= n || b >= n {
                return Err(TournamentError::VertexOutOfRange(a.max(b)));
            }
            if a == b {
                return Err(TournamentError::Malformed(format!("self-loop at {a}")));
            }
            let (lo, hi) = (a.min(b), a.max(b));
            if dir[lo * n + hi].replace((a < b, l)).is_some() {
                return Err(TournamentError::Malformed(format!("pair {lo},{hi} listed twice")));
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if dir[a * n + b].is_none() {
                    return Err(TournamentError::Malformed(format!("pair {a},{b} has no arc")));
                }
            }
        }
        let vc = raw
            .vertex_colour_count
            .unwrap_or_else(|| raw.vertex_colours.iter().max().map_or(1, |m| *m as usize + 1));
        let ac = raw
            .arc_colour_count
            .unwrap_or_else(|| raw.arcs.iter().map(|x| x.2).max().map_or(1, |m| m as usize + 1));
        Self::from_fn(
            n,
            vc,
            ac,
            |a, b| dir[a * n + b].expect("checked").0,
            |v| raw.vertex_colours[v],
            |a, b| dir[a.min(b) * n + a.max(b)].expect("checked").1,
        )
    }
}

impl Tournament for ColourfulTournament {
    fn len(&self) -> usize {
        self.n
    }

    fn arc(&self, a: usize, b: usize) -> bool {
        self.out[a].contains(b)
    }

    fn vertex_colour(&self, v: usize) -> u32 {
        self.mu[v]
    }

    fn arc_colour(&self, a: usize, b: usize) -> u32 {
        self.labels[a * self.n + b]
    }

    fn vertex_colours(&self) -> usize {
        self.vertex_colours
    }

    fn arc_colours(&self) -> usize {
        self.arc_colours
    }
}

/// The directed 3-cycle 0 → 1 → 2 → 0 with single colours.
pub fn three_cycle() -> ColourfulTournament {
    ColourfulTournament::from_fn(3, 1, 1, |a, b| b == a + 1, |_| 0, |_, _| 0).expect("valid")
}
