use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TournamentError {
    #[error("tuple length {found} does not match the number of arc colours {expected}")]
    TupleLength { expected: usize, found: usize },
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("vertex {0} occurs twice in the tuple")]
    RepeatedVertex(usize),
    #[error("vertex {0} belongs to the tuple it should be compared against")]
    VertexInTuple(usize),
    #[error("tournament has {vertices} vertices, fewer than the tuple length {ell}")]
    TooFewVertices { vertices: usize, ell: usize },
    #[error("not a tournament: {0}")]
    Malformed(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not congruent to 3 modulo 4")]
    WrongResidue(u64),
    #[error("multiplicity {n} is below the number of arc colours {ell}")]
    MultiplicityTooSmall { n: usize, ell: usize },
    #[error("construction needs a Paley tournament on at least {required} vertices, above the limit {limit}")]
    ResourceGuard { required: String, limit: u64 },
    #[error("no paradoxical tournament found after {attempts} attempts")]
    NotFound { attempts: usize },
    #[error("invalid tournament JSON: {0}")]
    Json(String),
}

pub type Result<T, E = TournamentError> = std::result::Result<T, E>;
