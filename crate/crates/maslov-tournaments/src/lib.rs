//! Vertex- and arc-coloured tournaments and their paradoxical property:
//! exhaustive verifiers, the random construction on `ℛ × [n]`, and the
//! explicit construction over Paley tournaments.

pub mod error;
pub mod paley;
pub mod random;
pub mod tournament;
pub mod verify;

pub use error::{Result, TournamentError};
pub use paley::{
    build_paley, build_paley_colourful, build_paley_colourful_with_prime, is_prime,
    is_quadratic_residue, next_paley_prime, PaleyColourful, PaleyParameters, PaleyTournament,
    DEFAULT_PRIME_LIMIT,
};
pub use random::{
    default_multiplicity, find_paradoxical, sample_paradoxical, sample_random,
    sample_random_sized, MAX_ATTEMPTS,
};
pub use tournament::{colourfully_dominates, repr, three_cycle, ColourfulTournament, Tournament};
pub use verify::{
    spot_check_paradoxical, verify_k_extension, verify_paradoxical, verify_paradoxical_len,
    ExtensionReport, ParadoxReport, SpotCheckReport,
};
