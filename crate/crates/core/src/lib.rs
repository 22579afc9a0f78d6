//! Silting theory over finite dimensional bound quiver algebras.

pub mod algebra;
pub mod error;
pub mod exactlin;
pub mod indec;
pub mod io;
pub mod report;
pub mod repmod;
pub mod silting;
pub mod torsion;
pub mod twoterm;
pub mod verify;

pub use error::{Error, Result};

/// Deterministic generator used for every randomized witness search.
pub type SeededRng = rand_chacha::ChaCha8Rng;

/// Default seed ("S1LT").
pub const DEFAULT_SEED: u64 = 0x5117;

pub fn seeded_rng(seed: u64) -> SeededRng {
    use rand::SeedableRng;
    SeededRng::seed_from_u64(seed)
}
