//! Weight enumerators of binary linear block codes.
//!
//! The crate combines heuristic evidence (genetic-algorithm weight search),
//! exact counting (exhaustive, systematic, half-rate and cyclic methods),
//! exact enumerator algebra over big integers (MacWilliams transform,
//! Pless identities, Gleason bases, solution families of the support
//! system) and automorphism-group congruences to pin down or approximate
//! the weight enumerator of a code.

pub mod arith;
pub mod autgroup;
pub mod codes;
pub mod error;
pub mod exactcount;
pub mod ga;
pub mod gf2;
pub mod montecarlo;
pub mod spectra;

pub use error::{Error, Result};
