//! Finitely presented prime-localized subgroups of Q^d and their decision
//! procedures: membership, infinite p-divisibility and p^ω-parts, purity,
//! containment, sums and direct sums, pure closures, and intersection with
//! rational subspaces.
//!
//! All values are immutable and every operation is a pure function; random
//! element generation takes an explicit seed. See `group` for the canonical
//! presentation and the localization lemma the procedures rest on.

pub mod error;
pub mod group;
pub mod intersect;
pub mod json;
pub mod membership;
pub mod primes;
pub mod purity;
pub mod random;

pub use error::GroupError;
pub use group::{Generator, LocalizedGroup};
pub use primes::{factor, is_prime, primes_dividing, PrimeSet};
