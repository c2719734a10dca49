//! The rank-n witness families. Ambient space is Q^{2n} with coordinates
//! `x_0..x_{n-1}, z_0..z_{n-1}`:
//!
//! * `G_base(n) = <(x_a, {p1})>` — the fully p1-divisible base;
//! * `G_U(n) = <(x_a, {p1}), (z_a, {p3}), (x_a + z_a, {p4})>` for all `a`,
//!   plus `(z_b, {p5})` for `b ∈ U`.
//!
//! These are finite-rank surrogates for the transfinite family indexed by
//! an infinite cardinal; all instability and amalgamation experiments run
//! over them.

use crate::class::PrimeTuple;
use crate::error::KhatError;
use khat_groups::{LocalizedGroup, PrimeSet};
use khat_linalg::{QVector, Rational};
use num_traits::{One, Zero};

/// The x_a coordinate vector in Q^{2n}.
pub fn x_vec(n: usize, a: usize) -> QVector {
    let mut v = vec![Rational::zero(); 2 * n];
    v[a] = Rational::one();
    v
}

/// The z_a coordinate vector in Q^{2n}.
pub fn z_vec(n: usize, a: usize) -> QVector {
    let mut v = vec![Rational::zero(); 2 * n];
    v[n + a] = Rational::one();
    v
}

/// The x_a + z_a vector in Q^{2n}.
pub fn xz_vec(n: usize, a: usize) -> QVector {
    let mut v = vec![Rational::zero(); 2 * n];
    v[a] = Rational::one();
    v[n + a] = Rational::one();
    v
}

fn validate(n: usize, u: &[usize]) -> Result<(), KhatError> {
    if n == 0 {
        return Err(KhatError::Precondition("rank n must be at least 1".into()));
    }
    if let Some(&bad) = u.iter().find(|&&b| b >= n) {
        return Err(KhatError::InvalidSubset(format!("index {bad} out of range 0..{n}")));
    }
    Ok(())
}

pub fn build_g_base(n: usize, primes: &PrimeTuple) -> Result<LocalizedGroup, KhatError> {
    validate(n, &[])?;
    let p1 = PrimeSet::new([primes.p1().clone()]).expect("tuple primes are prime");
    let raw = (0..n).map(|a| (x_vec(n, a), p1.clone())).collect();
    Ok(LocalizedGroup::new(2 * n, raw)?)
}

pub fn build_g_u(n: usize, u: &[usize], primes: &PrimeTuple) -> Result<LocalizedGroup, KhatError> {
    validate(n, u)?;
    let pset = |p: &num_bigint::BigUint| PrimeSet::new([p.clone()]).expect("prime");
    let mut raw: Vec<(QVector, PrimeSet)> = Vec::new();
    for a in 0..n {
        raw.push((x_vec(n, a), pset(primes.p1())));
        raw.push((z_vec(n, a), pset(primes.p3())));
        raw.push((xz_vec(n, a), pset(primes.p4())));
    }
    for &b in u {
        raw.push((z_vec(n, b), pset(primes.p5())));
    }
    Ok(LocalizedGroup::new(2 * n, raw)?)
}

/// All subsets of {0..n-1} in binary counting order; the experiment
/// iteration order is fixed by this.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u64..(1u64 << n))
        .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
        .collect()
}
