//! The universal data model: finitely presented subgroups of Q^d of the form
//! `G = sum_j Z[1/P_j] * v_j`, given by a list of generators, each a vector
//! `v_j` together with a finite set of inverted primes `P_j`.
//!
//! # Canonical form
//!
//! `Z[1/P] * v` is invariant under multiplication by P-units (signed products
//! of powers of primes in P). Canonicalization scales each generator by the
//! unique *positive* P-unit that makes the vector p-integral with p-content
//! zero for every p in P (that is, the minimum p-adic valuation over the
//! coordinates is exactly 0). Primes outside P may remain in denominators:
//! `Z[1/P] * (v/delta)` with delta coprime to P is a legitimate group that
//! has no presentation with integral vectors, and such presentations do
//! arise as subspace intersections. Zero vectors are dropped, duplicates are
//! merged, and generators are sorted, so equal presentations are structurally
//! equal. The zero group is the empty generator list.
//!
//! # Divisibility structure (localization lemma)
//!
//! Write `W_p = span_Q{ v_j : p in P_j }`. Localizing at a prime q turns the
//! group into `G_(q) = W_q + L_q` with `L_q` the Z_(q)-span of the remaining
//! generators, and `G = ∩_q G_(q)`. Two consequences drive every decision
//! procedure here:
//!
//! * `p^ω G = G ∩ W_p`: an element of `G ∩ W_p` can be divided by p forever
//!   (inside `W_p` at p, and p is a unit at every other prime); conversely an
//!   element infinitely p-divisible at p must fall into the divisible part
//!   `W_p` of `G_(p)`, because `∩_n p^n L_p = 0` for a finitely generated
//!   Z_(p)-lattice.
//! * membership is a finite per-prime test: away from the inverted primes and
//!   the invariant factors of the generator matrix, `G_(q)` is a saturated
//!   lattice and the test is automatic.

use crate::error::GroupError;
use crate::primes::{primes_dividing, PrimeSet};
use khat_linalg::{
    clear_denominators, valuation, IntMatrix, QVector, Rational, Subspace,
};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

/// One generator `Z[1/P] * v` of a localized group, in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Generator {
    vector: QVector,
    primes: PrimeSet,
}

impl Generator {
    pub fn vector(&self) -> &QVector {
        &self.vector
    }

    pub fn primes(&self) -> &PrimeSet {
        &self.primes
    }
}

/// A finitely presented subgroup of Q^ambient_dim. Always canonical.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalizedGroup {
    ambient_dim: usize,
    generators: Vec<Generator>,
}

/// p^e as a rational, for possibly negative e.
fn prime_power(p: &BigUint, e: i64) -> Rational {
    let pb = BigInt::from(p.clone());
    if e >= 0 {
        Rational::from_integer(pb.pow(e as u32))
    } else {
        Rational::new(BigInt::one(), pb.pow((-e) as u32))
    }
}

/// Scales `v` by the positive P-unit making it p-reduced for every p in P;
/// returns `None` for the zero vector.
fn reduce_vector(mut v: QVector, primes: &PrimeSet) -> Option<QVector> {
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    for p in primes.iter() {
        let min_val = v
            .iter()
            .filter_map(|x| valuation(x, p))
            .min()
            .expect("nonzero vector has a nonzero coordinate");
        if min_val != 0 {
            let f = prime_power(p, -min_val);
            for x in v.iter_mut() {
                *x = &*x * &f;
            }
        }
    }
    Some(v)
}

impl LocalizedGroup {
    /// Builds a group from raw (vector, primes) pairs, canonicalizing.
    pub fn new(
        ambient_dim: usize,
        raw: Vec<(QVector, PrimeSet)>,
    ) -> Result<LocalizedGroup, GroupError> {
        let mut generators = Vec::new();
        for (v, primes) in raw {
            if v.len() != ambient_dim {
                return Err(GroupError::DimensionMismatch { expected: ambient_dim, got: v.len() });
            }
            if let Some(vector) = reduce_vector(v, &primes) {
                generators.push(Generator { vector, primes });
            }
        }
        generators.sort();
        generators.dedup();
        Ok(LocalizedGroup { ambient_dim, generators })
    }

    pub fn zero(ambient_dim: usize) -> LocalizedGroup {
        LocalizedGroup { ambient_dim, generators: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Re-canonicalizes; a no-op on any group built by this module, kept as
    /// the public entry point for the idempotence contract.
    pub fn canonicalize(&self) -> LocalizedGroup {
        LocalizedGroup::new(
            self.ambient_dim,
            self.generators.iter().map(|g| (g.vector.clone(), g.primes.clone())).collect(),
        )
        .expect("canonical data re-canonicalizes")
    }

    /// The rational span of all generators.
    pub fn span(&self) -> Subspace {
        let vs: Vec<QVector> = self.generators.iter().map(|g| g.vector.clone()).collect();
        Subspace::span(&vs, self.ambient_dim)
    }

    /// `W_p`: the rational span of the generators whose prime set contains p.
    /// By the localization lemma, `p^ω G = G ∩ W_p`.
    pub fn prime_support_span(&self, p: &BigUint) -> Subspace {
        let vs: Vec<QVector> = self
            .generators
            .iter()
            .filter(|g| g.primes.contains(p))
            .map(|g| g.vector.clone())
            .collect();
        Subspace::span(&vs, self.ambient_dim)
    }

    /// Generators whose prime set does not contain p (the lattice part at p).
    pub(crate) fn lattice_part_at(&self, p: &BigUint) -> Vec<QVector> {
        self.generators
            .iter()
            .filter(|g| !g.primes.contains(p))
            .map(|g| g.vector.clone())
            .collect()
    }

    /// Union of generator prime sets, primes dividing the invariant factors
    /// of the (denominator-cleared) generator matrix, and primes dividing
    /// generator denominators. A superset of every prime at which the
    /// localization of G differs from a saturated lattice.
    pub fn relevant_primes(&self) -> PrimeSet {
        let mut set = PrimeSet::empty();
        for g in &self.generators {
            set = set.union(&g.primes);
            for x in &g.vector {
                if !x.denom().is_one() {
                    set = set.union(&primes_dividing([x.denom()]));
                }
            }
        }
        if !self.generators.is_empty() {
            let rows: Vec<Vec<BigInt>> =
                self.generators.iter().map(|g| clear_denominators(&g.vector)).collect();
            let m = IntMatrix::from_rows(rows);
            let factors = khat_linalg::invariant_factors(&m);
            set = set.union(&primes_dividing(factors.iter()));
        }
        set
    }

    /// Generator-list concatenation followed by canonicalization.
    pub fn sum(&self, other: &LocalizedGroup) -> Result<LocalizedGroup, GroupError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(GroupError::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        let mut raw: Vec<(QVector, PrimeSet)> =
            self.generators.iter().map(|g| (g.vector.clone(), g.primes.clone())).collect();
        raw.extend(other.generators.iter().map(|g| (g.vector.clone(), g.primes.clone())));
        LocalizedGroup::new(self.ambient_dim, raw)
    }

    /// Block embedding into Q^{d1 + d2}: self on the first coordinates,
    /// other on the last.
    pub fn direct_sum(&self, other: &LocalizedGroup) -> LocalizedGroup {
        let d = self.ambient_dim + other.ambient_dim;
        let mut raw = Vec::new();
        for g in &self.generators {
            let mut v = g.vector.clone();
            v.resize(d, Rational::zero());
            raw.push((v, g.primes.clone()));
        }
        for g in &other.generators {
            let mut v = vec![Rational::zero(); self.ambient_dim];
            v.extend(g.vector.clone());
            raw.push((v, g.primes.clone()));
        }
        LocalizedGroup::new(d, raw).expect("dimensions consistent by construction")
    }

    /// `{n*g : g in G}` for a positive integer n.
    pub fn scale(&self, n: &BigInt) -> Result<LocalizedGroup, GroupError> {
        if !n.is_positive() {
            return Err(GroupError::NonPositiveScale(n.to_string()));
        }
        let f = Rational::from_integer(n.clone());
        LocalizedGroup::new(
            self.ambient_dim,
            self.generators
                .iter()
                .map(|g| (g.vector.iter().map(|x| x * &f).collect(), g.primes.clone()))
                .collect(),
        )
    }

    pub(crate) fn check_dim(&self, v: &[Rational]) -> Result<(), GroupError> {
        if v.len() != self.ambient_dim {
            return Err(GroupError::DimensionMismatch {
                expected: self.ambient_dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Drops generators already contained (with their divisibility) in the
    /// group presented by the remaining ones. Semantics are unchanged; used
    /// to keep computed presentations small.
    pub fn simplify(&self) -> LocalizedGroup {
        let mut gens = self.generators.clone();
        let mut i = 0;
        while i < gens.len() {
            let mut rest = gens.clone();
            let cand = rest.remove(i);
            let without = LocalizedGroup { ambient_dim: self.ambient_dim, generators: rest };
            let redundant = without.member(&cand.vector).unwrap_or(false)
                && cand
                    .primes
                    .iter()
                    .all(|p| without.is_inf_divisible(&cand.vector, p).unwrap_or(false));
            if redundant {
                gens.remove(i);
            } else {
                i += 1;
            }
        }
        LocalizedGroup { ambient_dim: self.ambient_dim, generators: gens }
    }
}
