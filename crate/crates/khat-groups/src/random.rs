//! Seeded random elements, used by the oracle-agreement and invariant suites.

use crate::group::LocalizedGroup;
use khat_linalg::{QVector, Rational};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

impl LocalizedGroup {
    /// A deterministic pseudo-random member `sum_j (a_j / m_j) v_j` with
    /// `|a_j| <= coeff_bound` and `m_j` a product of the generator's primes
    /// with exponents at most `exponent_bound`. The same seed always yields
    /// the same element, and the output is a member of the group by
    /// construction.
    pub fn random_element(&self, seed: u64, exponent_bound: u32, coeff_bound: u32) -> QVector {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = vec![Rational::zero(); self.ambient_dim()];
        for g in self.generators() {
            let a = rng.gen_range(-(coeff_bound as i64)..=coeff_bound as i64);
            let mut denom = BigInt::from(1);
            for p in g.primes().iter() {
                let e = rng.gen_range(0..=exponent_bound);
                denom *= BigInt::from(p.clone()).pow(e);
            }
            let c = Rational::new(BigInt::from(a), denom);
            if c.is_zero() {
                continue;
            }
            for (acc, x) in out.iter_mut().zip(g.vector()) {
                *acc = &*acc + &c * x;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::PrimeSet;
    use khat_linalg::rat_int;

    fn fixture() -> LocalizedGroup {
        LocalizedGroup::new(
            2,
            vec![
                (vec![rat_int(1), rat_int(0)], PrimeSet::from_u64([2]).unwrap()),
                (vec![rat_int(0), rat_int(1)], PrimeSet::from_u64([3]).unwrap()),
                (vec![rat_int(1), rat_int(1)], PrimeSet::from_u64([5]).unwrap()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn zero_bounds_give_zero_vector() {
        let g = fixture();
        let v = g.random_element(7, 0, 0);
        assert!(v.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn outputs_are_members_and_deterministic() {
        let g = fixture();
        for seed in 0..50 {
            let v = g.random_element(seed, 3, 8);
            assert!(g.member(&v).unwrap(), "seed {seed}: {v:?}");
            assert_eq!(v, g.random_element(seed, 3, 8));
        }
    }
}
