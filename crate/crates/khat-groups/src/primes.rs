//! Prime sets, deterministic primality testing, and integer factorization.

use crate::error::GroupError;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// A strictly sorted set of distinct primes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default, Hash)]
pub struct PrimeSet(BTreeSet<BigUint>);

impl PrimeSet {
    pub fn empty() -> Self {
        PrimeSet(BTreeSet::new())
    }

    /// Builds a prime set, rejecting any element that is not prime.
    pub fn new<I: IntoIterator<Item = BigUint>>(primes: I) -> Result<Self, GroupError> {
        let mut set = BTreeSet::new();
        for p in primes {
            if !is_prime(&p) {
                return Err(GroupError::NotPrime(p.to_string()));
            }
            set.insert(p);
        }
        Ok(PrimeSet(set))
    }

    pub fn from_u64<I: IntoIterator<Item = u64>>(primes: I) -> Result<Self, GroupError> {
        PrimeSet::new(primes.into_iter().map(BigUint::from))
    }

    pub fn singleton(p: BigUint) -> Result<Self, GroupError> {
        PrimeSet::new([p])
    }

    pub fn contains(&self, p: &BigUint) -> bool {
        self.0.contains(p)
    }

    pub fn insert(&mut self, p: BigUint) -> Result<(), GroupError> {
        if !is_prime(&p) {
            return Err(GroupError::NotPrime(p.to_string()));
        }
        self.0.insert(p);
        Ok(())
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        PrimeSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigUint> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_vec(&self) -> Vec<BigUint> {
        self.0.iter().cloned().collect()
    }
}

impl FromIterator<BigUint> for PrimeSet {
    /// Infallible collection for primes that are already validated.
    fn from_iter<I: IntoIterator<Item = BigUint>>(iter: I) -> Self {
        PrimeSet(iter.into_iter().collect())
    }
}

/// Miller-Rabin with the 12 smallest prime witnesses; deterministic for all
/// inputs below 3.3 * 10^24, which covers every prime this library is
/// realistically run with.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    const WITNESSES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for w in WITNESSES {
        if n == &BigUint::from(w) {
            return true;
        }
        if (n % BigUint::from(w)).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for w in WITNESSES {
        let mut x = BigUint::from(w).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s.saturating_sub(1) {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of |n| for n != 0: trial division by small primes,
/// then Pollard's rho on whatever stubborn cofactor remains.
pub fn factor(n: &BigInt) -> BTreeMap<BigUint, u64> {
    let mut out = BTreeMap::new();
    let mut m = n.abs().to_biguint().expect("abs is nonnegative");
    assert!(!m.is_zero(), "cannot factor zero");
    let mut d = 2u64;
    while d < 10_000 && BigUint::from(d) * BigUint::from(d) <= m {
        let bd = BigUint::from(d);
        while (&m % &bd).is_zero() {
            *out.entry(bd.clone()).or_insert(0) += 1;
            m /= &bd;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        factor_large(&m, &mut out);
    }
    out
}

fn factor_large(n: &BigUint, out: &mut BTreeMap<BigUint, u64>) {
    if n.is_one() {
        return;
    }
    if is_prime(n) {
        *out.entry(n.clone()).or_insert(0) += 1;
        return;
    }
    let d = pollard_rho(n);
    factor_large(&d, out);
    factor_large(&(n / &d), out);
}

/// A nontrivial factor of a composite n via Pollard's rho (Brent variant
/// with a deterministic sweep over the polynomial offset).
fn pollard_rho(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    if n.is_even() {
        return BigUint::from(2u32);
    }
    for c in 1u64.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        loop {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break; // cycle without factor; try the next offset
            }
            let g = diff.gcd(n);
            if g > one && &g < n {
                return g;
            }
        }
    }
    unreachable!("pollard_rho exhausted offsets")
}

/// The set of primes dividing any of the given integers (zeros are skipped).
pub fn primes_dividing<'a, I: IntoIterator<Item = &'a BigInt>>(values: I) -> PrimeSet {
    let mut set = PrimeSet::empty();
    for v in values {
        if v.is_zero() || v.abs().is_one() {
            continue;
        }
        for p in factor(v).keys() {
            set.0.insert(p.clone());
        }
    }
    set
}

pub fn to_usize_prime(p: &BigUint) -> Option<usize> {
    p.to_usize()
}
