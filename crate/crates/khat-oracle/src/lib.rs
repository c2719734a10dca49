//! Brute-force reference implementations used by test suites to referee the
//! main decision procedures. The answers here come from a different route:
//! bounded denominator enumeration plus integer lattice reduction against a
//! Hermite normal form, whose output is self-certifying (`U*A = H` with `U`
//! unimodular). Nothing in this crate calls the per-prime localization
//! machinery that powers `member` and friends.
//!
//! A `Yes` from the oracle is definitive; a `NoWithinBounds` is definitive
//! only relative to the supplied bounds, so suites compare a negative oracle
//! answer only when the instance was constructed inside the bounds or when
//! the main procedure also answers no.

use khat_groups::LocalizedGroup;
use khat_linalg::{denominator_lcm, hnf, IntMatrix, QVector, Rational};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBounds {
    /// Maximum prime-power exponent allowed in coefficient denominators.
    pub exponent_bound: u32,
    /// Maximum |numerator| used when enumerating candidate combinations.
    pub coeff_bound: u32,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds { exponent_bound: 3, coeff_bound: 8 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleAnswer {
    Yes,
    NoWithinBounds,
}

impl OracleAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, OracleAnswer::Yes)
    }
}

/// Exact membership of an integer vector in the row lattice of `rows`,
/// decided by reduction against the Hermite normal form.
fn in_row_lattice(rows: &[Vec<BigInt>], target: &[BigInt]) -> bool {
    if rows.is_empty() {
        return target.iter().all(|x| x.is_zero());
    }
    let (h, _) = hnf(&IntMatrix::from_rows(rows.to_vec()));
    let mut t = target.to_vec();
    for r in 0..h.rows() {
        let Some(c) = (0..h.cols()).find(|&c| !h.get(r, c).is_zero()) else {
            break;
        };
        if !t[c].is_zero() {
            let (q, rem) = num_integer::Integer::div_rem(&t[c], h.get(r, c));
            if !rem.is_zero() {
                return false;
            }
            for k in 0..h.cols() {
                t[k] = &t[k] - &q * h.get(r, k);
            }
        }
    }
    t.iter().all(|x| x.is_zero())
}

/// Membership of `v` in the group of all combinations whose denominator
/// exponents stay at or below the bound. The set of coefficients of
/// `Z[1/P_j]` with denominator exponents `<= e` is exactly `(1/m_j) Z` for
/// `m_j = prod_{p in P_j} p^e`, so the enumeration of denominator patterns
/// collapses to one integer lattice membership test at the maximal pattern.
pub fn oracle_member(v: &[Rational], g: &LocalizedGroup, bounds: OracleBounds) -> OracleAnswer {
    assert_eq!(v.len(), g.ambient_dim(), "oracle_member: dimension mismatch");
    // scaled generators v_j / m_j, still rational
    let scaled: Vec<QVector> = g
        .generators()
        .iter()
        .map(|gen| {
            let mut m = BigInt::one();
            for p in gen.primes().iter() {
                m *= BigInt::from(p.clone()).pow(bounds.exponent_bound);
            }
            let f = Rational::new(BigInt::one(), m);
            gen.vector().iter().map(|x| x * &f).collect()
        })
        .collect();
    // one common denominator for the lattice and the target
    let mut all: Vec<Rational> = scaled.iter().flatten().cloned().collect();
    all.extend_from_slice(v);
    let d = denominator_lcm(&all);
    let df = Rational::from_integer(d);
    let to_int = |row: &[Rational]| -> Vec<BigInt> {
        row.iter()
            .map(|x| {
                let s = x * &df;
                debug_assert!(s.is_integer());
                s.numer().clone()
            })
            .collect()
    };
    let rows: Vec<Vec<BigInt>> = scaled.iter().map(|r| to_int(r)).collect();
    if in_row_lattice(&rows, &to_int(v)) {
        OracleAnswer::Yes
    } else {
        OracleAnswer::NoWithinBounds
    }
}

/// Truncated infinite divisibility: `v / p^n` must be a member for every
/// `n <= n_max`. Each division deepens the denominators by one power of p,
/// so the membership bound is widened by n to keep the test meaningful.
pub fn oracle_inf_div(
    v: &[Rational],
    g: &LocalizedGroup,
    p: &BigUint,
    n_max: u32,
    bounds: OracleBounds,
) -> bool {
    let pb = BigInt::from(p.clone());
    (0..=n_max).all(|n| {
        let f = Rational::new(BigInt::one(), pb.pow(n));
        let vn: QVector = v.iter().map(|x| x * &f).collect();
        let widened =
            OracleBounds { exponent_bound: bounds.exponent_bound + n, ..bounds };
        oracle_member(&vn, g, widened).is_yes()
    })
}

/// Bounded search for a witness pair `(k, z)`: `z` ranges over combinations
/// `sum a_i u_i / p3^e` of the generators of the p3-divisible part with
/// `|a_i| <= coeff_bound` and `e <= exponent_bound`, `k` over `1..=k_max`.
/// Both conditions are verified with `oracle_inf_div`. Deterministic: the
/// first hit in (k, e, coefficient) lexicographic order wins.
pub fn oracle_witness_search(
    gv: &[Rational],
    g: &LocalizedGroup,
    p3: &BigUint,
    p4: &BigUint,
    k_max: u32,
    n_max: u32,
    bounds: OracleBounds,
) -> Option<(BigInt, QVector)> {
    let p3_part = g.p_omega(p3).expect("prime expected");
    let cands: Vec<QVector> =
        p3_part.generators().iter().map(|gen| gen.vector().clone()).collect();
    let d = g.ambient_dim();
    if gv.iter().all(|x| x.is_zero()) {
        return Some((BigInt::one(), vec![Rational::zero(); d]));
    }
    let cb = bounds.coeff_bound as i64;
    let p3b = BigInt::from(p3.clone());
    for k in 1..=k_max {
        for e in 0..=bounds.exponent_bound {
            let denom = Rational::new(BigInt::one(), p3b.pow(e));
            let mut coeffs = vec![-cb; cands.len()];
            loop {
                let mut z = vec![Rational::zero(); d];
                for (a, u) in coeffs.iter().zip(&cands) {
                    if *a == 0 {
                        continue;
                    }
                    let f = Rational::from_integer(BigInt::from(*a)) * &denom;
                    for (acc, x) in z.iter_mut().zip(u) {
                        *acc = &*acc + &f * x;
                    }
                }
                let kg_z: QVector = gv
                    .iter()
                    .zip(&z)
                    .map(|(x, zx)| x * Rational::from_integer(BigInt::from(k)) + zx)
                    .collect();
                if oracle_inf_div(&z, g, p3, n_max, bounds)
                    && oracle_inf_div(&kg_z, g, p4, n_max, bounds)
                {
                    return Some((BigInt::from(k), z));
                }
                // next coefficient tuple
                let mut i = 0;
                loop {
                    if i == coeffs.len() {
                        break;
                    }
                    coeffs[i] += 1;
                    if coeffs[i] <= cb {
                        break;
                    }
                    coeffs[i] = -cb;
                    i += 1;
                }
                if i == coeffs.len() {
                    break;
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use khat_groups::PrimeSet;
    use khat_linalg::{rat, rat_int};

    fn qv(xs: &[i64]) -> QVector {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    fn ps(primes: &[u64]) -> PrimeSet {
        PrimeSet::from_u64(primes.iter().copied()).unwrap()
    }

    fn g_empty_1() -> LocalizedGroup {
        LocalizedGroup::new(
            2,
            vec![(qv(&[1, 0]), ps(&[2])), (qv(&[0, 1]), ps(&[3])), (qv(&[1, 1]), ps(&[5]))],
        )
        .unwrap()
    }

    #[test]
    fn member_examples() {
        let zh = LocalizedGroup::new(1, vec![(qv(&[1]), ps(&[2]))]).unwrap();
        let b = OracleBounds { exponent_bound: 2, coeff_bound: 8 };
        assert!(oracle_member(&[rat(3, 4)], &zh, b).is_yes());
        assert!(!oracle_member(&[rat(1, 3)], &zh, b).is_yes());
        assert!(!oracle_member(&[rat(1, 3), rat_int(0)], &g_empty_1(), OracleBounds::default())
            .is_yes());
    }

    #[test]
    fn inf_div_examples() {
        let g = g_empty_1();
        let b = OracleBounds::default();
        assert!(oracle_inf_div(&qv(&[1, 0]), &g, &BigUint::from(2u32), 4, b));
        assert!(!oracle_inf_div(&qv(&[1, 0]), &g, &BigUint::from(3u32), 1, b));
        assert!(oracle_inf_div(&qv(&[0, 0]), &g, &BigUint::from(3u32), 4, b));
    }

    #[test]
    fn witness_search_finds_z0() {
        let g = g_empty_1();
        let b = OracleBounds { exponent_bound: 1, coeff_bound: 2 };
        let (k, z) = oracle_witness_search(
            &qv(&[1, 0]),
            &g,
            &BigUint::from(3u32),
            &BigUint::from(5u32),
            3,
            3,
            b,
        )
        .expect("witness exists");
        assert_eq!(k, BigInt::one());
        assert_eq!(z, qv(&[0, 1]));
    }

    #[test]
    fn witness_search_none_for_bad_sum() {
        // Z[1/2] ⊕ Z[1/3]: no witness for e1 (the p4-part is zero).
        let g = LocalizedGroup::new(
            2,
            vec![(qv(&[1, 0]), ps(&[2])), (qv(&[0, 1]), ps(&[3]))],
        )
        .unwrap();
        let b = OracleBounds { exponent_bound: 1, coeff_bound: 2 };
        let r = oracle_witness_search(
            &qv(&[1, 0]),
            &g,
            &BigUint::from(3u32),
            &BigUint::from(5u32),
            6,
            3,
            b,
        );
        assert_eq!(r, None);
    }

    #[test]
    fn witness_search_zero_element() {
        let g = g_empty_1();
        let (k, z) = oracle_witness_search(
            &qv(&[0, 0]),
            &g,
            &BigUint::from(3u32),
            &BigUint::from(5u32),
            3,
            3,
            OracleBounds::default(),
        )
        .unwrap();
        assert_eq!(k, BigInt::one());
        assert!(z.iter().all(|x| x.is_zero()));
    }
}
