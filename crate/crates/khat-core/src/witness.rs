//! Witness pairs for condition (2b): given `g` in the p1-divisible part of a
//! K̂₂ group, find `k > 0` and `z ∈ p3^ω G` with `k*g + z ∈ p4^ω G`.
//!
//! Condition (2a) makes the span decomposition `W_{p3} ∩ W_{p4} = 0`, so `g`
//! splits uniquely as `g = a + b` with `a ∈ W_{p3}`, `b ∈ W_{p4}` (2b puts g
//! inside the sum). Any valid `(k, z)` has `z = -k*a`: from `z ∈ W_{p3}` and
//! `k*g + z ∈ W_{p4}` the components are forced. So the least usable k is
//! the least one putting both `k*a` and `k*b` inside `G`, the lcm of the two
//! element denominators. The k of a witness is not canonical (any multiple
//! works); least-k is the tie-break used for determinism.

use crate::class::{classify, ClassLabel, PrimeTuple};
use crate::error::KhatError;
use khat_groups::LocalizedGroup;
use khat_linalg::{format_rational, solve, QMatrix, QVector, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WitnessPair {
    pub k: BigInt,
    pub z: QVector,
}

impl WitnessPair {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "k": self.k.to_string(),
            "z": self.z.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum WitnessStyle {
    LeastK,
}

/// Splits `g = a + b` along `W_{p3} ⊕ W_{p4}`; `None` when g is outside the
/// sum (condition 2b fails for it).
pub(crate) fn split_along_witness_spans(
    g: &LocalizedGroup,
    primes: &PrimeTuple,
    v: &[Rational],
) -> Option<(QVector, QVector)> {
    let w3 = g.prime_support_span(primes.p3());
    let w4 = g.prime_support_span(primes.p4());
    let b3 = w3.basis_vectors();
    let b4 = w4.basis_vectors();
    let dim = g.ambient_dim();
    let cols: Vec<QVector> = b3.iter().chain(b4.iter()).cloned().collect();
    if cols.is_empty() {
        return if v.iter().all(|x| x.is_zero()) {
            Some((vec![Rational::zero(); dim], vec![Rational::zero(); dim]))
        } else {
            None
        };
    }
    let mat = QMatrix::from_rows(
        (0..dim).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect(),
    );
    let t = solve(&mat, v)?;
    let mut a = vec![Rational::zero(); dim];
    for (coef, basis) in t.iter().take(b3.len()).zip(&b3) {
        for (acc, x) in a.iter_mut().zip(basis) {
            *acc = &*acc + coef * x;
        }
    }
    let b: QVector = v.iter().zip(&a).map(|(x, y)| x - y).collect();
    Some((a, b))
}

/// Finds the least-k witness pair for `g ∈ p1^ω G`, `G ∈ K̂₂`.
pub fn find_witness(
    gv: &[Rational],
    g: &LocalizedGroup,
    primes: &PrimeTuple,
) -> Result<WitnessPair, KhatError> {
    if classify(g, primes)? != ClassLabel::K2 {
        return Err(KhatError::Precondition("find_witness requires a K2 group".into()));
    }
    if !g.is_inf_divisible(gv, primes.p1())? {
        return Err(KhatError::Precondition(
            "find_witness requires g in the p1-divisible part".into(),
        ));
    }
    if gv.iter().all(|x| x.is_zero()) {
        return Ok(WitnessPair { k: BigInt::one(), z: vec![Rational::zero(); g.ambient_dim()] });
    }
    let (a, b) = split_along_witness_spans(g, primes, gv).ok_or_else(|| {
        KhatError::Internal("2b holds but the witness-span decomposition failed".into())
    })?;
    let ka = g
        .denominator_of(&a)?
        .ok_or_else(|| KhatError::Internal("decomposition component outside span".into()))?;
    let kb = g
        .denominator_of(&b)?
        .ok_or_else(|| KhatError::Internal("decomposition component outside span".into()))?;
    let k = ka.lcm(&kb);
    let kf = Rational::from_integer(k.clone());
    let z: QVector = a.iter().map(|x| -(x * &kf)).collect();
    debug_assert!(g.is_inf_divisible(&z, primes.p3()).unwrap());
    debug_assert!({
        let kg_z: QVector = gv.iter().zip(&z).map(|(x, zx)| x * &kf + zx).collect();
        g.is_inf_divisible(&kg_z, primes.p4()).unwrap()
    });
    Ok(WitnessPair { k, z })
}

#[cfg(test)]
mod tests {
    use super::*;
    use khat_groups::PrimeSet;
    use khat_linalg::{rat, rat_int};

    fn qv(xs: &[i64]) -> QVector {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    fn g_empty_1() -> LocalizedGroup {
        let ps = |p: u64| PrimeSet::from_u64([p]).unwrap();
        LocalizedGroup::new(
            2,
            vec![(qv(&[1, 0]), ps(2)), (qv(&[0, 1]), ps(3)), (qv(&[1, 1]), ps(5))],
        )
        .unwrap()
    }

    #[test]
    fn witness_for_x0() {
        let pt = PrimeTuple::default();
        let w = find_witness(&qv(&[1, 0]), &g_empty_1(), &pt).unwrap();
        assert_eq!(w.k, BigInt::one());
        assert_eq!(w.z, qv(&[0, 1]));
    }

    #[test]
    fn witness_for_zero() {
        let pt = PrimeTuple::default();
        let w = find_witness(&qv(&[0, 0]), &g_empty_1(), &pt).unwrap();
        assert_eq!(w.k, BigInt::one());
        assert!(w.z.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn witness_for_half_x0() {
        let pt = PrimeTuple::default();
        let g = g_empty_1();
        let gv = vec![rat(1, 2), rat_int(0)];
        let w = find_witness(&gv, &g, &pt).unwrap();
        assert_eq!(w.k, BigInt::from(2));
        assert_eq!(w.z, qv(&[0, 1]));
        // 2 * (x0/2) + z0 = x0 + z0
        let kf = Rational::from_integer(w.k.clone());
        let kg_z: QVector = gv.iter().zip(&w.z).map(|(x, z)| x * &kf + z).collect();
        assert_eq!(kg_z, qv(&[1, 1]));
    }

    #[test]
    fn witness_preconditions() {
        let pt = PrimeTuple::default();
        let g = g_empty_1();
        // z0 is not in the p1-divisible part
        assert!(find_witness(&qv(&[0, 1]), &g, &pt).is_err());
        // a K1 group is rejected
        let k1 = LocalizedGroup::new(1, vec![(qv(&[1]), PrimeSet::from_u64([2]).unwrap())]).unwrap();
        assert!(find_witness(&qv(&[1]), &k1, &pt).is_err());
    }
}
