//! Membership and divisibility decision procedures.
//!
//! Everything reduces to one primitive: for a prime q and a list of rational
//! vectors, decide how many extra powers of q a target needs before it falls
//! into their Z_(q)-span. Membership in `G` is the conjunction of the local
//! tests over the finitely many relevant primes together with one global
//! rational-span test (which settles all the remaining primes at once, since
//! away from the relevant primes the localization of `G` is a saturated
//! lattice).

use crate::error::GroupError;
use crate::group::LocalizedGroup;
use khat_linalg::{
    denominator_lcm, int_valuation, p_deficiency, snf, valuation, IntMatrix, QVector, Rational,
};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

pub(crate) fn dot_int_rat(row: &[BigInt], v: &[Rational]) -> Rational {
    row.iter()
        .zip(v)
        .map(|(a, x)| Rational::from_integer(a.clone()) * x)
        .sum()
}

/// Integer presentation of the Z_(q)-span of rational rows: returns `(L, A)`
/// with `span_{Z_(q)}(rows) = q^{-A} * span_{Z_(q)}(rows of L)`. Denominator
/// parts coprime to q are units of Z_(q) and are absorbed.
pub(crate) fn q_normalized_lattice(rows: &[QVector], q: &BigUint) -> (IntMatrix, u64) {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut cleared: Vec<(Vec<BigInt>, u64)> = Vec::new();
    let mut shift = 0u64;
    for row in rows {
        let d = denominator_lcm(row);
        let a = if d.is_one() { 0 } else { int_valuation(&d, q) };
        let ints: Vec<BigInt> = row
            .iter()
            .map(|x| {
                let s = x * Rational::from_integer(d.clone());
                debug_assert!(s.is_integer());
                s.numer().clone()
            })
            .collect();
        shift = shift.max(a);
        cleared.push((ints, a));
    }
    let qb = BigInt::from(q.clone());
    let rows_int: Vec<Vec<BigInt>> = cleared
        .into_iter()
        .map(|(ints, a)| {
            let f = qb.pow((shift - a) as u32);
            ints.into_iter().map(|x| x * &f).collect()
        })
        .collect();
    let l = if rows_int.is_empty() {
        IntMatrix::zero(0, cols)
    } else {
        IntMatrix::from_rows(rows_int)
    };
    (l, shift)
}

/// Least `e >= 0` with `q^e * w` in the Z_(q)-span of the rational rows, or
/// `None` if `w` is outside their rational span.
pub(crate) fn q_deficiency_rational(rows: &[QVector], w: &[Rational], q: &BigUint) -> Option<u64> {
    let (l, shift) = q_normalized_lattice(rows, q);
    if l.cols() == 0 && !w.is_empty() {
        // no rows at all: the span is zero
        return if w.iter().all(|x| x.is_zero()) { Some(0) } else { None };
    }
    let f = Rational::from_integer(BigInt::from(q.clone()).pow(shift as u32));
    let scaled: QVector = w.iter().map(|x| x * &f).collect();
    p_deficiency(&l, &scaled, q)
}

/// Per-prime data for the localization `G_(q) = W_q + L_q`: integer rows `C`
/// with `ker C = W_q`, and the images `C * v_j` of the lattice-part
/// generators. Membership of `x` at q is membership of `C * x` in the
/// Z_(q)-span of the images.
pub(crate) struct LocalData {
    pub images: Vec<QVector>,
}

impl LocalizedGroup {
    pub(crate) fn local_data(&self, q: &BigUint) -> LocalData {
        let w = self.prime_support_span(q);
        let c = w.annihilator_int();
        let images = self
            .lattice_part_at(q)
            .iter()
            .map(|v| c.iter().map(|row| dot_int_rat(row, v)).collect())
            .collect();
        LocalData { images }
    }

    /// Least `e` with `q^e * v` in `G_(q)`, given that `v` is in the span.
    pub(crate) fn local_deficiency(&self, v: &[Rational], q: &BigUint) -> Option<u64> {
        let w = self.prime_support_span(q);
        let c = w.annihilator_int();
        if c.is_empty() {
            // W_q is the whole space; G_(q) too.
            return Some(0);
        }
        let data = self.local_data(q);
        let target: QVector = c.iter().map(|row| dot_int_rat(row, v)).collect();
        q_deficiency_rational(&data.images, &target, q)
    }

    /// Decides `v ∈ G` exactly.
    pub fn member(&self, v: &[Rational]) -> Result<bool, GroupError> {
        self.check_dim(v)?;
        if v.iter().all(|x| x.is_zero()) {
            return Ok(true);
        }
        if self.is_zero() {
            return Ok(false);
        }
        if !self.span().contains(v) {
            return Ok(false);
        }
        let relevant = self.relevant_primes();
        // denominator primes outside the relevant set are fatal: there the
        // localization is a saturated lattice inside Z_(q)^d
        let mut d = denominator_lcm(v);
        for p in relevant.iter() {
            let pb = BigInt::from(p.clone());
            let e = int_valuation(&d, p);
            d /= pb.pow(e as u32);
        }
        if !d.is_one() {
            return Ok(false);
        }
        for p in relevant.iter() {
            if self.local_deficiency(v, p) != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Least positive integer `k` with `k * v ∈ G`, or `None` when `v` is
    /// outside the rational span of `G` so that no multiple lands inside.
    pub fn denominator_of(&self, v: &[Rational]) -> Result<Option<BigInt>, GroupError> {
        self.check_dim(v)?;
        if v.iter().all(|x| x.is_zero()) {
            return Ok(Some(BigInt::one()));
        }
        if self.is_zero() || !self.span().contains(v) {
            return Ok(None);
        }
        let relevant = self.relevant_primes();
        let mut k = BigInt::one();
        // the part of the denominator at non-relevant primes must be cleared
        // verbatim
        let mut d = denominator_lcm(v);
        for p in relevant.iter() {
            let pb = BigInt::from(p.clone());
            let e = int_valuation(&d, p);
            d /= pb.pow(e as u32);
        }
        k *= &d;
        for p in relevant.iter() {
            let e = self.local_deficiency(v, p).expect("v is in the span");
            k *= BigInt::from(p.clone()).pow(e as u32);
        }
        Ok(Some(k))
    }

    /// True iff `v / p^n ∈ G` for every n >= 0, i.e. `v ∈ p^ω G`. By the
    /// localization lemma this is `v ∈ G` together with `v ∈ W_p`.
    pub fn is_inf_divisible(&self, v: &[Rational], p: &BigUint) -> Result<bool, GroupError> {
        if !crate::primes::is_prime(p) {
            return Err(GroupError::NotPrime(p.to_string()));
        }
        self.check_dim(v)?;
        Ok(self.prime_support_span(p).contains(v) && self.member(v)?)
    }

    /// True iff `other ⊆ self` as sets: every generator of `other` must be a
    /// member of `self` and infinitely divisible by each of its primes.
    pub fn contains_group(&self, other: &LocalizedGroup) -> Result<bool, GroupError> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(GroupError::DimensionMismatch {
                expected: self.ambient_dim(),
                got: other.ambient_dim(),
            });
        }
        for g in other.generators() {
            if !self.member(g.vector())? {
                return Ok(false);
            }
            for p in g.primes().iter() {
                if !self.is_inf_divisible(g.vector(), p)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Set equality by mutual containment.
    pub fn equals_group(&self, other: &LocalizedGroup) -> Result<bool, GroupError> {
        Ok(self.contains_group(other)? && other.contains_group(self)?)
    }
}

/// Canonical mod-q residue of a q-integral rational.
pub(crate) fn rational_mod(x: &Rational, q: &BigUint) -> BigUint {
    let qb = BigInt::from(q.clone());
    let num = x.numer().mod_floor_big(&qb);
    let den = x.denom().mod_floor_big(&qb);
    assert!(!den.is_zero(), "denominator divisible by q in mod-q reduction");
    let inv = mod_inverse(&den, &qb).expect("denominator coprime to q");
    ((num * inv) % &qb).to_biguint().expect("mod_floor is nonnegative")
}

trait ModFloorBig {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt;
}

impl ModFloorBig for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt {
        num_integer::Integer::mod_floor(self, m)
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = num_integer::Integer::extended_gcd(a, m);
    if e.gcd.is_one() {
        Some(num_integer::Integer::mod_floor(&e.x, m))
    } else {
        None
    }
}

/// Coordinates of `w` in the Z_(q)-module spanned by `rows`, reduced mod q.
/// Returns `None` if `w` is not in the Z_(q)-span. The coordinates are taken
/// along the Smith basis, so they are canonical for the row list.
pub(crate) fn mod_q_coordinates(
    rows: &[QVector],
    w: &[Rational],
    q: &BigUint,
) -> Option<Vec<BigUint>> {
    let (l, shift) = q_normalized_lattice(rows, q);
    let f = Rational::from_integer(BigInt::from(q.clone()).pow(shift as u32));
    let scaled: QVector = w.iter().map(|x| x * &f).collect();
    let (_, s, vm) = snf(&l);
    let n = l.cols();
    let wv: QVector = (0..n)
        .map(|c| {
            (0..n)
                .map(|k| &scaled[k] * Rational::from_integer(vm.get(k, c).clone()))
                .sum()
        })
        .collect();
    let k = s.rows().min(s.cols());
    let rank = (0..k).take_while(|&i| !s.get(i, i).is_zero()).count();
    for (i, x) in wv.iter().enumerate() {
        if i >= rank && !x.is_zero() {
            return None;
        }
    }
    let mut coords = Vec::with_capacity(rank);
    for i in 0..rank {
        let t = &wv[i] / Rational::from_integer(s.get(i, i).clone());
        if let Some(v) = valuation(&t, q) {
            if v < 0 {
                return None;
            }
        }
        coords.push(rational_mod(&t, q));
    }
    Some(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::PrimeSet;
    use khat_linalg::{rat, rat_int};

    fn qv(xs: &[i64]) -> QVector {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    fn ps(primes: &[u64]) -> PrimeSet {
        PrimeSet::from_u64(primes.iter().copied()).unwrap()
    }

    fn z_inv2() -> LocalizedGroup {
        LocalizedGroup::new(1, vec![(qv(&[1]), ps(&[2]))]).unwrap()
    }

    /// G_∅(1) = <(x0,{2}), (z0,{3}), (x0+z0,{5})> in Q^2.
    fn g_empty_1() -> LocalizedGroup {
        LocalizedGroup::new(
            2,
            vec![
                (qv(&[1, 0]), ps(&[2])),
                (qv(&[0, 1]), ps(&[3])),
                (qv(&[1, 1]), ps(&[5])),
            ],
        )
        .unwrap()
    }

    /// G_{U={0}}(1): adds (z0,{7}).
    fn g_u0_1() -> LocalizedGroup {
        LocalizedGroup::new(
            2,
            vec![
                (qv(&[1, 0]), ps(&[2])),
                (qv(&[0, 1]), ps(&[3])),
                (qv(&[1, 1]), ps(&[5])),
                (qv(&[0, 1]), ps(&[7])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn member_dyadic_rational() {
        let g = z_inv2();
        assert!(g.member(&[rat(3, 4)]).unwrap());
        assert!(!g.member(&[rat(1, 3)]).unwrap());
        assert!(g.member(&[rat_int(0)]).unwrap());
    }

    #[test]
    fn member_coefficient_comparison() {
        // x0/3 is not in G_∅(1): the x0-coefficient must lie in Z[1/2] + Z.
        let g = g_empty_1();
        assert!(!g.member(&[rat(1, 3), rat_int(0)]).unwrap());
        // but z0/3 is (3 is inverted on z0)
        assert!(g.member(&[rat_int(0), rat(1, 3)]).unwrap());
        // and z0/7 is in G_{U={0}}(1)
        assert!(g_u0_1().member(&[rat_int(0), rat(1, 7)]).unwrap());
        assert!(!g_empty_1().member(&[rat_int(0), rat(1, 7)]).unwrap());
    }

    #[test]
    fn member_mixed_sum() {
        // x0/4 + z0/9 + (x0+z0)/25 ∈ G_∅(1)
        let g = g_empty_1();
        let v = vec![&rat(1, 4) + &rat(1, 25), &rat(1, 9) + &rat(1, 25)];
        assert!(g.member(&v).unwrap());
    }

    #[test]
    fn member_zero_group() {
        let z = LocalizedGroup::zero(2);
        assert!(z.member(&qv(&[0, 0])).unwrap());
        assert!(!z.member(&qv(&[1, 0])).unwrap());
    }

    #[test]
    fn denominator_examples() {
        let g = g_empty_1();
        // x0/2 is already a member (2 is inverted on x0)
        assert_eq!(
            g.denominator_of(&[rat(1, 2), rat_int(0)]).unwrap(),
            Some(BigInt::one())
        );
        // z0/2 is not: the z0-coefficient lands in Z[1/3] + Z
        assert_eq!(
            g.denominator_of(&[rat_int(0), rat(1, 2)]).unwrap(),
            Some(BigInt::from(2))
        );
        assert!(!g.member(&[rat_int(0), rat(1, 2)]).unwrap());
        assert_eq!(g.denominator_of(&qv(&[1, 0])).unwrap(), Some(BigInt::one()));
        // (1,0) is outside the span of the zero group
        assert_eq!(LocalizedGroup::zero(2).denominator_of(&qv(&[1, 0])).unwrap(), None);
    }

    #[test]
    fn inf_divisibility() {
        let g = g_u0_1();
        let p2 = BigUint::from(2u32);
        let p5 = BigUint::from(5u32);
        let p7 = BigUint::from(7u32);
        assert!(g.is_inf_divisible(&qv(&[1, 0]), &p2).unwrap());
        assert!(!g.is_inf_divisible(&qv(&[1, 0]), &p5).unwrap());
        assert!(g.is_inf_divisible(&qv(&[0, 1]), &p7).unwrap());
        assert!(!g_empty_1().is_inf_divisible(&qv(&[0, 1]), &p7).unwrap());
        // zero vector is infinitely divisible everywhere
        assert!(g.is_inf_divisible(&qv(&[0, 0]), &p5).unwrap());
        // non-prime p is a usage error
        assert!(g.is_inf_divisible(&qv(&[1, 0]), &BigUint::from(4u32)).is_err());
    }

    #[test]
    fn generator_divisibility_by_own_primes() {
        for g in [g_empty_1(), g_u0_1()] {
            for gen in g.generators() {
                for p in gen.primes().iter() {
                    for n in 1..=5u32 {
                        let f = Rational::new(BigInt::one(), BigInt::from(p.clone()).pow(n));
                        let v: QVector = gen.vector().iter().map(|x| x * &f).collect();
                        assert!(g.member(&v).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn containment_z_in_z_half() {
        let z = LocalizedGroup::new(1, vec![(qv(&[1]), PrimeSet::empty())]).unwrap();
        let zh = z_inv2();
        assert!(zh.contains_group(&z).unwrap());
        assert!(!z.contains_group(&zh).unwrap());
        assert!(zh.equals_group(&zh).unwrap());
    }
}
