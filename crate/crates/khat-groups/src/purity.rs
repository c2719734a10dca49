//! The purity decision procedure: `H ≤_p G` iff `qH = H ∩ qG` for every
//! prime q, which for torsion-free groups may be checked prime by prime.
//!
//! At a given q the check is injectivity of `H/qH -> G/qG`. Both quotients
//! are computed through the localization `G_(q) = W_q + L_q`: the divisible
//! part `W_q` dies in the quotient, so `G/qG` is the F_q-module spanned by
//! the images of the lattice-part generators under any integer matrix `C`
//! with `ker C = W_q`. A kernel element of the induced map is an integer
//! combination `h_a` of H's lattice-part generators with `C * h_a ∈ q * Y_G`;
//! every such `h_a` lies in `H ∩ qG`, and the map is injective iff each of
//! the finitely many mod-q kernel basis combinations already lies in `qH`
//! (tested by `member(h_a / q, H)`).
//!
//! Only finitely many primes can fail: away from the generator prime sets
//! and the invariant factors of the individual and stacked generator
//! matrices, both groups localize to saturated lattices and injectivity is
//! automatic.

use crate::error::GroupError;
use crate::group::LocalizedGroup;
use crate::membership::{dot_int_rat, mod_q_coordinates};
use crate::primes::{primes_dividing, PrimeSet};
use khat_linalg::{clear_denominators, invariant_factors, IntMatrix, QVector, Rational};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Gaussian elimination over F_q: basis of `{a : a * T = 0 (mod q)}` for a
/// row-major matrix `T` given as rows of mod-q residues.
fn fq_left_kernel(t: &[Vec<BigUint>], q: &BigUint) -> Vec<Vec<BigUint>> {
    let n = t.len();
    let cols = t.first().map_or(0, |r| r.len());
    let qb = BigInt::from(q.clone());
    // Augment each row with identity bookkeeping: reduce [T | I].
    let mut rows: Vec<Vec<BigInt>> = t
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigInt> = r.iter().map(|x| BigInt::from(x.clone())).collect();
            row.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let md = |x: &BigInt| x.mod_floor(&qb);
    let mut pivot_row = 0usize;
    for col in 0..cols {
        let Some(r) = (pivot_row..n).find(|&r| !md(&rows[r][col]).is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = crate::membership::mod_inverse(&md(&rows[pivot_row][col]), &qb)
            .expect("nonzero residue mod prime is invertible");
        for x in rows[pivot_row].iter_mut() {
            *x = md(&(&*x * &inv));
        }
        for r in 0..n {
            if r != pivot_row && !md(&rows[r][col]).is_zero() {
                let f = md(&rows[r][col]);
                let pivot = rows[pivot_row].clone();
                for (x, p) in rows[r].iter_mut().zip(&pivot) {
                    *x = md(&(&*x - &f * p));
                }
            }
        }
        pivot_row += 1;
        if pivot_row == n {
            break;
        }
    }
    // Rows from pivot_row on have zero T-part: their bookkeeping halves are
    // a basis of the left kernel.
    rows[pivot_row..]
        .iter()
        .map(|r| {
            r[cols..]
                .iter()
                .map(|x| x.mod_floor(&qb).to_biguint().expect("mod_floor nonnegative"))
                .collect()
        })
        .collect()
}

impl LocalizedGroup {
    /// The finite prime set on which purity must be decided.
    fn purity_decision_primes(&self, ambient: &LocalizedGroup) -> PrimeSet {
        let mut set = self.relevant_primes().union(&ambient.relevant_primes());
        let mut rows: Vec<Vec<BigInt>> =
            self.generators().iter().map(|g| clear_denominators(g.vector())).collect();
        rows.extend(ambient.generators().iter().map(|g| clear_denominators(g.vector())));
        if !rows.is_empty() {
            let stacked = IntMatrix::from_rows(rows);
            set = set.union(&primes_dividing(invariant_factors(&stacked).iter()));
        }
        set
    }

    /// Decides `self ≤_p ambient`. Errors if `self` is not a subgroup of
    /// `ambient`.
    pub fn is_pure_in(&self, ambient: &LocalizedGroup) -> Result<bool, GroupError> {
        if self.ambient_dim() != ambient.ambient_dim() {
            return Err(GroupError::DimensionMismatch {
                expected: ambient.ambient_dim(),
                got: self.ambient_dim(),
            });
        }
        if !ambient.contains_group(self)? {
            return Err(GroupError::NotSubgroup(
                "purity requires the first group to be a subgroup of the second".into(),
            ));
        }
        for q in self.purity_decision_primes(ambient).iter() {
            if self.purity_witness_at(ambient, q)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Searches for `h ∈ H ∩ qG \ qH` at one prime; `None` means pure at q.
    pub(crate) fn purity_witness_at(
        &self,
        ambient: &LocalizedGroup,
        q: &BigUint,
    ) -> Result<Option<QVector>, GroupError> {
        let h_gens = self.lattice_part_at(q);
        if h_gens.is_empty() {
            return Ok(None);
        }
        let w_g = ambient.prime_support_span(q);
        let c = w_g.annihilator_int();
        let y_rows: Vec<QVector> = ambient
            .lattice_part_at(q)
            .iter()
            .map(|v| c.iter().map(|row| dot_int_rat(row, v)).collect())
            .collect();
        // mod-q coordinates of each H generator image inside Y_G
        let t: Vec<Vec<BigUint>> = h_gens
            .iter()
            .map(|hv| {
                let img: QVector = c.iter().map(|row| dot_int_rat(row, hv)).collect();
                mod_q_coordinates(&y_rows, &img, q)
                    .expect("H generator image must lie in the local span of G")
            })
            .collect();
        for a in fq_left_kernel(&t, q) {
            // h_a = sum a_i * h_i  with integer lifts of the residues
            let mut h_a = vec![Rational::zero(); self.ambient_dim()];
            for (ai, hv) in a.iter().zip(&h_gens) {
                if ai.is_zero() {
                    continue;
                }
                let f = Rational::from_integer(BigInt::from(ai.clone()));
                for (acc, x) in h_a.iter_mut().zip(hv) {
                    *acc = &*acc + &f * x;
                }
            }
            if h_a.iter().all(|x| x.is_zero()) {
                continue;
            }
            let qr = Rational::new(BigInt::one(), BigInt::from(q.clone()));
            let h_over_q: QVector = h_a.iter().map(|x| x * &qr).collect();
            if !self.member(&h_over_q)? {
                return Ok(Some(h_a));
            }
        }
        Ok(None)
    }
}
