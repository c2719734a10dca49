//! Intersection of a localized group with a rational subspace, and the
//! operations built directly on it: p^ω-parts and pure closures.
//!
//! # Construction
//!
//! Split every generator into singleton prime tags (additively,
//! `Z[1/{p,q}]v = Z[1/p]v + Z[1/q]v`), so `G = sum_j Z[1/P'_j] u_j` with
//! `|P'_j| <= 1`. Writing `phi: Q^m -> Q^d` for `c -> sum c_j u_j` and
//! `K = phi^{-1}(W)`, the intersection is `phi(K ∩ D)` for the coefficient
//! domain `D = prod_j Z[1/P'_j]`. A presentation of `M = K ∩ D` is assembled
//! from three families, each a saturated integer lattice computation:
//!
//! * the lattice `K ∩ Z^m` (empty prime sets);
//! * for each prime q: the saturated lattice of `U_q = K ∩ span{e_j : q ∈
//!   P'_j}`, with prime set `{q}` — these span the q-divisible part;
//! * for each prime q: lifts into `K` of a lattice basis of the projection
//!   `pi_q(K) ∩ Z^{off-q coordinates}`, scaled by a q-unit to clear foreign
//!   denominators (empty prime sets).
//!
//! Localizing at any prime shows the three families generate all of `M`: at
//! q the divisible part is `U_q` and the lifted basis covers `M_(q)` modulo
//! `U_q`; away from the tagged primes everything reduces to `K ∩ Z^m`. The
//! double-containment oracle tests referee this construction.

use crate::error::GroupError;
use crate::group::LocalizedGroup;
use crate::primes::PrimeSet;
use khat_linalg::{
    clear_denominators, denominator_lcm, int_valuation, kernel_basis, saturation, solve,
    IntMatrix, QMatrix, QVector, Rational, Subspace,
};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use std::collections::BTreeSet;

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl LocalizedGroup {
    /// Presents `G ∩ W` as a localized group.
    pub fn intersect_subspace(&self, w: &Subspace) -> Result<LocalizedGroup, GroupError> {
        if w.ambient_dim() != self.ambient_dim() {
            return Err(GroupError::DimensionMismatch {
                expected: self.ambient_dim(),
                got: w.ambient_dim(),
            });
        }
        let d = self.ambient_dim();
        if self.is_zero() || w.is_zero() {
            return Ok(LocalizedGroup::zero(d));
        }
        if w.dim() == d {
            return Ok(self.clone());
        }

        // Singleton split of the generators.
        let mut split: Vec<(QVector, Option<BigUint>)> = Vec::new();
        for g in self.generators() {
            if g.primes().is_empty() {
                split.push((g.vector().clone(), None));
            } else {
                for p in g.primes().iter() {
                    split.push((g.vector().clone(), Some(p.clone())));
                }
            }
        }
        let m = split.len();
        let phi = |c: &[Rational]| -> QVector {
            let mut out = vec![Rational::zero(); d];
            for (j, (u, _)) in split.iter().enumerate() {
                if c[j].is_zero() {
                    continue;
                }
                for (o, x) in out.iter_mut().zip(u) {
                    *o = &*o + &c[j] * x;
                }
            }
            out
        };

        // K = {c : phi(c) ∈ W}, via the annihilator constraints of W.
        let constraints: Vec<QVector> = w
            .annihilator()
            .iter()
            .map(|f| split.iter().map(|(u, _)| dot(f, u)).collect())
            .collect();
        let k_basis: Vec<QVector> = if constraints.is_empty() {
            QMatrix::identity(m).row_vecs()
        } else {
            kernel_basis(&QMatrix::from_rows(constraints))
        };
        if k_basis.is_empty() {
            return Ok(LocalizedGroup::zero(d));
        }
        let k_space = Subspace::span(&k_basis, m);

        let mut raw: Vec<(QVector, PrimeSet)> = Vec::new();
        let to_rat = |rows: &IntMatrix| -> Vec<QVector> {
            rows.row_vecs()
                .into_iter()
                .map(|r| r.into_iter().map(Rational::from_integer).collect())
                .collect()
        };

        // Lattice family: K ∩ Z^m.
        let cleared = IntMatrix::from_rows(k_basis.iter().map(|r| clear_denominators(r)).collect());
        for c in to_rat(&saturation(&cleared)) {
            raw.push((phi(&c), PrimeSet::empty()));
        }

        let primes: BTreeSet<BigUint> =
            split.iter().filter_map(|(_, p)| p.clone()).collect();
        for q in &primes {
            let s_q: Vec<usize> =
                (0..m).filter(|&j| split[j].1.as_ref() == Some(q)).collect();

            // Divisible family: saturated lattice of U_q = K ∩ span{e_j : j ∈ S_q}.
            let coord_vs: Vec<QVector> = s_q
                .iter()
                .map(|&j| {
                    let mut e = vec![Rational::zero(); m];
                    e[j] = Rational::one();
                    e
                })
                .collect();
            let u_q = k_space.intersect(&Subspace::span(&coord_vs, m));
            if !u_q.is_zero() {
                let sat = saturation(&IntMatrix::from_rows(
                    u_q.basis_vectors().iter().map(|r| clear_denominators(r)).collect(),
                ));
                for c in to_rat(&sat) {
                    raw.push((phi(&c), PrimeSet::singleton(q.clone())?));
                }
            }

            // Lift family: a lattice basis of pi_q(K) ∩ Z^{sbar} pulled back
            // into K, then scaled by the q-free part of the denominators on
            // the S_q coordinates (a unit of Z_(q), so the mod-U_q images
            // still generate).
            let sbar: Vec<usize> = (0..m).filter(|j| !s_q.contains(j)).collect();
            if sbar.is_empty() || s_q.is_empty() {
                continue;
            }
            let proj: Vec<QVector> = k_basis
                .iter()
                .map(|b| sbar.iter().map(|&j| b[j].clone()).collect())
                .collect();
            let proj_span = Subspace::span(&proj, sbar.len());
            if proj_span.is_zero() {
                continue;
            }
            let y_rows = saturation(&IntMatrix::from_rows(
                proj_span.basis_vectors().iter().map(|r| clear_denominators(r)).collect(),
            ));
            // solve  sum_i t_i * proj(b_i) = y  per target row y
            let pmat = QMatrix::from_rows(
                (0..sbar.len())
                    .map(|coord| proj.iter().map(|pb| pb[coord].clone()).collect())
                    .collect(),
            );
            for y in y_rows.row_vecs() {
                let target: QVector = y.iter().map(|x| Rational::from_integer(x.clone())).collect();
                let t = solve(&pmat, &target)
                    .expect("projection basis row must lift into K");
                let mut x = vec![Rational::zero(); m];
                for (i, b) in k_basis.iter().enumerate() {
                    if t[i].is_zero() {
                        continue;
                    }
                    for (xc, bc) in x.iter_mut().zip(b) {
                        *xc = &*xc + &t[i] * bc;
                    }
                }
                let fringe: QVector = s_q.iter().map(|&j| x[j].clone()).collect();
                let mut s = denominator_lcm(&fringe);
                if !s.is_one() {
                    let e = int_valuation(&s, q);
                    s /= BigInt::from(q.clone()).pow(e as u32);
                }
                let sf = Rational::from_integer(s);
                let scaled: QVector = x.iter().map(|xc| xc * &sf).collect();
                raw.push((phi(&scaled), PrimeSet::empty()));
            }
        }

        Ok(LocalizedGroup::new(d, raw)?.simplify())
    }

    /// `p^ω G = ∩_n p^n G`, computed as `G ∩ W_p` via the localization lemma.
    pub fn p_omega(&self, p: &BigUint) -> Result<LocalizedGroup, GroupError> {
        if !crate::primes::is_prime(p) {
            return Err(GroupError::NotPrime(p.to_string()));
        }
        self.intersect_subspace(&self.prime_support_span(p))
    }

    /// The pure closure of a set of members of `G`: the smallest pure
    /// subgroup containing them, namely `G ∩ span(S)`.
    pub fn pure_closure(&self, vectors: &[QVector]) -> Result<LocalizedGroup, GroupError> {
        for v in vectors {
            if !self.member(v)? {
                return Err(GroupError::NotMember(format!(
                    "[{}]",
                    v.iter().map(khat_linalg::format_rational).collect::<Vec<_>>().join(", ")
                )));
            }
        }
        self.intersect_subspace(&Subspace::span(vectors, self.ambient_dim()))
    }
}
