//! Rational subspaces of Q^d in a canonical form.
//!
//! The basis is kept as the reduced row echelon form of any spanning set,
//! with zero rows removed. RREF is unique per subspace, so two subspaces are
//! equal as sets iff their basis matrices are identical; `PartialEq` on
//! `Subspace` is semantic equality.

use crate::qmat::{kernel_basis, vec_is_zero, QMatrix, QVector};
use crate::ratio::{denominator_lcm, Rational};
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: QMatrix,
}

impl Subspace {
    /// The span of the given vectors inside Q^ambient_dim.
    pub fn span(vectors: &[QVector], ambient_dim: usize) -> Subspace {
        for v in vectors {
            assert_eq!(v.len(), ambient_dim, "span: vector length != ambient dimension");
        }
        let mut m = QMatrix::from_rows(vectors.to_vec());
        if vectors.is_empty() {
            m = QMatrix::empty(ambient_dim);
        }
        let pivots = m.rref_in_place();
        let basis = QMatrix::from_rows(
            (0..pivots.len()).map(|r| m.row(r).to_vec()).collect::<Vec<_>>(),
        );
        let basis = if pivots.is_empty() { QMatrix::empty(ambient_dim) } else { basis };
        Subspace { ambient_dim, basis }
    }

    pub fn zero(ambient_dim: usize) -> Subspace {
        Subspace { ambient_dim, basis: QMatrix::empty(ambient_dim) }
    }

    pub fn full(ambient_dim: usize) -> Subspace {
        Subspace { ambient_dim, basis: QMatrix::identity(ambient_dim) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.rows() == 0
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<QVector> {
        self.basis.row_vecs()
    }

    /// Membership test by reduction against the RREF basis.
    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "contains: dimension mismatch");
        let mut w = v.to_vec();
        for r in 0..self.basis.rows() {
            let pc = (0..self.ambient_dim)
                .find(|&c| !self.basis.get(r, c).is_zero())
                .expect("no zero rows in a Subspace basis");
            if !w[pc].is_zero() {
                let f = w[pc].clone();
                for c in 0..self.ambient_dim {
                    w[c] = &w[c] - &f * self.basis.get(r, c);
                }
            }
        }
        vec_is_zero(&w)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim, "sum: ambient dimension mismatch");
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::span(&vs, self.ambient_dim)
    }

    /// Rows spanning the annihilator `{f : f . w = 0 for all w in self}`.
    pub fn annihilator(&self) -> Vec<QVector> {
        kernel_basis(&self.basis)
    }

    /// Integer rows spanning the annihilator (denominators cleared per row).
    /// Any such matrix `C` satisfies `ker(C) = self` exactly.
    pub fn annihilator_int(&self) -> Vec<Vec<BigInt>> {
        self.annihilator()
            .into_iter()
            .map(|row| {
                let l = denominator_lcm(&row);
                row.iter()
                    .map(|x| {
                        let s = x * Rational::from_integer(l.clone());
                        debug_assert!(s.denom() == &BigInt::from(1));
                        s.numer().clone()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim, "intersect: ambient dimension mismatch");
        let mut constraints = self.annihilator();
        constraints.extend(other.annihilator());
        if constraints.is_empty() {
            return Subspace::full(self.ambient_dim);
        }
        let c = QMatrix::from_rows(constraints);
        Subspace::span(&kernel_basis(&c), self.ambient_dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat_int;

    fn v(xs: &[i64]) -> QVector {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn intersect_axes_is_zero() {
        let w1 = Subspace::span(&[v(&[1, 0])], 2);
        let w2 = Subspace::span(&[v(&[0, 1])], 2);
        assert!(w1.intersect(&w2).is_zero());
    }

    #[test]
    fn intersect_self_is_identity() {
        let w = Subspace::span(&[v(&[1, 2, 0]), v(&[0, 0, 3])], 3);
        assert_eq!(w.intersect(&w), w);
    }

    #[test]
    fn intersect_two_planes_in_q2() {
        let w1 = Subspace::span(&[v(&[1, 0]), v(&[1, 1])], 2);
        let w2 = Subspace::span(&[v(&[0, 1]), v(&[2, 1])], 2);
        assert_eq!(w1.intersect(&w2), Subspace::full(2));
    }

    #[test]
    fn canonical_equality() {
        // Same plane through two different spanning sets.
        let w1 = Subspace::span(&[v(&[1, 1, 0]), v(&[0, 2, 2])], 3);
        let w2 = Subspace::span(&[v(&[1, 3, 2]), v(&[2, 2, 0]), v(&[1, 1, 0])], 3);
        assert_eq!(w1, w2);
        assert!(w1.contains_subspace(&w2) && w2.contains_subspace(&w1));
    }

    #[test]
    fn contains_and_sum() {
        let w = Subspace::span(&[v(&[1, -1])], 2);
        assert!(w.contains(&v(&[2, -2])));
        assert!(!w.contains(&v(&[1, 1])));
        let s = w.sum(&Subspace::span(&[v(&[1, 1])], 2));
        assert_eq!(s, Subspace::full(2));
    }

    #[test]
    fn zero_subspace() {
        let z = Subspace::zero(3);
        assert!(z.is_zero());
        assert!(z.contains(&v(&[0, 0, 0])));
        assert!(!z.contains(&v(&[1, 0, 0])));
        assert_eq!(z.annihilator().len(), 3);
    }
}
