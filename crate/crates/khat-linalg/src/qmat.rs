//! Dense rational matrices: Gaussian elimination, kernels, and solvers.

use crate::ratio::Rational;
use num_traits::{One, Zero};
use std::fmt;

pub type QVector = Vec<Rational>;

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|c| crate::ratio::format_rational(self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<QVector>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == nc), "ragged rows");
        QMatrix { rows: nr, cols: nc, data: rows.into_iter().flatten().collect() }
    }

    /// A matrix with the given number of columns and no rows.
    pub fn empty(cols: usize) -> Self {
        QMatrix::zero(0, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<QVector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = QMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[Rational]) -> QVector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) * &v[c]).sum())
            .collect()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pr = 0usize;
        for pc in 0..self.cols {
            if pr == self.rows {
                break;
            }
            // Prefer a pivot of large absolute value only for determinism we
            // take the first nonzero; exact arithmetic needs no pivoting.
            let Some(p) = (pr..self.rows).find(|&r| !self.get(r, pc).is_zero()) else {
                continue;
            };
            self.swap_rows(pr, p);
            let inv = self.get(pr, pc).recip();
            for c in pc..self.cols {
                let v = self.get(pr, c) * &inv;
                self.set(pr, c, v);
            }
            for r in 0..self.rows {
                if r != pr && !self.get(r, pc).is_zero() {
                    let f = self.get(r, pc).clone();
                    for c in pc..self.cols {
                        let v = self.get(r, c) - &f * self.get(pr, c);
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(pc);
            pr += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }
}

/// Basis of the right kernel `{x : A * x = 0}`; empty iff the kernel is
/// trivial. Basis vectors use the standard free-variable parametrization of
/// the RREF, so they are canonical for a given matrix.
pub fn kernel_basis(a: &QMatrix) -> Vec<QVector> {
    let mut r = a.clone();
    let pivots = r.rref_in_place();
    let n = a.cols();
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; n];
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = Some(i);
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..n {
        if pivot_set[free].is_some() {
            continue;
        }
        let mut x = vec![Rational::zero(); n];
        x[free] = Rational::one();
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = -r.get(i, free).clone();
        }
        basis.push(x);
    }
    basis
}

/// One solution of `A * x = b` over the rationals, or `None` when the system
/// is inconsistent. Free variables are set to zero, so the answer is
/// deterministic.
pub fn solve(a: &QMatrix, b: &[Rational]) -> Option<QVector> {
    assert_eq!(a.rows(), b.len(), "dimension mismatch in solve");
    let n = a.cols();
    let mut aug = QMatrix::zero(a.rows(), n + 1);
    for r in 0..a.rows() {
        for c in 0..n {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, n, b[r].clone());
    }
    let pivots = aug.rref_in_place();
    if pivots.contains(&n) {
        return None; // a pivot in the constant column: inconsistent
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug.get(i, n).clone();
    }
    Some(x)
}

pub fn vec_is_zero(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_add(a: &[Rational], b: &[Rational]) -> QVector {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rational], b: &[Rational]) -> QVector {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rational], s: &Rational) -> QVector {
    a.iter().map(|x| x * s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{rat, rat_int};

    #[test]
    fn kernel_of_sum_constraint() {
        // {x : x1 + x2 = 0} has basis spanning (1, -1).
        let a = QMatrix::from_rows(vec![vec![rat_int(1), rat_int(1)]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 1);
        assert!(vec_is_zero(&a.mul_vec(&k[0])));
        // spans the same line as (1, -1)
        let s = &k[0];
        assert_eq!(s[0], -s[1].clone());
        assert!(!s[0].is_zero());
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert!(kernel_basis(&QMatrix::identity(2)).is_empty());
    }

    #[test]
    fn kernel_of_1x3() {
        let a = QMatrix::from_rows(vec![vec![rat_int(1), rat_int(2), rat_int(3)]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(vec_is_zero(&a.mul_vec(x)));
        }
    }

    #[test]
    fn solve_identity() {
        let a = QMatrix::identity(2);
        let b = vec![rat_int(5), rat(-1, 2)];
        assert_eq!(solve(&a, &b), Some(b.clone()));
    }

    #[test]
    fn solve_underdetermined() {
        let a = QMatrix::from_rows(vec![vec![rat_int(1), rat_int(1)]]);
        let x = solve(&a, &[rat_int(0)]).unwrap();
        assert_eq!(&x[0] + &x[1], rat_int(0));
    }

    #[test]
    fn solve_inconsistent() {
        let a = QMatrix::from_rows(vec![vec![rat_int(2)], vec![rat_int(0)]]);
        assert_eq!(solve(&a, &[rat_int(1), rat_int(1)]), None);
    }

    #[test]
    fn solve_empty_system() {
        let a = QMatrix::zero(0, 2);
        assert_eq!(solve(&a, &[]), Some(vec![rat_int(0), rat_int(0)]));
    }
}
