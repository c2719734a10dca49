//! Dense arbitrary-precision integer matrices and their normal forms.
//!
//! The two workhorses are the row Hermite normal form and the Smith normal
//! form. Conventions:
//!
//! * `hnf(A) = (H, U)` with `U` unimodular, `U * A = H`, `H` in row echelon
//!   form with positive pivots and entries above each pivot reduced into
//!   `[0, pivot)`. With zero rows collected at the bottom this form is the
//!   unique HNF of the row lattice of `A`.
//! * `snf(A) = (U, S, V)` with `U`, `V` unimodular, `U * A * V = S` diagonal,
//!   `d_1 | d_2 | ... | d_r` and all `d_i >= 0`.
//!
//! Matrices with zero rows or columns are legal inputs everywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == nc), "ragged rows");
        IntMatrix { rows: nr, cols: nc, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zero(self.rows, other.cols);
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

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self.get(i, c).clone();
            self.set(i, c, v);
        }
    }

    /// row_i += q * row_j
    fn add_row_multiple(&mut self, i: usize, j: usize, q: &BigInt) {
        assert_ne!(i, j);
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(i, c) + q * self.get(j, c);
            self.set(i, c, v);
        }
    }

    /// col_i += q * col_j
    fn add_col_multiple(&mut self, i: usize, j: usize, q: &BigInt) {
        assert_ne!(i, j);
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.get(r, i) + q * self.get(r, j);
            self.set(r, i, v);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !m.get(r, k).is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1).clone()
    }
}

/// Row Hermite normal form: returns `(H, U)` with `U` unimodular and
/// `U * A = H`. Pivots are positive, entries above a pivot lie in
/// `[0, pivot)`, zero rows sit at the bottom.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let m = a.rows();
    let n = a.cols();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut pr = 0usize;
    for pc in 0..n {
        if pr == m {
            break;
        }
        // Euclidean pass on column pc, rows pr..m: repeatedly reduce by the
        // entry of least absolute value until only one nonzero remains.
        loop {
            let mut piv: Option<usize> = None;
            for r in pr..m {
                if !h.get(r, pc).is_zero()
                    && piv.is_none_or(|p| h.get(r, pc).abs() < h.get(p, pc).abs())
                {
                    piv = Some(r);
                }
            }
            let Some(p) = piv else { break };
            h.swap_rows(pr, p);
            u.swap_rows(pr, p);
            let mut clear = true;
            for r in pr + 1..m {
                if h.get(r, pc).is_zero() {
                    continue;
                }
                let q = h.get(r, pc).div_floor(h.get(pr, pc));
                h.add_row_multiple(r, pr, &-&q);
                u.add_row_multiple(r, pr, &-&q);
                if !h.get(r, pc).is_zero() {
                    clear = false;
                }
            }
            if clear {
                break;
            }
        }
        if !h.get(pr, pc).is_zero() {
            if h.get(pr, pc).is_negative() {
                h.negate_row(pr);
                u.negate_row(pr);
            }
            pivots.push((pr, pc));
            pr += 1;
        }
    }
    // Reduce entries above each pivot into [0, pivot).
    for &(i, c) in &pivots {
        for r in 0..i {
            let q = h.get(r, c).div_floor(h.get(i, c));
            h.add_row_multiple(r, i, &-&q);
            u.add_row_multiple(r, i, &-&q);
        }
    }
    (h, u)
}

/// Smith normal form: returns `(U, S, V)` with `U`, `V` unimodular,
/// `U * A * V = S` diagonal with nonnegative entries satisfying
/// `d_1 | d_2 | ... | d_r`.
pub fn snf(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let m = a.rows();
    let n = a.cols();
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let k = m.min(n);
    let mut t = 0usize;
    while t < k {
        // Locate an entry of least absolute value in the trailing submatrix.
        let mut piv: Option<(usize, usize)> = None;
        for r in t..m {
            for c in t..n {
                if !s.get(r, c).is_zero()
                    && piv.is_none_or(|(pr, pc)| s.get(r, c).abs() < s.get(pr, pc).abs())
                {
                    piv = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = piv else { break };
        s.swap_rows(t, pr);
        u.swap_rows(t, pr);
        s.swap_cols(t, pc);
        v.swap_cols(t, pc);

        // Clear row t and column t; restart whenever a reduction leaves a
        // smaller remainder in place of the pivot.
        let mut dirty = true;
        while dirty {
            dirty = false;
            for r in t + 1..m {
                if s.get(r, t).is_zero() {
                    continue;
                }
                let q = s.get(r, t).div_floor(s.get(t, t));
                s.add_row_multiple(r, t, &-&q);
                u.add_row_multiple(r, t, &-&q);
                if !s.get(r, t).is_zero() {
                    s.swap_rows(t, r);
                    u.swap_rows(t, r);
                    dirty = true;
                }
            }
            for c in t + 1..n {
                if s.get(t, c).is_zero() {
                    continue;
                }
                let q = s.get(t, c).div_floor(s.get(t, t));
                s.add_col_multiple(c, t, &-&q);
                v.add_col_multiple(c, t, &-&q);
                if !s.get(t, c).is_zero() {
                    s.swap_cols(t, c);
                    v.swap_cols(t, c);
                    dirty = true;
                }
            }
        }

        // Divisibility sweep: fold any entry the pivot does not divide into
        // row t and redo this pivot position.
        let mut bad: Option<usize> = None;
        'scan: for r in t + 1..m {
            for c in t + 1..n {
                if !s.get(r, c).mod_floor(s.get(t, t)).is_zero() {
                    bad = Some(r);
                    break 'scan;
                }
            }
        }
        if let Some(r) = bad {
            s.add_row_multiple(t, r, &BigInt::one());
            u.add_row_multiple(t, r, &BigInt::one());
            continue;
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    (u, s, v)
}

/// The nonzero diagonal entries `d_1 | d_2 | ...` of the Smith normal form.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let (_, s, _) = snf(a);
    let k = s.rows().min(s.cols());
    (0..k).map(|i| s.get(i, i).clone()).filter(|d| !d.is_zero()).collect()
}

/// Checks the structural HNF conditions (echelon, positive pivots, reduced
/// entries above pivots, zero rows last).
pub fn is_hnf(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for r in 0..h.rows() {
        let pivot = (0..h.cols()).find(|&c| !h.get(r, c).is_zero());
        match pivot {
            None => seen_zero_row = true,
            Some(c) => {
                if seen_zero_row
                    || last_pivot.is_some_and(|p| c <= p)
                    || h.get(r, c).is_negative()
                {
                    return false;
                }
                for rr in 0..r {
                    let e = h.get(rr, c);
                    if e.is_negative() || e >= h.get(r, c) {
                        return false;
                    }
                }
                last_pivot = Some(c);
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
        let (h, u) = hnf(a);
        assert_eq!(u.mul(a), h, "U*A != H");
        assert_eq!(u.det().abs(), BigInt::one(), "U not unimodular");
        assert!(is_hnf(&h), "not in HNF: {h:?}");
        (h, u)
    }

    #[test]
    fn hnf_identity() {
        let a = IntMatrix::identity(3);
        let (h, u) = check_hnf(&a);
        assert_eq!(h, IntMatrix::identity(3));
        assert_eq!(u, IntMatrix::identity(3));
    }

    #[test]
    fn hnf_zero_1x1() {
        let a = IntMatrix::from_i64(&[&[0]]);
        let (h, u) = check_hnf(&a);
        assert_eq!(h, IntMatrix::from_i64(&[&[0]]));
        assert_eq!(u, IntMatrix::identity(1));
    }

    #[test]
    fn hnf_2x2_example() {
        // Independent row reduction of [[2,4],[1,1]]:
        // (1,1),(2,4) -> (1,1),(0,2); above-pivot entry 1 already in [0,2).
        let a = IntMatrix::from_i64(&[&[2, 4], &[1, 1]]);
        let (h, _) = check_hnf(&a);
        assert_eq!(h, IntMatrix::from_i64(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn hnf_empty_shapes() {
        check_hnf(&IntMatrix::zero(0, 3));
        check_hnf(&IntMatrix::zero(3, 0));
        check_hnf(&IntMatrix::zero(0, 0));
    }

    #[test]
    fn hnf_idempotent() {
        let a = IntMatrix::from_i64(&[&[6, 4, -2], &[2, 8, 0], &[3, 3, 3]]);
        let (h, _) = check_hnf(&a);
        let (h2, _) = check_hnf(&h);
        assert_eq!(h, h2);
    }

    fn check_snf(a: &IntMatrix) -> IntMatrix {
        let (u, s, v) = snf(a);
        assert_eq!(u.mul(a).mul(&v), s, "U*A*V != S");
        assert_eq!(u.det().abs(), BigInt::one());
        assert_eq!(v.det().abs(), BigInt::one());
        let k = s.rows().min(s.cols());
        for r in 0..s.rows() {
            for c in 0..s.cols() {
                if r != c {
                    assert!(s.get(r, c).is_zero(), "off-diagonal in SNF");
                }
            }
        }
        for i in 0..k {
            assert!(!s.get(i, i).is_negative());
            if i + 1 < k && !s.get(i, i).is_zero() {
                assert!(
                    s.get(i + 1, i + 1).mod_floor(s.get(i, i)).is_zero()
                        || s.get(i + 1, i + 1).is_zero(),
                    "divisibility chain broken"
                );
            }
            if s.get(i, i).is_zero() && i + 1 < k {
                assert!(s.get(i + 1, i + 1).is_zero(), "zero before nonzero");
            }
        }
        s
    }

    #[test]
    fn snf_identity() {
        let s = check_snf(&IntMatrix::identity(2));
        assert_eq!(s, IntMatrix::identity(2));
    }

    #[test]
    fn snf_1x1() {
        let s = check_snf(&IntMatrix::from_i64(&[&[4]]));
        assert_eq!(s, IntMatrix::from_i64(&[&[4]]));
    }

    #[test]
    fn snf_diag_2_3() {
        // gcd/lcm oracle: invariant factors of diag(2,3) are gcd=1, lcm=6.
        let s = check_snf(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(s, IntMatrix::from_i64(&[&[1, 0], &[0, 6]]));
    }

    #[test]
    fn snf_rectangular_and_empty() {
        check_snf(&IntMatrix::from_i64(&[&[2, 4, 4]]));
        check_snf(&IntMatrix::from_i64(&[&[2], &[4], &[6]]));
        check_snf(&IntMatrix::zero(0, 2));
        check_snf(&IntMatrix::zero(2, 0));
    }

    #[test]
    fn invariant_factors_example() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(invariant_factors(&a), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn det_small() {
        assert_eq!(IntMatrix::from_i64(&[&[1, 2], &[3, 4]]).det(), BigInt::from(-2));
        assert_eq!(IntMatrix::identity(0).det(), BigInt::one());
        assert_eq!(
            IntMatrix::from_i64(&[&[2, 0, 1], &[1, 1, 0], &[0, 3, 1]]).det(),
            BigInt::from(5)
        );
    }
}
