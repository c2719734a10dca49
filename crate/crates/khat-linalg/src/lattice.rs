//! Integer lattice utilities built on HNF/SNF: kernels, saturation, and
//! membership of rational vectors in the local lattice Z_(p)-span.

use crate::intmat::{hnf, snf, IntMatrix};
use crate::qmat::QVector;
use crate::ratio::{valuation, Rational};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

/// Basis rows of `{x in Z^m : M * x^T = 0}` for an integer constraint matrix
/// `M` with `m` columns. The returned lattice is saturated (it is the full
/// integer kernel).
pub fn right_kernel_int(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf(&m.transpose());
    let mut rows = Vec::new();
    for r in 0..h.rows() {
        if h.row(r).iter().all(|x| x.is_zero()) {
            rows.push(u.row(r).to_vec());
        }
    }
    if rows.is_empty() {
        IntMatrix::zero(0, m.cols())
    } else {
        IntMatrix::from_rows(rows)
    }
}

/// Basis rows of the saturation `span_Q(L) ∩ Z^m` of the row lattice of `L`.
pub fn saturation(l: &IntMatrix) -> IntMatrix {
    right_kernel_int(&right_kernel_int(l))
}

/// Least `e >= 0` such that `p^e * w` lies in the Z_(p)-span of the rows of
/// `L`, or `None` when `w` is not even in the rational row span.
///
/// Via `U*L*V = S`: with `w' = w * V`, membership of `x` in the local span
/// means `x' _i / d_i` is p-integral for each invariant factor `d_i` and
/// `x'_i = 0` past the rank, so the deficiency is read off from p-adic
/// valuations.
pub fn p_deficiency(l: &IntMatrix, w: &[Rational], p: &BigUint) -> Option<u64> {
    assert_eq!(l.cols(), w.len(), "p_deficiency: dimension mismatch");
    let (_, s, v) = snf(l);
    let n = l.cols();
    // w' = w * V  (row vector times matrix)
    let wv: QVector = (0..n)
        .map(|c| {
            (0..n)
                .map(|k| &w[k] * Rational::from_integer(v.get(k, c).clone()))
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
    let mut deficiency = 0u64;
    for (i, x) in wv.iter().enumerate().take(rank) {
        if x.is_zero() {
            continue;
        }
        let vd = crate::ratio::int_valuation(s.get(i, i), p) as i64;
        let vx = valuation(x, p).expect("nonzero");
        if vd - vx > deficiency as i64 {
            deficiency = (vd - vx) as u64;
        }
    }
    Some(deficiency)
}

/// True iff `w` is in the Z_(p)-span of the rows of `L`.
pub fn in_p_local_span(l: &IntMatrix, w: &[Rational], p: &BigUint) -> bool {
    p_deficiency(l, w, p) == Some(0)
}

/// Clears denominators of a rational vector: returns the integer vector
/// `lcm(denoms) * w`.
pub fn clear_denominators(w: &[Rational]) -> Vec<BigInt> {
    let l = crate::ratio::denominator_lcm(w);
    w.iter()
        .map(|x| {
            let s = x * Rational::from_integer(l.clone());
            debug_assert!(s.is_integer());
            s.numer().clone()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{rat, rat_int};

    #[test]
    fn kernel_int_simple() {
        // x + 2y + 3z = 0 over Z: rank-2 kernel.
        let m = IntMatrix::from_i64(&[&[1, 2, 3]]);
        let k = right_kernel_int(&m);
        assert_eq!(k.rows(), 2);
        let prod = m.mul(&k.transpose());
        assert!(prod.is_zero());
    }

    #[test]
    fn saturation_of_scaled_lattice() {
        // rows (2,0),(0,4) saturate to the full Z^2.
        let l = IntMatrix::from_i64(&[&[2, 0], &[0, 4]]);
        let s = saturation(&l);
        let (h, _) = hnf(&s);
        assert_eq!(h, IntMatrix::identity(2));
    }

    #[test]
    fn saturation_of_line() {
        // row (2,4) spans the line y = 2x; saturation is generated by (1,2).
        let l = IntMatrix::from_i64(&[&[2, 4]]);
        let s = saturation(&l);
        assert_eq!(s.rows(), 1);
        let g = s.row(0);
        assert_eq!(&g[1], &(&g[0] * BigInt::from(2)));
        assert!(g[0] == BigInt::from(1) || g[0] == BigInt::from(-1));
    }

    #[test]
    fn p_deficiency_basics() {
        let p2 = BigUint::from(2u32);
        let p3 = BigUint::from(3u32);
        let l = IntMatrix::from_i64(&[&[2, 0], &[0, 1]]);
        // (1, 0) needs one factor of 2; already fine at 3.
        assert_eq!(p_deficiency(&l, &[rat_int(1), rat_int(0)], &p2), Some(1));
        assert_eq!(p_deficiency(&l, &[rat_int(1), rat_int(0)], &p3), Some(0));
        // (1/2, 0) needs two factors of 2.
        assert_eq!(p_deficiency(&l, &[rat(1, 2), rat_int(0)], &p2), Some(2));
        // outside the rational span
        let line = IntMatrix::from_i64(&[&[1, 1]]);
        assert_eq!(p_deficiency(&line, &[rat_int(1), rat_int(0)], &p2), None);
        // zero vector is always inside
        assert_eq!(p_deficiency(&line, &[rat_int(0), rat_int(0)], &p2), Some(0));
    }

    #[test]
    fn p_deficiency_empty_lattice() {
        let l = IntMatrix::zero(0, 2);
        let p2 = BigUint::from(2u32);
        assert_eq!(p_deficiency(&l, &[rat_int(0), rat_int(0)], &p2), Some(0));
        assert_eq!(p_deficiency(&l, &[rat_int(1), rat_int(0)], &p2), None);
    }
}
