//! Exact rational scalars.
//!
//! All arithmetic in this workspace is exact; there is no floating point
//! anywhere. Rationals are kept in lowest terms with a positive denominator
//! (zero is `0/1`), which `num_rational::BigRational` guarantees by
//! construction. They serialize as `"a/b"`, or `"a"` when the denominator
//! is 1.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Shorthand for a rational from two machine integers. Panics on `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

/// Formats in lowest terms as `a/b`, or `a` when `b == 1`.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `a` or `a/b` with optional sign; rejects zero denominators.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| format!("invalid numerator in rational {s:?}"))?;
    let den: BigInt = den_str
        .parse()
        .map_err(|_| format!("invalid denominator in rational {s:?}"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in rational {s:?}"));
    }
    Ok(Rational::new(num, den))
}

/// p-adic valuation of a nonzero integer. Panics if `n == 0` or `p < 2`.
pub fn int_valuation(n: &BigInt, p: &BigUint) -> u64 {
    assert!(!n.is_zero(), "valuation of zero is infinite");
    let p = BigInt::from(p.clone());
    assert!(p >= BigInt::from(2));
    let mut v = 0u64;
    let mut m = n.abs();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&m, &p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational (may be negative). `None` for zero,
/// which has valuation `+infinity` for every p.
pub fn valuation(x: &Rational, p: &BigUint) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let vn = int_valuation(x.numer(), p) as i64;
    let vd = int_valuation(x.denom(), p) as i64;
    Some(vn - vd)
}

/// Least common multiple of the denominators of a slice of rationals (1 for
/// an empty slice). Always positive.
pub fn denominator_lcm(xs: &[Rational]) -> BigInt {
    let mut l = BigInt::one();
    for x in xs {
        l = num_integer::Integer::lcm(&l, x.denom());
    }
    l.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-5", "0", "7/3", "-9/2"] {
            let x = parse_rational(s).unwrap();
            assert_eq!(format_rational(&x), s);
        }
        // not in lowest terms on input
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn valuations() {
        let p2 = BigUint::from(2u32);
        let p3 = BigUint::from(3u32);
        assert_eq!(valuation(&rat(12, 1), &p2), Some(2));
        assert_eq!(valuation(&rat(3, 8), &p2), Some(-3));
        assert_eq!(valuation(&rat(3, 8), &p3), Some(1));
        assert_eq!(valuation(&rat(0, 1), &p2), None);
    }

    #[test]
    fn denominator_lcm_works() {
        assert_eq!(denominator_lcm(&[rat(1, 4), rat(1, 6)]), BigInt::from(12));
        assert_eq!(denominator_lcm(&[]), BigInt::one());
    }
}
