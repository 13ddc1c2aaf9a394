//! Exact rational and ℚ(√2) arithmetic.
//!
//! Everything above this module trusts its sign tests and floors, so no
//! floating point is used for any decision made here.

mod qsqrt2;

pub use qsqrt2::QSqrt2;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Canonical arbitrary-precision rational: reduced, positive denominator.
pub type BigRat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of negative integer {0}")]
    NegativeSqrt(BigInt),
}

/// Integer square root: the `r` with `r² ≤ n < (r+1)²`.
pub fn isqrt(n: &BigInt) -> Result<BigInt, ArithError> {
    if n.is_negative() {
        return Err(ArithError::NegativeSqrt(n.clone()));
    }
    Ok(n.sqrt())
}

/// `⌊q·√2⌋` for any integer `q`.
pub fn floor_sqrt2_times(q: &BigInt) -> BigInt {
    if q.is_zero() {
        return BigInt::zero();
    }
    let r = (q * q * 2u32).sqrt();
    if q.is_positive() {
        r
    } else {
        // q√2 is irrational, so the ceiling of |q|√2 is r + 1.
        -r - 1
    }
}

/// `⌊α·√2·2^m⌋`.
///
/// For `m ≥ 0` this is `isqrt(2·α²·4^m)`; negative shifts go through the
/// general ℚ(√2) floor.
pub fn floor_scaled_sqrt2(alpha: &BigInt, m: i64) -> BigInt {
    if m >= 0 && !alpha.is_negative() {
        let shift = 2 * m as u64 + 1;
        return (alpha * alpha << shift).sqrt();
    }
    QSqrt2::new(BigRat::zero(), BigRat::from_integer(alpha.clone()))
        .mul_pow2(m)
        .floor()
}

/// Floor division with a positive divisor.
pub(crate) fn div_floor(n: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!(d.is_positive());
    n.div_floor(d)
}

pub(crate) fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

/// `2^k` as a rational, for any sign of `k`.
pub fn rat_pow2(k: i64) -> BigRat {
    if k >= 0 {
        BigRat::from_integer(pow2(k as u64))
    } else {
        BigRat::new(BigInt::one(), pow2(k.unsigned_abs()))
    }
}

/// Exact decimal rendering of `x` truncated toward −∞ to `places` places.
pub fn rat_to_decimal(x: &BigRat, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = (x * BigRat::from_integer(scale.clone())).floor().to_integer();
    decimal_from_scaled(&scaled, places)
}

pub(crate) fn decimal_from_scaled(scaled: &BigInt, places: usize) -> String {
    let neg = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if places == 0 {
        out.push_str(&digits);
        return out;
    }
    if digits.len() <= places {
        out.push_str("0.");
        out.push_str(&"0".repeat(places - digits.len()));
        out.push_str(&digits);
    } else {
        let (int, frac) = digits.split_at(digits.len() - places);
        out.push_str(int);
        out.push('.');
        out.push_str(frac);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&BigInt::from(0)).unwrap(), BigInt::from(0));
        assert_eq!(isqrt(&BigInt::from(2)).unwrap(), BigInt::from(1));
        // 1448² = 2096704 ≤ 2097152 < 2099601 = 1449²
        assert_eq!(BigInt::from(1448) * 1448, BigInt::from(2096704));
        assert_eq!(BigInt::from(1449) * 1449, BigInt::from(2099601));
        assert_eq!(isqrt(&BigInt::from(2097152)).unwrap(), BigInt::from(1448));
    }

    #[test]
    fn isqrt_rejects_negative() {
        assert!(matches!(isqrt(&BigInt::from(-1)), Err(ArithError::NegativeSqrt(_))));
    }

    #[test]
    fn scaled_floor_examples() {
        assert_eq!(floor_scaled_sqrt2(&BigInt::from(1), 10), BigInt::from(1448));
        assert_eq!(floor_scaled_sqrt2(&BigInt::from(1), -1), BigInt::from(0));
        let a6 = BigInt::from(759_250_125u64);
        let oracle = isqrt(&(&a6 * &a6 * 2)).unwrap();
        assert_eq!(floor_scaled_sqrt2(&a6, 0), oracle);
        // the integer part reaches 2^30 exactly
        assert_eq!(oracle, BigInt::from(1u64 << 30));
    }

    #[test]
    fn floor_sqrt2_times_signs() {
        assert_eq!(floor_sqrt2_times(&BigInt::from(1)), BigInt::from(1));
        assert_eq!(floor_sqrt2_times(&BigInt::from(-1)), BigInt::from(-2));
        assert_eq!(floor_sqrt2_times(&BigInt::from(0)), BigInt::from(0));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rat_to_decimal(&BigRat::new(1.into(), 8.into()), 3), "0.125");
        assert_eq!(rat_to_decimal(&BigRat::new((-1).into(), 8.into()), 2), "-0.13");
        assert_eq!(rat_to_decimal(&BigRat::from_integer(7.into()), 0), "7");
    }
}
