//! Rigorous enclosures of √2, π and e.
//!
//! The series are summed in fixed point at scale `2^wp` with every term
//! rounded in the direction that keeps the bound valid, and the truncated
//! tail is added back as an explicit error term.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::interval::{finalize, RealInterval};
use crate::exact::{pow2, BigRat};

/// Extra fixed-point bits over the requested precision.
const SERIES_GUARD: u32 = 32;

fn from_fixed(lo: BigInt, hi: BigInt, wp: u32) -> RealInterval {
    let den = pow2(wp as u64);
    RealInterval::new(BigRat::new(lo, den.clone()), BigRat::new(hi, den), wp)
}

/// `[s, s+1]·2^-wp` with `s = isqrt(2·4^wp)`.
pub(crate) fn sqrt2_raw(wp: u32) -> RealInterval {
    let s = (pow2(2 * wp as u64 + 1)).sqrt();
    let s1 = &s + 1u32;
    from_fixed(s, s1, wp)
}

/// Fixed-point bounds on `atan(1/x)` at scale `2^wp`.
///
/// The series alternates with decreasing terms, so after summing `K` terms the
/// remainder is bounded by the magnitude of term `K`.
fn atan_inv_fixed(x: u32, wp: u32) -> (BigInt, BigInt) {
    let one = pow2(wp as u64);
    let x2 = BigInt::from(x) * x;
    let mut power = BigInt::from(x);
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    let mut k: u64 = 0;
    loop {
        let denom = &power * (2 * k + 1);
        let t_lo = &one / &denom;
        let t_hi = &t_lo + 1u32;
        if k % 2 == 0 {
            lo += &t_lo;
            hi += &t_hi;
        } else {
            lo -= &t_hi;
            hi -= &t_lo;
        }
        power *= &x2;
        k += 1;
        let next_hi = &one / (&power * (2 * k + 1)) + 1u32;
        if next_hi <= BigInt::from(2u32) {
            return (lo - &next_hi, hi + next_hi);
        }
    }
}

/// Tight π enclosure from Machin's formula `π = 16·atan(1/5) − 4·atan(1/239)`.
pub(crate) fn pi_raw(wp: u32) -> RealInterval {
    let (a_lo, a_hi) = atan_inv_fixed(5, wp);
    let (b_lo, b_hi) = atan_inv_fixed(239, wp);
    let lo = a_lo * 16u32 - b_hi * 4u32;
    let hi = a_hi * 16u32 - b_lo * 4u32;
    from_fixed(lo, hi, wp)
}

/// Tight e enclosure from `Σ 1/k!`, with the tail after `K` terms bounded by `2/(K+1)!`.
pub(crate) fn e_raw(wp: u32) -> RealInterval {
    let one = pow2(wp as u64);
    let mut t_lo = one.clone();
    let mut t_hi = one.clone();
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    let mut k: u32 = 0;
    loop {
        lo += &t_lo;
        hi += &t_hi;
        k += 1;
        t_lo = &t_lo / k;
        t_hi = (&t_hi + (k - 1)) / k;
        if t_hi <= BigInt::one() {
            // t_hi bounds 1/k!·2^wp, and the tail from index k is at most 2/k!
            hi += t_hi * 2u32;
            return from_fixed(lo, hi, wp);
        }
    }
}

/// π to relative width `2^(1-bits)`. Enclosures at `bits` and `bits' ≥ bits + 4` nest.
pub fn const_pi(bits: u32) -> RealInterval {
    assert!(bits >= 8, "const_pi needs at least 8 bits");
    finalize(&pi_raw(bits + SERIES_GUARD), bits)
}

/// e to relative width `2^(1-bits)`, nesting like [`const_pi`].
pub fn const_e(bits: u32) -> RealInterval {
    assert!(bits >= 8, "const_e needs at least 8 bits");
    finalize(&e_raw(bits + SERIES_GUARD), bits)
}

/// √2 to relative width `2^(1-bits)`.
pub fn const_sqrt2(bits: u32) -> RealInterval {
    finalize(&sqrt2_raw(bits + 8), bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_pow2;

    fn dec(s: &str) -> BigRat {
        let (int, frac) = s.split_once('.').unwrap();
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        BigRat::new(format!("{int}{frac}").parse::<BigInt>().unwrap(), den)
    }

    const PI_50: &str = "3.14159265358979323846264338327950288419716939937510";
    const E_50: &str = "2.71828182845904523536028747135266249775724709369995";

    #[test]
    fn pi_contains_reference_digits() {
        // reference truncated to 50 places, so π ∈ [ref, ref + 10^-50]
        let lo = dec(PI_50);
        let hi = &lo + BigRat::new(1.into(), BigInt::from(10u32).pow(50));
        for bits in [16, 64, 150] {
            let p = const_pi(bits);
            assert!(p.lo() <= &hi && &lo <= p.hi(), "bits={bits}");
        }
        let p = const_pi(16);
        assert!(p.contains(&dec("3.14159265")));
    }

    #[test]
    fn e_contains_reference_digits() {
        let lo = dec(E_50);
        let hi = &lo + BigRat::new(1.into(), BigInt::from(10u32).pow(50));
        for bits in [16, 64, 150] {
            let e = const_e(bits);
            assert!(e.lo() <= &hi && &lo <= e.hi(), "bits={bits}");
        }
        assert!(const_e(16).contains(&dec("2.71828182")));
    }

    #[test]
    fn width_contract() {
        // |π|, |e| < 4, so the bound 2^(1-bits)·max(1,|v|) is at most 2^(3-bits);
        // the tighter 2^(2-bits) = 2^-63·4 at 64 bits also holds.
        for bits in [8u32, 16, 64, 128, 1024] {
            assert!(const_pi(bits).width() <= rat_pow2(2 - bits as i64), "pi bits={bits}");
            assert!(const_e(bits).width() <= rat_pow2(2 - bits as i64), "e bits={bits}");
        }
    }

    #[test]
    fn refinements_nest() {
        assert!(const_pi(128).is_subset_of(&const_pi(64)));
        assert!(const_e(128).is_subset_of(&const_e(64)));
        assert!(const_pi(4096).is_subset_of(&const_pi(2048)));
    }

    #[test]
    fn sqrt2_brackets() {
        let s = const_sqrt2(32);
        let two = BigRat::from_integer(2.into());
        assert!(s.lo() * s.lo() < two && two < s.hi() * s.hi());
    }
}
