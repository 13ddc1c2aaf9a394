use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact::{rat_pow2, BigRat, QSqrt2};

/// Closed enclosure `[lo, hi]` of a real number with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealInterval {
    lo: BigRat,
    hi: BigRat,
    bits: u32,
}

impl RealInterval {
    /// Panics if `lo > hi`; every internal constructor maintains the order.
    pub fn new(lo: BigRat, hi: BigRat, bits: u32) -> Self {
        assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Self { lo, hi, bits }
    }

    pub fn point(x: BigRat, bits: u32) -> Self {
        Self::new(x.clone(), x, bits)
    }

    pub fn lo(&self) -> &BigRat {
        &self.lo
    }

    pub fn hi(&self) -> &BigRat {
        &self.hi
    }

    /// Precision the enclosure was requested at.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn with_bits(mut self, bits: u32) -> Self {
        self.bits = bits;
        self
    }

    pub fn width(&self) -> BigRat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRat {
        (&self.lo + &self.hi) / BigRat::from_integer(BigInt::from(2))
    }

    /// `max(|lo|, |hi|)`.
    pub fn magnitude(&self) -> BigRat {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn contains(&self, x: &BigRat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Exact membership test for an element of ℚ(√2).
    pub fn contains_exact(&self, x: &QSqrt2) -> bool {
        let lo = QSqrt2::from_rat(self.lo.clone());
        let hi = QSqrt2::from_rat(self.hi.clone());
        &lo <= x && x <= &hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// `self ⊆ outer`.
    pub fn is_subset_of(&self, outer: &RealInterval) -> bool {
        outer.lo <= self.lo && self.hi <= outer.hi
    }

    pub fn intersect(&self, other: &RealInterval) -> Option<RealInterval> {
        let lo = if self.lo > other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi < other.hi { &self.hi } else { &other.hi };
        (lo <= hi).then(|| RealInterval::new(lo.clone(), hi.clone(), self.bits.max(other.bits)))
    }

    pub fn neg(&self) -> RealInterval {
        RealInterval::new(-self.hi.clone(), -self.lo.clone(), self.bits)
    }

    pub fn add(&self, rhs: &RealInterval) -> RealInterval {
        RealInterval::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi, self.bits.min(rhs.bits))
    }

    pub fn sub(&self, rhs: &RealInterval) -> RealInterval {
        RealInterval::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo, self.bits.min(rhs.bits))
    }

    pub fn mul(&self, rhs: &RealInterval) -> RealInterval {
        let p = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = p.iter().min().unwrap().clone();
        let hi = p.iter().max().unwrap().clone();
        RealInterval::new(lo, hi, self.bits.min(rhs.bits))
    }

    /// `None` when the divisor contains zero.
    pub fn div(&self, rhs: &RealInterval) -> Option<RealInterval> {
        if rhs.contains_zero() {
            return None;
        }
        let recip = RealInterval::new(rhs.hi.recip(), rhs.lo.recip(), rhs.bits);
        Some(self.mul(&recip))
    }

    pub fn powi(&self, n: u32) -> RealInterval {
        if n == 0 {
            return RealInterval::point(BigRat::one(), self.bits);
        }
        let lo_n = num_traits::pow(self.lo.clone(), n as usize);
        let hi_n = num_traits::pow(self.hi.clone(), n as usize);
        if n % 2 == 1 || !self.lo.is_negative() {
            RealInterval::new(lo_n, hi_n, self.bits)
        } else if !self.hi.is_positive() {
            RealInterval::new(hi_n, lo_n, self.bits)
        } else {
            let top = if lo_n > hi_n { lo_n } else { hi_n };
            RealInterval::new(BigRat::zero(), top, self.bits)
        }
    }

    /// Widens the endpoints outward onto the grid `2^-wp ℤ`.
    pub fn round_outward(&self, wp: u32) -> RealInterval {
        let scale = rat_pow2(wp as i64);
        let unit = rat_pow2(-(wp as i64));
        let lo = BigRat::from_integer((&self.lo * &scale).floor().to_integer()) * &unit;
        let hi = BigRat::from_integer((&self.hi * &scale).ceil().to_integer()) * &unit;
        RealInterval::new(lo, hi, self.bits)
    }

    /// Sound enclosure of an exact element of ℚ(√2), meeting the width contract at `bits`.
    pub fn from_exact(x: &QSqrt2, bits: u32) -> RealInterval {
        if x.is_rational() {
            return RealInterval::point(x.rational_part().clone(), bits);
        }
        let b = x.sqrt2_part();
        let extra = (b.numer().bits() as u32).saturating_sub(b.denom().bits() as u32);
        let mut wp = bits + 8 + extra;
        loop {
            let s = super::constants::sqrt2_raw(wp);
            let a = RealInterval::point(x.rational_part().clone(), wp);
            let bi = RealInterval::point(b.clone(), wp);
            let tight = a.add(&bi.mul(&s));
            if tight_enough(&tight, bits) {
                return finalize(&tight, bits);
            }
            wp += 32;
        }
    }
}

/// Smallest `e ≥ 0` with `|x| ≤ 2^e`.
pub(crate) fn scale_exponent(x: &BigRat) -> i64 {
    let x = x.abs();
    if x <= BigRat::one() {
        return 0;
    }
    let guess = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut e = guess.max(0);
    while x > rat_pow2(e) {
        e += 1;
    }
    while e > 0 && x <= rat_pow2(e - 1) {
        e -= 1;
    }
    e
}

/// Whether a working-precision result is narrow enough to be finalized at `bits`.
pub(crate) fn tight_enough(t: &RealInterval, bits: u32) -> bool {
    let e = scale_exponent(&t.magnitude());
    t.width() <= rat_pow2(e - bits as i64 - 4)
}

/// Turns a tight enclosure into the published one at `bits`.
///
/// The endpoints snap outward to the grid `g = S·2^-(bits+3)` (with `S` the
/// power-of-two magnitude scale) and then move one more grid step out. The
/// result keeps a margin `g` around the true value, which is what makes
/// enclosures at `bits' ≥ bits + 4` nest inside it.
pub(crate) fn finalize(t: &RealInterval, bits: u32) -> RealInterval {
    let e = scale_exponent(&t.magnitude());
    let grid_exp = e - bits as i64 - 3;
    let g = rat_pow2(grid_exp);
    let inv = rat_pow2(-grid_exp);
    let lo = BigRat::from_integer((t.lo() * &inv).floor().to_integer()) * &g - &g;
    let hi = BigRat::from_integer((t.hi() * &inv).ceil().to_integer()) * &g + &g;
    RealInterval::new(lo, hi, bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: i64, hi: i64) -> RealInterval {
        RealInterval::new(BigRat::from_integer(lo.into()), BigRat::from_integer(hi.into()), 8)
    }

    #[test]
    fn multiplication_covers_sign_cases() {
        let r = iv(-2, 3).mul(&iv(-5, 4));
        assert_eq!(r, iv(-15, 12));
    }

    #[test]
    fn even_power_of_straddling_interval() {
        assert_eq!(iv(-3, 2).powi(2), iv(0, 9));
        assert_eq!(iv(-3, -2).powi(2), iv(4, 9));
        assert_eq!(iv(-3, 2).powi(3), iv(-27, 8));
    }

    #[test]
    fn division_by_zero_interval() {
        assert!(iv(1, 2).div(&iv(-1, 1)).is_none());
        assert!(iv(1, 2).div(&iv(0, 1)).is_none());
        assert!(iv(1, 2).div(&iv(1, 4)).is_some());
    }

    #[test]
    fn scale_exponent_boundaries() {
        assert_eq!(scale_exponent(&BigRat::new(1.into(), 2.into())), 0);
        assert_eq!(scale_exponent(&BigRat::from_integer(4.into())), 2);
        assert_eq!(scale_exponent(&BigRat::new(9.into(), 2.into())), 3);
    }

    #[test]
    fn exact_enclosure_contains_value() {
        let x = QSqrt2::half_int(1_296_121_037i64, 916_495_974i64);
        for bits in [16, 64, 200] {
            let e = RealInterval::from_exact(&x, bits);
            assert!(e.contains_exact(&x));
            assert!(e.width() <= rat_pow2(1 - bits as i64));
        }
    }
}
