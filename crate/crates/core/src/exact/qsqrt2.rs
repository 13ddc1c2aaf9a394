use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{decimal_from_scaled, div_floor, floor_sqrt2_times, rat_pow2, ArithError, BigRat};

/// An exact element `a + b·√2` of ℚ(√2).
///
/// Both coefficients are canonical rationals, and since √2 is irrational the
/// pair `(a, b)` is unique, so structural equality is numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt2 {
    a: BigRat,
    b: BigRat,
}

impl QSqrt2 {
    pub fn new(a: BigRat, b: BigRat) -> Self {
        Self { a, b }
    }

    pub fn zero() -> Self {
        Self::new(BigRat::zero(), BigRat::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(BigInt::one())
    }

    pub fn sqrt2() -> Self {
        Self::new(BigRat::zero(), BigRat::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::new(BigRat::from_integer(n.into()), BigRat::zero())
    }

    pub fn from_rat(r: BigRat) -> Self {
        Self::new(r, BigRat::zero())
    }

    /// `p/q` as an element of ℚ ⊂ ℚ(√2). Panics if `q == 0`.
    pub fn ratio(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        Self::from_rat(BigRat::new(p.into(), q.into()))
    }

    /// The value `(c/2)·√2 − d`, the shape every breakpoint of the recurrence takes.
    pub fn half_int(c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        Self::new(
            BigRat::from_integer(-d.into()),
            BigRat::new(c.into(), BigInt::from(2)),
        )
    }

    /// Rational part `a`.
    pub fn rational_part(&self) -> &BigRat {
        &self.a
    }

    /// Coefficient `b` of √2.
    pub fn sqrt2_part(&self) -> &BigRat {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_integer()
    }

    /// Recovers `(c, d)` when the value is `(c/2)·√2 − d` with integers `c`, `d`.
    pub fn as_half_int(&self) -> Option<(BigInt, BigInt)> {
        let twice_b = &self.b * BigRat::from_integer(BigInt::from(2));
        if twice_b.is_integer() && self.a.is_integer() {
            Some((twice_b.to_integer(), -self.a.to_integer()))
        } else {
            None
        }
    }

    /// Exact sign: −1, 0 or +1.
    ///
    /// Same-sign coefficients decide immediately; otherwise `a²` is compared
    /// against `2b²` and the larger term wins.
    pub fn signum(&self) -> i8 {
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2 = &self.b * &self.b * BigRat::from_integer(BigInt::from(2));
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => unreachable!("a² = 2b² with b ≠ 0 would make √2 rational"),
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    /// Galois conjugate `a − b√2`.
    pub fn conj(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a² − 2b²`.
    pub fn norm(&self) -> BigRat {
        &self.a * &self.a - &self.b * &self.b * BigRat::from_integer(BigInt::from(2))
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::new(&self.a / &n, -(&self.b / &n)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, r: &BigRat) -> Self {
        Self::new(&self.a * r, &self.b * r)
    }

    /// `self · 2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        self.scale(&rat_pow2(k))
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Writes the value as `(p + q·√2) / den` with integers and `den > 0`.
    pub fn integral_form(&self) -> (BigInt, BigInt, BigInt) {
        let den = self.a.denom().lcm(self.b.denom());
        let p = self.a.numer() * (&den / self.a.denom());
        let q = self.b.numer() * (&den / self.b.denom());
        (p, q, den)
    }

    /// Greatest integer `≤ self`.
    ///
    /// With `self = (p + q√2)/den`: `⌊p + q√2⌋ = p + ⌊q√2⌋` comes from one integer
    /// square root, and `⌊y/den⌋ = ⌊⌊y⌋/den⌋` for a positive integer `den`.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        let (p, q, den) = self.integral_form();
        div_floor(&(p + floor_sqrt2_times(&q)), &den)
    }

    pub fn ceil(&self) -> BigInt {
        -(-self.clone()).floor()
    }

    /// Fractional part `self − ⌊self⌋`, in `[0, 1)`.
    pub fn frac(&self) -> Self {
        self - &Self::from_integer(self.floor())
    }

    /// Coarse floating-point view, for display only.
    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }

    /// Decimal expansion truncated toward −∞ to `places` places, computed exactly.
    pub fn to_decimal(&self, places: usize) -> String {
        let scale = BigRat::from_integer(BigInt::from(10u32).pow(places as u32));
        let scaled = self.scale(&scale).floor();
        decimal_from_scaled(&scaled, places)
    }
}

fn rat_sign(r: &BigRat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn fmt_rat(r: &BigRat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text `p/q+r/s*sqrt2`; zero terms are omitted.
impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.a)),
            (true, false) => write!(f, "{}*sqrt2", fmt_rat(&self.b)),
            (false, false) => {
                let sep = if self.b.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}*sqrt2", fmt_rat(&self.a), sep, fmt_rat(&self.b.abs()))
            }
        }
    }
}

impl PartialOrd for QSqrt2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt2 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.a, -self.b)
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.a.clone(), -self.b.clone())
    }
}

impl Add<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: &QSqrt2) -> QSqrt2 {
        let two = BigRat::from_integer(BigInt::from(2));
        QSqrt2::new(
            &self.a * &rhs.a + &self.b * &rhs.b * two,
            &self.a * &rhs.b + &rhs.a * &self.b,
        )
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, rhs: QSqrt2) -> QSqrt2 { (&self).$m(&rhs) }
        }
        impl $tr<&QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, rhs: &QSqrt2) -> QSqrt2 { (&self).$m(rhs) }
        }
        impl $tr<QSqrt2> for &QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, rhs: QSqrt2) -> QSqrt2 { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: (i64, i64), b: (i64, i64)) -> QSqrt2 {
        QSqrt2::new(
            BigRat::new(a.0.into(), a.1.into()),
            BigRat::new(b.0.into(), b.1.into()),
        )
    }

    #[test]
    fn sign_examples() {
        assert_eq!(q((3, 1), (-2, 1)).signum(), 1);
        assert_eq!(q((1, 1), (-1, 1)).signum(), -1);
        assert_eq!(QSqrt2::zero().signum(), 0);
        assert_eq!(q((-3, 1), (2, 1)).signum(), -1);
    }

    #[test]
    fn arithmetic_examples() {
        let s = QSqrt2::sqrt2();
        assert_eq!(&s * &s, QSqrt2::from_integer(2));
        let u = q((1, 1), (1, 1));
        assert_eq!(&u * &u.conj(), QSqrt2::from_integer(-1));
        let inv = u.recip().unwrap();
        assert_eq!(inv, q((-1, 1), (1, 1)));
        assert_eq!(&u * &inv, QSqrt2::one());
        assert_eq!(QSqrt2::zero().recip(), Err(ArithError::DivisionByZero));
        assert!(QSqrt2::one().checked_div(&QSqrt2::zero()).is_err());
    }

    #[test]
    fn floor_examples() {
        assert_eq!(QSqrt2::sqrt2().floor(), BigInt::from(1));
        let x = q((3, 2), (1, 2));
        assert_eq!(x.floor(), BigInt::from(2));
        assert!((&x - &QSqrt2::from_integer(2)).signum() >= 0);
        assert!((&x - &QSqrt2::from_integer(3)).signum() < 0);
        let y = -QSqrt2::sqrt2();
        assert_eq!(y.floor(), BigInt::from(-2));
        assert!((&y - &QSqrt2::from_integer(-2)).signum() >= 0);
        assert!((&y - &QSqrt2::from_integer(-1)).signum() < 0);
    }

    #[test]
    fn frac_examples() {
        assert_eq!(QSqrt2::sqrt2().frac(), q((-1, 1), (1, 1)));
        assert_eq!(QSqrt2::ratio(3, 2).frac(), QSqrt2::ratio(1, 2));
        assert_eq!(q((-5, 1), (11, 1)).frac(), q((-15, 1), (11, 1)));
    }

    #[test]
    fn half_int_roundtrip() {
        let x = QSqrt2::half_int(19, 13);
        assert_eq!(x.as_half_int(), Some((BigInt::from(19), BigInt::from(13))));
        assert_eq!(QSqrt2::ratio(1, 3).as_half_int(), None);
        assert_eq!(x.to_decimal(7), "0.4350288");
    }

    #[test]
    fn display_forms() {
        assert_eq!(q((3, 2), (-1, 4)).to_string(), "3/2-1/4*sqrt2");
        assert_eq!(q((0, 1), (1, 1)).to_string(), "1*sqrt2");
        assert_eq!(q((-7, 1), (0, 1)).to_string(), "-7");
    }

    #[test]
    fn ordering_is_exact() {
        // 99/70 and 140/99 are the Pell convergents on either side of √2
        assert!(QSqrt2::ratio(140, 99) < QSqrt2::sqrt2());
        assert!(QSqrt2::ratio(99, 70) > QSqrt2::sqrt2());
    }
}
