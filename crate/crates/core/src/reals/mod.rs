//! Adaptive-precision enclosures for reals outside ℚ(√2), and floors certified from them.

mod constants;
mod expr;
mod interval;

use std::sync::Mutex;

use num_bigint::BigInt;
use thiserror::Error;

pub use constants::{const_e, const_pi, const_sqrt2};
pub use expr::{eval_expr, Expr, MAX_EXPONENT};
pub use interval::RealInterval;

use crate::exact::{BigRat, QSqrt2};

/// First precision tried by [`certified_floor`].
pub const START_BITS: u32 = 64;

/// Default refinement cap for certified floors.
pub const DEFAULT_MAX_BITS: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealsError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by an interval containing zero")]
    DivisionByZero,
    #[error("expression is not an element of Q(sqrt2)")]
    NotExact,
    #[error("enclosure still too wide at {bits} working bits")]
    PrecisionExhausted { bits: u32 },
    #[error("floor undecidable at {max_bits} bits (enclosure straddles an integer)")]
    Undecidable { max_bits: u32 },
}

/// Anything that can produce a sound enclosure of itself at a requested precision.
pub trait Enclose {
    fn enclose(&self, bits: u32) -> Result<RealInterval, RealsError>;
}

impl Enclose for QSqrt2 {
    fn enclose(&self, bits: u32) -> Result<RealInterval, RealsError> {
        Ok(RealInterval::from_exact(self, bits))
    }
}

/// A real given by an expression, refined on demand.
///
/// The cache only ever shrinks: each refinement is intersected with the
/// previous enclosure, so successive answers are nested.
#[derive(Debug)]
pub struct RefinableReal {
    expr: Expr,
    cache: Mutex<Option<RealInterval>>,
}

impl RefinableReal {
    pub fn new(expr: Expr) -> Self {
        Self {
            expr,
            cache: Mutex::new(None),
        }
    }

    pub fn parse(src: &str) -> Result<Self, RealsError> {
        Ok(Self::new(Expr::parse(src)?))
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    /// Highest precision evaluated so far.
    pub fn cached_bits(&self) -> Option<u32> {
        self.cache.lock().unwrap().as_ref().map(|c| c.bits())
    }

    pub fn refine(&self, bits: u32) -> Result<RealInterval, RealsError> {
        let mut cache = self.cache.lock().unwrap();
        if let Some(c) = cache.as_ref() {
            if c.bits() >= bits {
                return Ok(c.clone());
            }
        }
        let fresh = eval_expr(&self.expr, bits)?;
        let next = match cache.as_ref() {
            Some(old) => fresh
                .intersect(old)
                .expect("two sound enclosures of one value intersect")
                .with_bits(bits),
            None => fresh,
        };
        *cache = Some(next.clone());
        Ok(next)
    }
}

impl Clone for RefinableReal {
    fn clone(&self) -> Self {
        Self {
            expr: self.expr.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl Enclose for RefinableReal {
    fn enclose(&self, bits: u32) -> Result<RealInterval, RealsError> {
        self.refine(bits)
    }
}

/// `⌊scale·x + addend⌋`, decided from enclosures of `x` only.
///
/// Precision starts at [`START_BITS`] and doubles until both ends of the
/// image interval share a floor. If that never happens by `max_bits` the
/// answer is [`RealsError::Undecidable`]; an exactly integral value always
/// ends there, which is why exact inputs belong on the exact path.
pub fn certified_floor(
    x: &dyn Enclose,
    scale: &QSqrt2,
    addend: &QSqrt2,
    max_bits: u32,
) -> Result<BigInt, RealsError> {
    let mut bits = START_BITS.min(max_bits);
    let flip = scale.is_negative();
    loop {
        let iv = x.enclose(bits)?;
        let image = |r: &BigRat| &(scale * &QSqrt2::from_rat(r.clone())) + addend;
        let (lo, hi) = if flip {
            (image(iv.hi()), image(iv.lo()))
        } else {
            (image(iv.lo()), image(iv.hi()))
        };
        let f_lo = lo.floor();
        if f_lo == hi.floor() {
            return Ok(f_lo);
        }
        if bits >= max_bits {
            return Err(RealsError::Undecidable { max_bits });
        }
        bits = bits.saturating_mul(2).min(max_bits);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_with_transcendental_offset() {
        let eps = RefinableReal::parse("1-pi^2/e^3").unwrap();
        let f = certified_floor(&eps, &QSqrt2::sqrt2(), &QSqrt2::sqrt2(), 256).unwrap();
        assert_eq!(f, BigInt::from(2));
    }

    #[test]
    fn interval_path_matches_exact_path() {
        let half = RefinableReal::parse("1/2").unwrap();
        let f = certified_floor(&half, &QSqrt2::sqrt2(), &QSqrt2::sqrt2(), 256).unwrap();
        let exact = (QSqrt2::sqrt2() * QSqrt2::ratio(3, 2)).floor();
        assert_eq!(f, exact);
        assert_eq!(f, BigInt::from(2));
    }

    #[test]
    fn integral_value_is_undecidable() {
        let s = RefinableReal::parse("sqrt2").unwrap();
        let r = certified_floor(&s, &QSqrt2::sqrt2(), &QSqrt2::zero(), 1024);
        assert_eq!(r, Err(RealsError::Undecidable { max_bits: 1024 }));
    }

    #[test]
    fn refinement_is_nested_and_cached() {
        let x = RefinableReal::parse("1-pi^2/e^3").unwrap();
        let a = x.refine(64).unwrap();
        let b = x.refine(128).unwrap();
        assert!(b.is_subset_of(&a));
        assert_eq!(x.cached_bits(), Some(128));
        // lower requests are served from the cache
        assert_eq!(x.refine(32).unwrap(), b);
    }

    #[test]
    fn width_halves_when_bits_double() {
        let e = Expr::parse("1-pi^2/e^3").unwrap();
        let mut prev = eval_expr(&e, 32).unwrap().width();
        for bits in [64, 128, 256, 512] {
            let w = eval_expr(&e, bits).unwrap().width();
            assert!(w * BigRat::from_integer(2.into()) <= prev, "bits={bits}");
            prev = eval_expr(&e, bits).unwrap().width();
        }
    }
}
