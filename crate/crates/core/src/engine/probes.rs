use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::table::AlgebraicTarget;
use super::{EngineError, Epsilon, Recurrence};
use crate::exact::{floor_scaled_sqrt2, QSqrt2};
use crate::reals::DEFAULT_MAX_BITS;
use crate::strategy::{FloorRegistry, FloorStrategy, IntervalFloor};

/// First `(n, d_n)` with `n ≤ limit` and `d_n ∉ {0, 1}`, streaming the trace.
pub fn first_bad_digit(eps: &Epsilon, limit: usize) -> Result<Option<(usize, BigInt)>, EngineError> {
    let strategy = FloorRegistry::default().default_for(eps);
    first_bad_digit_with(eps, limit, strategy.as_ref())
}

pub fn first_bad_digit_with(
    eps: &Epsilon,
    limit: usize,
    strategy: &dyn FloorStrategy,
) -> Result<Option<(usize, BigInt)>, EngineError> {
    if limit == 0 {
        return Err(EngineError::InvalidSpec("limit must be at least 1".into()));
    }
    let mut rec = Recurrence::new(strategy, eps, BigInt::one());
    let mut prev = rec.current().clone();
    for n in 1..=limit {
        rec.advance()?;
        let next = rec.advance()?.clone();
        let d = &next - (&prev << 1usize);
        if !(d.is_zero() || d.is_one()) {
            return Ok(Some((n, d)));
        }
        prev = next;
    }
    Ok(None)
}

/// `α₆` of the corollary's multiple of √2.
pub const COROLLARY_ALPHA: u64 = 759_250_125;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryMismatch {
    pub n: usize,
    pub trace_digit: BigInt,
    pub binary_digit: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryReport {
    pub max_n: usize,
    /// Bits in the integer part of `759250125√2`.
    pub integer_bits: u64,
    /// `759250125√2 = 2^29·t₆ + 314491699` in ℚ(√2).
    pub identity_holds: bool,
    /// Mismatches for `31 ≤ n ≤ max_n`.
    pub mismatches: Vec<CorollaryMismatch>,
    /// Smallest `n₀` such that the digits agree for every `n₀ ≤ n ≤ max_n`.
    pub first_agreement: usize,
}

impl CorollaryReport {
    pub fn passed(&self) -> bool {
        self.identity_holds && self.mismatches.is_empty()
    }
}

/// MSB-first binary digit `j` (1-based) of `α√2`, whose integer part has `int_bits` bits.
fn msb_digit(alpha: &BigInt, int_bits: u64, j: u64) -> BigInt {
    let m = j as i64 - int_bits as i64;
    floor_scaled_sqrt2(alpha, m) - (floor_scaled_sqrt2(alpha, m - 1) << 1usize)
}

/// Checks that `w_{2n+1} − 2w_{2n−1}` with `ε = 1 − π²/e³` is the `(n+1)`th
/// binary digit of `759250125√2` for `31 ≤ n ≤ max_n`.
pub fn corollary_check(max_n: usize, cap_bits: u32) -> Result<CorollaryReport, EngineError> {
    if max_n < 32 {
        return Err(EngineError::InvalidSpec("max_n must be at least 32".into()));
    }
    let alpha = BigInt::from(COROLLARY_ALPHA);
    let x = QSqrt2::from_integer(0) + QSqrt2::sqrt2().scale(&alpha.clone().into());
    let integer_bits = x.floor().bits();

    let t6 = AlgebraicTarget::new(COROLLARY_ALPHA, 314_491_699, 29).value();
    let identity_holds = x == &t6.mul_pow2(29) + &QSqrt2::from_integer(314_491_699);

    let eps = Epsilon::parse("1-pi^2/e^3")?;
    let strategy = IntervalFloor { max_bits: cap_bits };
    let mut rec = Recurrence::new(&strategy, &eps, BigInt::one());
    let mut prev = rec.current().clone();
    let mut agree = Vec::with_capacity(max_n);
    let mut mismatches = Vec::new();
    for n in 1..=max_n {
        rec.advance()?;
        let next = rec.advance()?.clone();
        let d = &next - (&prev << 1usize);
        let b = msb_digit(&alpha, integer_bits, n as u64 + 1);
        agree.push(d == b);
        if n >= 31 && d != b {
            mismatches.push(CorollaryMismatch {
                n,
                trace_digit: d.clone(),
                binary_digit: b,
            });
        }
        prev = next;
    }
    let first_agreement = agree.iter().rposition(|ok| !ok).map_or(1, |i| i + 2);
    Ok(CorollaryReport {
        max_n,
        integer_bits,
        identity_holds,
        mismatches,
        first_agreement,
    })
}

/// Default refinement cap for [`corollary_check`].
pub const COROLLARY_CAP_BITS: u32 = DEFAULT_MAX_BITS;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalityReport {
    pub multiplier: u32,
    pub exponent_offset: u32,
    pub k: usize,
    pub min_frac: QSqrt2,
    pub argmin: usize,
    pub max_frac: QSqrt2,
    pub argmax: usize,
}

/// Extremes of `{m·√2·2^{k−offset}}` over `k = 1..=depth`, with offset 1 for
/// `m = 1` and 2 for `m = 3`.
pub fn normality_probe(multiplier: u32, depth: usize) -> Result<NormalityReport, EngineError> {
    let offset = match multiplier {
        1 => 1,
        3 => 2,
        _ => return Err(EngineError::InvalidSpec("multiplier must be 1 or 3".into())),
    };
    if depth == 0 {
        return Err(EngineError::InvalidSpec("depth must be at least 1".into()));
    }
    let base = QSqrt2::sqrt2().scale(&BigInt::from(multiplier).into());
    let mut best: Option<(QSqrt2, usize, QSqrt2, usize)> = None;
    for k in 1..=depth {
        let f = base.mul_pow2(k as i64 - offset as i64).frac();
        best = Some(match best {
            None => (f.clone(), k, f, k),
            Some((lo, lk, hi, hk)) => {
                let (lo, lk) = if f < lo { (f.clone(), k) } else { (lo, lk) };
                let (hi, hk) = if f > hi { (f, k) } else { (hi, hk) };
                (lo, lk, hi, hk)
            }
        });
    }
    let (min_frac, argmin, max_frac, argmax) = best.expect("depth ≥ 1");
    Ok(NormalityReport {
        multiplier,
        exponent_offset: offset,
        k: depth,
        min_frac,
        argmin,
        max_frac,
        argmax,
    })
}

/// `{m·√2·2^{k−offset}}` for every `k`, in order.
pub fn normality_fracs(multiplier: u32, depth: usize) -> Result<Vec<QSqrt2>, EngineError> {
    let r = normality_probe(multiplier, 1)?;
    let base = QSqrt2::sqrt2().scale(&BigInt::from(multiplier).into());
    Ok((1..=depth)
        .map(|k| base.mul_pow2(k as i64 - r.exponent_offset as i64).frac())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_has_no_bad_digit() {
        assert_eq!(first_bad_digit(&Epsilon::half(), 300).unwrap(), None);
    }

    #[test]
    fn far_outside_domain_fails_early() {
        let (n, d) = first_bad_digit(&Epsilon::parse("0.1").unwrap(), 100).unwrap().unwrap();
        assert!(n < 100);
        assert!(d != BigInt::zero() && d != BigInt::one());
    }

    #[test]
    fn msb_digits_of_small_multiple() {
        // 3√2 = 4.2426… = 100.0011…₂
        let a = BigInt::from(3);
        let got: Vec<_> = (1..=7).map(|j| msb_digit(&a, 3, j)).collect();
        let want: Vec<BigInt> = [1, 0, 0, 0, 0, 1, 1].iter().map(|&d| d.into()).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn normality_examples() {
        let f = normality_fracs(1, 3).unwrap();
        assert_eq!(f[0], &QSqrt2::sqrt2() - &QSqrt2::one());
        assert_eq!(f[1], QSqrt2::half_int(4, 2));
        assert_eq!(f[2], QSqrt2::half_int(8, 5));
        let g = normality_fracs(3, 1).unwrap();
        assert_eq!(g[0], QSqrt2::half_int(3, 2));
        let r = normality_probe(1, 3).unwrap();
        assert_eq!((r.argmin, r.argmax), (1, 2));
        assert!(normality_probe(2, 3).is_err());
    }
}
