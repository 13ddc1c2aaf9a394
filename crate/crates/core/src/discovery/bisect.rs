use num_bigint::BigInt;

use super::DiscoveryError;
use crate::engine::value_at;
use crate::exact::{rat_pow2, BigRat, QSqrt2};
use crate::reals::RealInterval;

/// Encloses `inf{ε : v_n(ε) ≥ target}` in `(lo, hi]` of width at most `2^-tol_bits`
/// by halving with exact probes at rational midpoints.
pub fn bisect_jump(
    n: usize,
    target: &BigInt,
    lo: &BigRat,
    hi: &BigRat,
    tol_bits: u32,
) -> Result<RealInterval, DiscoveryError> {
    if n == 0 {
        return Err(DiscoveryError::Invalid("index must be at least 1".into()));
    }
    let probe = |e: &BigRat| value_at(&QSqrt2::from_rat(e.clone()), n);
    let (at_lo, at_hi) = (probe(lo), probe(hi));
    if !(lo < hi && &at_lo < target && target <= &at_hi) {
        return Err(DiscoveryError::Bracket {
            n,
            target: target.clone(),
            at_lo,
            at_hi,
        });
    }
    let tol = rat_pow2(-(tol_bits as i64));
    let two = BigRat::from_integer(2.into());
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    while &hi - &lo > tol {
        let mid = (&lo + &hi) / &two;
        if &probe(&mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(RealInterval::new(lo, hi, tol_bits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRat {
        BigRat::new(p.into(), q.into())
    }

    #[test]
    fn finds_first_breakpoint() {
        let iv = bisect_jump(2, &BigInt::from(2), &rat(3, 10), &rat(1, 2), 50).unwrap();
        assert!(iv.contains_exact(&QSqrt2::half_int(2, 1)));
        assert!(iv.width() <= rat_pow2(-50));
    }

    #[test]
    fn bracket_is_checked() {
        let err = bisect_jump(2, &BigInt::from(2), &rat(1, 2), &rat(6, 10), 20).unwrap_err();
        assert!(matches!(err, DiscoveryError::Bracket { .. }));
        assert!(bisect_jump(2, &BigInt::from(2), &rat(1, 2), &rat(3, 10), 20).is_err());
    }
}
