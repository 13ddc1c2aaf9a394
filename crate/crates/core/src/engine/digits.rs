use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{EngineError, SequenceTrace};
use crate::exact::{BigRat, QSqrt2};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DigitSource {
    /// `d_n = v_{2n+1} − 2v_{2n−1}`.
    Trace,
    /// `d_n = ⌊t·2^{n−1}⌋ − 2⌊t·2^{n−2}⌋`.
    Target,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitStream {
    pub digits: Vec<BigInt>,
    pub source: DigitSource,
}

impl DigitStream {
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// `d_n`, 1-indexed.
    pub fn get(&self, n: usize) -> Option<&BigInt> {
        n.checked_sub(1).and_then(|i| self.digits.get(i))
    }

    /// First `(n, d_n)` with `d_n ∉ {0, 1}`.
    pub fn first_non_binary(&self) -> Option<(usize, BigInt)> {
        self.digits
            .iter()
            .enumerate()
            .find(|(_, d)| !(d.is_zero() || d.is_one()))
            .map(|(i, d)| (i + 1, d.clone()))
    }

    /// `Σ d_n·2^{1−n}`.
    pub fn partial_sum(&self) -> BigRat {
        let mut acc = BigInt::zero();
        for d in &self.digits {
            acc = (acc << 1usize) + d;
        }
        let shift = self.digits.len().saturating_sub(1);
        BigRat::new(acc, BigInt::one() << shift)
    }

    /// Digits as machine integers; `None` if any does not fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.digits.iter().map(|d| i64::try_from(d).ok()).collect()
    }
}

/// `d_1..d_⌊(N−1)/2⌋` from a trace of depth `N`.
pub fn digits_from_trace(trace: &SequenceTrace, count: usize) -> Result<DigitStream, EngineError> {
    let needed = 2 * count + 1;
    if trace.len() < needed {
        return Err(EngineError::Range {
            needed,
            available: trace.len(),
        });
    }
    let v = trace.values();
    let digits = (1..=count)
        .map(|n| &v[2 * n] - (&v[2 * n - 2] << 1usize))
        .collect();
    Ok(DigitStream {
        digits,
        source: DigitSource::Trace,
    })
}

/// All digits a trace supports.
pub fn max_digits(trace: &SequenceTrace) -> usize {
    trace.len().saturating_sub(1) / 2
}

/// The first `count` binary digits of `t ∈ [0, 2)`, integer digit first.
pub fn digits_of_target(t: &QSqrt2, count: usize) -> Result<DigitStream, EngineError> {
    if t.is_negative() || t >= &QSqrt2::from_integer(2) {
        return Err(EngineError::Domain(format!("target {t} outside [0, 2)")));
    }
    let mut digits = Vec::with_capacity(count);
    // ⌊t/2⌋ = 0 on the domain
    let mut prev = BigInt::zero();
    for n in 1..=count {
        let cur = t.mul_pow2(n as i64 - 1).floor();
        digits.push(&cur - (&prev << 1usize));
        prev = cur;
    }
    Ok(DigitStream {
        digits,
        source: DigitSource::Target,
    })
}
