//! Interchangeable ways to evaluate one recurrence step `⌊√2·(v + offset)⌋`.
//!
//! Every strategy is registered by name in a [`FloorRegistry`] and picked at
//! runtime (the CLI's `--floor` flag). The exact strategies are independent
//! routes to the same integer and serve as oracles for one another.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::engine::Epsilon;
use crate::exact::{isqrt, pow2, BigRat, QSqrt2};
use crate::reals::{certified_floor, Enclose, RealsError, DEFAULT_MAX_BITS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("floor strategy '{strategy}' needs an exact epsilon")]
    NeedsExact { strategy: &'static str },
    #[error(transparent)]
    Reals(#[from] RealsError),
}

pub trait FloorStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    /// `⌊√2·(v + offset)⌋`.
    fn step(&self, v: &BigInt, offset: &Epsilon) -> Result<BigInt, StepError>;
}

/// `√2·(v + a + b√2) = 2b + (v + a)·√2` as an exact element.
fn step_value(v: &BigInt, offset: &QSqrt2) -> QSqrt2 {
    let two = BigRat::from_integer(BigInt::from(2));
    QSqrt2::new(
        offset.sqrt2_part() * two,
        offset.rational_part() + BigRat::from_integer(v.clone()),
    )
}

/// Closed-form exact floor: one integer square root per step.
#[derive(Debug, Default, Clone, Copy)]
pub struct ExactFloor;

impl FloorStrategy for ExactFloor {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn summary(&self) -> &'static str {
        "exact floor in Q(sqrt2) via one integer square root"
    }

    fn step(&self, v: &BigInt, offset: &Epsilon) -> Result<BigInt, StepError> {
        match offset {
            Epsilon::Exact(q) => Ok(step_value(v, q).floor()),
            Epsilon::Real(_) => Err(StepError::NeedsExact { strategy: self.name() }),
        }
    }
}

/// Estimate-then-correct floor: a rational approximation of √2 carrying 128
/// guard bits gives an integer guess, which exact sign tests then adjust.
#[derive(Debug, Default, Clone, Copy)]
pub struct EstimateFloor;

/// Guard bits of the √2 approximation beyond the size of the coefficient.
pub const ESTIMATE_GUARD_BITS: u64 = 128;

impl EstimateFloor {
    /// Floor of `x` by estimate and exact correction. Also reports the number
    /// of correction steps taken.
    pub fn floor_counted(x: &QSqrt2) -> (BigInt, u32) {
        let b = x.sqrt2_part();
        let k = ESTIMATE_GUARD_BITS + b.numer().bits();
        // s/2^k ≤ √2 < (s+1)/2^k
        let s = isqrt(&(pow2(2 * k + 1))).expect("non-negative");
        let approx = BigRat::new(s, pow2(k));
        let mut n = (x.rational_part() + b * approx).floor().to_integer();
        let mut steps = 0;
        while (x - &QSqrt2::from_integer(n.clone())).is_negative() {
            n -= 1;
            steps += 1;
        }
        while !(x - &QSqrt2::from_integer(&n + 1)).is_negative() {
            n += 1;
            steps += 1;
        }
        (n, steps)
    }
}

impl FloorStrategy for EstimateFloor {
    fn name(&self) -> &'static str {
        "estimate"
    }

    fn summary(&self) -> &'static str {
        "128-bit estimate corrected by exact sign tests"
    }

    fn step(&self, v: &BigInt, offset: &Epsilon) -> Result<BigInt, StepError> {
        match offset {
            Epsilon::Exact(q) => Ok(Self::floor_counted(&step_value(v, q)).0),
            Epsilon::Real(_) => Err(StepError::NeedsExact { strategy: self.name() }),
        }
    }
}

/// Certified floor from interval enclosures of the offset; accepts any epsilon.
#[derive(Debug, Clone, Copy)]
pub struct IntervalFloor {
    pub max_bits: u32,
}

impl Default for IntervalFloor {
    fn default() -> Self {
        Self {
            max_bits: DEFAULT_MAX_BITS,
        }
    }
}

impl FloorStrategy for IntervalFloor {
    fn name(&self) -> &'static str {
        "interval"
    }

    fn summary(&self) -> &'static str {
        "interval enclosure refined until the floor is certified"
    }

    fn step(&self, v: &BigInt, offset: &Epsilon) -> Result<BigInt, StepError> {
        let addend = QSqrt2::new(BigRat::from_integer(BigInt::from(0)), BigRat::from_integer(v.clone()));
        // √2·(v + ε) = √2·ε + v√2
        let x: &dyn Enclose = match offset {
            Epsilon::Exact(q) => q,
            Epsilon::Real(r) => r.as_ref(),
        };
        Ok(certified_floor(x, &QSqrt2::sqrt2(), &addend, self.max_bits)?)
    }
}

/// Name-indexed collection of floor strategies.
#[derive(Clone)]
pub struct FloorRegistry {
    entries: BTreeMap<&'static str, Arc<dyn FloorStrategy>>,
}

impl FloorRegistry {
    pub fn empty() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }

    /// Registers a strategy, replacing any previous one with the same name.
    pub fn register(&mut self, strategy: Arc<dyn FloorStrategy>) {
        self.entries.insert(strategy.name(), strategy);
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn FloorStrategy>> {
        self.entries.get(name).cloned()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }

    /// The strategy used when none is named: exact for exact epsilon,
    /// interval otherwise.
    pub fn default_for(&self, eps: &Epsilon) -> Arc<dyn FloorStrategy> {
        let name = match eps {
            Epsilon::Exact(_) => "exact",
            Epsilon::Real(_) => "interval",
        };
        self.get(name).expect("default strategies are registered")
    }
}

impl Default for FloorRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(ExactFloor));
        r.register(Arc::new(EstimateFloor));
        r.register(Arc::new(IntervalFloor::default()));
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps(s: &str) -> Epsilon {
        Epsilon::parse(s).unwrap()
    }

    #[test]
    fn registry_lookup() {
        let r = FloorRegistry::default();
        assert_eq!(r.names(), vec!["estimate", "exact", "interval"]);
        assert!(r.get("nope").is_none());
        assert_eq!(r.default_for(&eps("1/2")).name(), "exact");
        assert_eq!(r.default_for(&eps("1-pi^2/e^3")).name(), "interval");
    }

    #[test]
    fn strategies_agree_on_small_steps() {
        let r = FloorRegistry::default();
        for s in ["1/2", "21/50", "3/10", "1-sqrt2/2+1/1000"] {
            let e = eps(s);
            for v in [1i64, 2, 13, 916_495_974] {
                let v = BigInt::from(v);
                let want = r.get("exact").unwrap().step(&v, &e).unwrap();
                assert_eq!(r.get("estimate").unwrap().step(&v, &e).unwrap(), want);
                assert_eq!(r.get("interval").unwrap().step(&v, &e).unwrap(), want);
            }
        }
    }

    #[test]
    fn exact_strategies_reject_real_epsilon() {
        let e = eps("1-pi^2/e^3");
        let err = ExactFloor.step(&BigInt::from(1), &e).unwrap_err();
        assert_eq!(err, StepError::NeedsExact { strategy: "exact" });
    }

    #[test]
    fn estimate_needs_few_corrections() {
        let x = QSqrt2::half_int(1_296_121_037i64, 916_495_974i64);
        let (n, steps) = EstimateFloor::floor_counted(&x);
        assert_eq!(n, x.floor());
        assert!(steps <= 2);
    }
}
