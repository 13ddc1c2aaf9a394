use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::EngineError;
use crate::exact::QSqrt2;
use crate::reals::{Expr, RealsError, RefinableReal};
use crate::strategy::{FloorRegistry, FloorStrategy};

/// The offset added on odd steps: exact in ℚ(√2), or a refinable real.
#[derive(Clone, Debug)]
pub enum Epsilon {
    Exact(QSqrt2),
    Real(Arc<RefinableReal>),
}

impl Epsilon {
    /// Parses the ε grammar; anything without π or e lands on the exact path.
    pub fn parse(src: &str) -> Result<Self, RealsError> {
        Self::from_expr(Expr::parse(src)?)
    }

    pub fn from_expr(expr: Expr) -> Result<Self, RealsError> {
        Ok(match expr.eval_exact()? {
            Some(q) => Epsilon::Exact(q),
            None => Epsilon::Real(Arc::new(RefinableReal::new(expr))),
        })
    }

    pub fn half() -> Self {
        Epsilon::Exact(QSqrt2::ratio(1, 2))
    }

    pub fn as_exact(&self) -> Option<&QSqrt2> {
        match self {
            Epsilon::Exact(q) => Some(q),
            Epsilon::Real(_) => None,
        }
    }
}

impl From<QSqrt2> for Epsilon {
    fn from(q: QSqrt2) -> Self {
        Epsilon::Exact(q)
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Epsilon::Exact(q) => write!(f, "{q}"),
            Epsilon::Real(r) => write!(f, "{}", r.expr()),
        }
    }
}

/// Configuration of `v_1 = initial`, `v_{n+1} = ⌊√2(v_n + ε)⌋` for odd `n`
/// and `⌊√2(v_n + 1/2)⌋` for even `n`.
#[derive(Clone, Debug)]
pub struct SequenceSpec {
    pub epsilon: Epsilon,
    pub initial: BigInt,
    pub depth: usize,
}

impl SequenceSpec {
    pub fn new(epsilon: impl Into<Epsilon>, depth: usize) -> Result<Self, EngineError> {
        Self::with_initial(epsilon, BigInt::one(), depth)
    }

    pub fn with_initial(
        epsilon: impl Into<Epsilon>,
        initial: BigInt,
        depth: usize,
    ) -> Result<Self, EngineError> {
        if depth == 0 {
            return Err(EngineError::InvalidSpec("depth must be at least 1".into()));
        }
        if !initial.is_positive() {
            return Err(EngineError::InvalidSpec("initial value must be at least 1".into()));
        }
        Ok(Self {
            epsilon: epsilon.into(),
            initial,
            depth,
        })
    }
}

/// Values `v_1..v_N` of one recurrence run.
#[derive(Clone, Debug)]
pub struct SequenceTrace {
    values: Vec<BigInt>,
    spec: SequenceSpec,
}

impl SequenceTrace {
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn spec(&self) -> &SequenceSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `v_n`, 1-indexed.
    pub fn get(&self, n: usize) -> Option<&BigInt> {
        n.checked_sub(1).and_then(|i| self.values.get(i))
    }

    pub(crate) fn from_parts(values: Vec<BigInt>, spec: SequenceSpec) -> Self {
        Self { values, spec }
    }
}

/// Streams `v_1, v_2, …` without materializing the trace.
pub struct Recurrence<'a> {
    strategy: &'a dyn FloorStrategy,
    epsilon: &'a Epsilon,
    half: Epsilon,
    current: BigInt,
    n: usize,
}

impl<'a> Recurrence<'a> {
    pub fn new(strategy: &'a dyn FloorStrategy, epsilon: &'a Epsilon, initial: BigInt) -> Self {
        Self {
            strategy,
            epsilon,
            half: Epsilon::half(),
            current: initial,
            n: 1,
        }
    }

    /// Index of the value returned by [`Recurrence::current`].
    pub fn index(&self) -> usize {
        self.n
    }

    pub fn current(&self) -> &BigInt {
        &self.current
    }

    /// Advances from `v_n` to `v_{n+1}`.
    pub fn advance(&mut self) -> Result<&BigInt, EngineError> {
        let offset = if self.n % 2 == 1 { self.epsilon } else { &self.half };
        let next = self
            .strategy
            .step(&self.current, offset)
            .map_err(|source| EngineError::Step {
                index: self.n + 1,
                source,
            })?;
        self.current = next;
        self.n += 1;
        Ok(&self.current)
    }
}

/// Runs the recurrence with the registry's default strategy for the epsilon kind.
pub fn generate(spec: &SequenceSpec) -> Result<SequenceTrace, EngineError> {
    let strategy = FloorRegistry::default().default_for(&spec.epsilon);
    generate_with(spec, strategy.as_ref())
}

pub fn generate_with(
    spec: &SequenceSpec,
    strategy: &dyn FloorStrategy,
) -> Result<SequenceTrace, EngineError> {
    let mut rec = Recurrence::new(strategy, &spec.epsilon, spec.initial.clone());
    let mut values = Vec::with_capacity(spec.depth);
    values.push(spec.initial.clone());
    while values.len() < spec.depth {
        values.push(rec.advance()?.clone());
    }
    Ok(SequenceTrace::from_parts(values, spec.clone()))
}

/// `v_n(ε)` for an exact ε, the probe used by sweeps and bisection.
pub fn value_at(eps: &QSqrt2, n: usize) -> BigInt {
    let spec = SequenceSpec::new(eps.clone(), n).expect("n ≥ 1");
    let trace = generate(&spec).expect("exact floors never fail");
    trace.values()[n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::{EstimateFloor, IntervalFloor};

    fn trace(eps: &str, n: usize) -> Vec<i64> {
        let spec = SequenceSpec::new(Epsilon::parse(eps).unwrap(), n).unwrap();
        generate(&spec)
            .unwrap()
            .values()
            .iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn graham_pollak_sequence() {
        assert_eq!(trace("1/2", 7), vec![1, 2, 3, 4, 6, 9, 13]);
    }

    #[test]
    fn interior_of_second_interval() {
        assert_eq!(trace("0.42", 11), vec![1, 2, 3, 4, 6, 9, 13, 18, 26, 37, 53]);
    }

    #[test]
    fn interior_of_first_interval() {
        assert_eq!(trace("3/10", 3), vec![1, 1, 2]);
    }

    #[test]
    fn spec_validation() {
        assert!(SequenceSpec::new(Epsilon::half(), 0).is_err());
        assert!(SequenceSpec::with_initial(Epsilon::half(), BigInt::from(0), 3).is_err());
    }

    #[test]
    fn strategies_give_identical_traces() {
        let spec = SequenceSpec::new(Epsilon::parse("0.42").unwrap(), 120).unwrap();
        let a = generate(&spec).unwrap();
        let b = generate_with(&spec, &EstimateFloor).unwrap();
        let c = generate_with(&spec, &IntervalFloor::default()).unwrap();
        assert_eq!(a.values(), b.values());
        assert_eq!(a.values(), c.values());
    }

    #[test]
    fn undecidable_step_reports_index() {
        // √2(v_1 + √2 − 1) = 2 exactly
        let spec = SequenceSpec::new(Epsilon::parse("sqrt2-1").unwrap(), 4).unwrap();
        let err = generate_with(&spec, &IntervalFloor { max_bits: 256 }).unwrap_err();
        match err {
            EngineError::Step { index, .. } => assert_eq!(index, 2),
            other => panic!("{other:?}"),
        }
        // the exact path has no trouble
        assert_eq!(trace("sqrt2-1", 2), vec![1, 2]);
    }
}
