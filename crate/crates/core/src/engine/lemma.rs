use num_bigint::{BigInt, RandBigInt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::table::{domain_hi, domain_lo, theorem_table};
use super::EngineError;
use crate::exact::{rat_pow2, BigRat, QSqrt2};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaViolation {
    pub check: &'static str,
    pub witness: String,
    pub value: QSqrt2,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LemmaReport {
    pub random_samples: usize,
    pub branch_points: usize,
    pub corner_points: usize,
    pub table_points: usize,
    pub violations: Vec<LemmaViolation>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn in_unit(x: &QSqrt2) -> bool {
    !x.is_negative() && x < &QSqrt2::one()
}

/// `{x} − √2{x/2} + √2/2`.
pub fn lemma_value(x: &QSqrt2) -> QSqrt2 {
    let half = x.scale(&BigRat::new(1.into(), 2.into()));
    &(&x.frac() - &(&QSqrt2::sqrt2() * &half.frac())) + &QSqrt2::half_int(1, 0)
}

/// `(1 − √2)·f + √2·ε`.
pub fn conditio_value(f: &QSqrt2, eps: &QSqrt2) -> QSqrt2 {
    let one_minus = &QSqrt2::one() - &QSqrt2::sqrt2();
    &(&one_minus * f) + &(&QSqrt2::sqrt2() * eps)
}

fn random_rat(rng: &mut ChaCha8Rng, bits: u64) -> BigRat {
    let n = rng.gen_bigint(bits);
    let mut d = rng.gen_biguint(bits);
    if d == 0u32.into() {
        d = 1u32.into();
    }
    BigRat::new(n, BigInt::from(d))
}

/// Exact checks of the two inequalities behind the induction.
///
/// 1. `{x} − √2{x/2} + √2/2 ∈ [0, 1)` on `samples` random `x`, alternating
///    rationals and elements of ℚ(√2);
/// 2. the two branch formulas at `{x/2} ∈ {0, 1/2 − 2^-64, 1/2, 1 − 2^-64}`;
/// 3. `(1 − √2)f + √2ε ∈ [0, 1)` at the corners `f ∈ {0, 1 − 2^-64}`,
///    `ε ∈ {1 − √2/2, √2/2 − 2^-64}`;
/// 4. the first inequality at `x = α√2·2^{k−l−1}` for each table row, `k ∈ [l+2, l+2+table_depth)`.
pub fn lemma_checks(samples: usize, seed: u64, table_depth: usize) -> Result<LemmaReport, EngineError> {
    if samples == 0 {
        return Err(EngineError::InvalidSpec("sample count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = LemmaReport::default();
    let flag = |report: &mut LemmaReport, check, witness: String, value: QSqrt2| {
        report.violations.push(LemmaViolation { check, witness, value });
    };

    for i in 0..samples {
        let bits = rng.gen_range(1..=128);
        let x = if i % 2 == 0 {
            QSqrt2::from_rat(random_rat(&mut rng, bits))
        } else {
            QSqrt2::new(random_rat(&mut rng, bits), random_rat(&mut rng, bits))
        };
        let v = lemma_value(&x);
        if !in_unit(&v) {
            flag(&mut report, "random", format!("x={x}"), v);
        }
        report.random_samples += 1;
    }

    let eps64 = rat_pow2(-64);
    let half = BigRat::new(1.into(), 2.into());
    let one = BigRat::from_integer(1.into());
    let two_minus = &QSqrt2::from_integer(2) - &QSqrt2::sqrt2();
    let s2h = QSqrt2::half_int(1, 0);
    for y in [BigRat::from_integer(0.into()), &half - &eps64, half.clone(), &one - &eps64] {
        // {x/2} = y: {x} = 2y below 1/2 and 2y − 1 from 1/2 on
        let yq = QSqrt2::from_rat(y.clone());
        let branch = if y < half {
            &(&two_minus * &yq) + &s2h
        } else {
            &(&(&two_minus * &yq) + &s2h) - &QSqrt2::one()
        };
        let direct = lemma_value(&QSqrt2::from_rat(&y * BigRat::from_integer(2.into())));
        if branch != direct || !in_unit(&branch) {
            flag(&mut report, "branch", format!("y={y}"), branch);
        }
        report.branch_points += 1;
    }

    let eps_hi = &domain_hi() - &QSqrt2::from_rat(eps64.clone());
    for f in [QSqrt2::zero(), QSqrt2::from_rat(&one - &eps64)] {
        for eps in [domain_lo(), eps_hi.clone()] {
            let v = conditio_value(&f, &eps);
            if !in_unit(&v) {
                flag(&mut report, "conditio", format!("f={f}, eps={eps}"), v);
            }
            report.corner_points += 1;
        }
    }

    for row in theorem_table() {
        let Some(a) = row.target.algebraic() else { continue };
        let base = QSqrt2::new(BigRat::from_integer(0.into()), BigRat::from_integer(a.alpha.clone()));
        for k in a.l as usize + 2..a.l as usize + 2 + table_depth {
            let x = base.mul_pow2(k as i64 - a.l as i64 - 1);
            let v = lemma_value(&x);
            if !in_unit(&v) {
                flag(&mut report, "table", format!("row={}, k={k}", row.index), v);
            }
            report.table_points += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_values() {
        // 1/2 − √2·3/4 + √2/2 = 1/2 − √2/4
        let v = lemma_value(&QSqrt2::ratio(3, 2));
        assert_eq!(v, QSqrt2::new(BigRat::new(1.into(), 2.into()), BigRat::new((-1).into(), 4.into())));
        assert_eq!(lemma_value(&QSqrt2::zero()), QSqrt2::half_int(1, 0));
        let c = conditio_value(&QSqrt2::zero(), &domain_lo());
        assert_eq!(c, &QSqrt2::sqrt2() - &QSqrt2::one());
    }

    #[test]
    fn small_run_is_clean() {
        let r = lemma_checks(500, 7, 40).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.random_samples, 500);
        assert_eq!(r.branch_points, 4);
        assert_eq!(r.corner_points, 4);
        assert_eq!(r.table_points, 7 * 40);
    }

    #[test]
    fn zero_samples_rejected() {
        assert!(lemma_checks(0, 1, 1).is_err());
    }
}
