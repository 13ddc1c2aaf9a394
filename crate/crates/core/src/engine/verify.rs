use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::One;

use super::table::{delta, domain_hi, domain_lo, GPPairEntry, PairTarget};
use super::{digits_from_trace, digits_of_target, generate, EngineError, Epsilon, SequenceSpec};
use crate::exact::{BigRat, QSqrt2};

/// `v_1..v_depth` for an exact ε.
pub(crate) fn exact_trace(eps: &QSqrt2, depth: usize) -> Vec<BigInt> {
    let spec = SequenceSpec::new(eps.clone(), depth).expect("depth ≥ 1");
    generate(&spec)
        .expect("exact floors never fail")
        .values()
        .to_vec()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitMismatch {
    pub index: usize,
    pub trace_digit: BigInt,
    pub target_digit: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchReport {
    pub checked: usize,
    pub first_mismatch: Option<DigitMismatch>,
}

impl MatchReport {
    pub fn matched(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares the trace digits for `eps` with the digits of `target`, `d_1..d_n`.
pub fn match_digits(eps: &Epsilon, target: &QSqrt2, n: usize) -> Result<MatchReport, EngineError> {
    let spec = SequenceSpec::new(eps.clone(), 2 * n + 1)?;
    let got = digits_from_trace(&generate(&spec)?, n)?;
    let want = digits_of_target(target, n)?;
    let first_mismatch = got
        .digits
        .iter()
        .zip(&want.digits)
        .position(|(a, b)| a != b)
        .map(|i| DigitMismatch {
            index: i + 1,
            trace_digit: got.digits[i].clone(),
            target_digit: want.digits[i].clone(),
        });
    Ok(MatchReport {
        checked: n,
        first_mismatch,
    })
}

/// [`match_digits`] against the row's target, after checking an exact ε lies in the row.
pub fn verify_pair(pair: &GPPairEntry, eps: &Epsilon, n: usize) -> Result<MatchReport, EngineError> {
    if n == 0 {
        return Err(EngineError::InvalidSpec("digit count must be at least 1".into()));
    }
    if let Some(q) = eps.as_exact() {
        if !pair.contains(q) {
            return Err(EngineError::Domain(format!(
                "epsilon {q} outside [{}, {}) of row {}",
                pair.xi1, pair.xi2, pair.index
            )));
        }
    }
    match_digits(eps, &pair.target.value(), n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, witness: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass,
            witness: witness.into(),
        }
    }
}

/// Outcome of the finite exact checks for one row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub index: usize,
    pub comp_index: usize,
    pub comp_value: BigInt,
    pub checks: Vec<Check>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn half_int_text(x: &QSqrt2) -> String {
    match x.as_half_int() {
        Some((c, d)) => format!("({c}/2)*sqrt2-{d}"),
        None => x.to_string(),
    }
}

/// Runs the finite exact checks that, together with the two universal
/// inequalities, establish a row with an algebraic target for every `n`.
///
/// Prechecks (parity, `α+β = 2^{l+1}`, endpoint shape, order, domain) stop
/// the run on failure. Sharpness is only meaningful at interior endpoints;
/// the outer ends `1 − √2/2` and `√2/2` are domain bounds.
pub fn certify_pair(pair: &GPPairEntry) -> Result<Certificate, EngineError> {
    let target = match &pair.target {
        PairTarget::Algebraic(a) => a.clone(),
        PairTarget::Sqrt2 => {
            return Err(EngineError::Domain(format!(
                "row {} has the direct target sqrt2; use closed_form_check",
                pair.index
            )))
        }
    };
    let comp_index = target.comp_index();
    let comp_value = target.comp_value();
    let mut cert = Certificate {
        index: pair.index,
        comp_index,
        comp_value: comp_value.clone(),
        checks: Vec::new(),
    };

    let pre = [
        Check::new("alpha-odd", target.alpha_is_odd(), format!("alpha={}", target.alpha)),
        Check::new(
            "alpha+beta=2^(l+1)",
            target.satisfies_identity(),
            format!("alpha+beta={}, 2^(l+1)={}", &target.alpha + &target.beta, BigInt::one() << (target.l as usize + 1)),
        ),
        Check::new(
            "endpoint-form",
            pair.xi1.as_half_int().is_some() && pair.xi2.as_half_int().is_some(),
            format!("xi1={}, xi2={}", pair.xi1, pair.xi2),
        ),
        Check::new("ordered", pair.xi1 < pair.xi2, format!("xi1={}, xi2={}", pair.xi1, pair.xi2)),
        Check::new(
            "inside-domain",
            domain_lo() <= pair.xi1 && pair.xi2 <= domain_hi(),
            format!("[{}, {})", half_int_text(&pair.xi1), half_int_text(&pair.xi2)),
        ),
    ];
    let pre_ok = pre.iter().all(|c| c.pass);
    cert.checks.extend(pre);
    if !pre_ok {
        return Ok(cert);
    }

    let d = delta();
    let left = pair.xi1.clone();
    let right = pair.right_inner();
    let depth = comp_index.max(2 * (target.l as usize + 1) + 1);
    let at_left = exact_trace(&left, depth);
    let at_right = exact_trace(&right, depth);
    let comp_at = |tr: &[BigInt]| tr[comp_index - 1].clone();

    let v = comp_at(&at_left);
    cert.checks.push(Check::new("comp@xi1", v == comp_value, format!("v_{comp_index}={v}, want {comp_value}")));
    let v = comp_at(&at_right);
    cert.checks.push(Check::new("comp@xi2-delta", v == comp_value, format!("v_{comp_index}={v}, want {comp_value}")));

    if pair.xi1 == domain_lo() {
        cert.checks.push(Check::new("sharp@xi1", true, "domain bound 1-sqrt2/2"));
    } else {
        let v = exact_trace(&(&left - &d), comp_index)[comp_index - 1].clone();
        cert.checks.push(Check::new("sharp@xi1", v != comp_value, format!("v_{comp_index}(xi1-delta)={v}")));
    }
    if pair.xi2 == domain_hi() {
        cert.checks.push(Check::new("sharp@xi2", true, "domain bound sqrt2/2"));
    } else {
        let v = exact_trace(&pair.xi2, comp_index)[comp_index - 1].clone();
        cert.checks.push(Check::new("sharp@xi2", v != comp_value, format!("v_{comp_index}(xi2)={v}")));
    }

    let t = target.value();
    for (name, tr) in [("odd@xi1", &at_left), ("odd@xi2-delta", &at_right)] {
        let bad = (0..=target.l as usize + 1).find(|&k| tr[2 * k] != odd_form(&t, k));
        let witness = match bad {
            Some(k) => format!("k={k}: v_{}={}, want {}", 2 * k + 1, tr[2 * k], odd_form(&t, k)),
            None => format!("k=0..={}", target.l + 1),
        };
        cert.checks.push(Check::new(name, bad.is_none(), witness));
    }

    let bad = (0..=target.l as usize + 1).find(|&k| at_left[2 * k] != at_right[2 * k]);
    let witness = match bad {
        Some(k) => format!("v_{} differs: {} vs {}", 2 * k + 1, at_left[2 * k], at_right[2 * k]),
        None => format!("v_1..v_{} odd-indexed agree", 2 * (target.l + 1) + 1),
    };
    cert.checks.push(Check::new("prefix-stable", bad.is_none(), witness));
    Ok(cert)
}

/// `⌊t·2^{k−1}⌋ + 2^k`.
pub fn odd_form(t: &QSqrt2, k: usize) -> BigInt {
    t.mul_pow2(k as i64 - 1).floor() + (BigInt::one() << k)
}

/// `⌊t·2^{k−2}⌋ + γ·2^{k−l−2}` for `k ≥ l + 2`.
pub fn even_form(t: &QSqrt2, gamma: &BigInt, l: u32, k: usize) -> BigInt {
    t.mul_pow2(k as i64 - 2).floor() + (gamma << (k - l as usize - 2))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormMismatch {
    pub k: usize,
    pub expected: BigRat,
    pub actual: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormResult {
    pub form: &'static str,
    pub checked: usize,
    pub mismatches: Vec<FormMismatch>,
}

impl FormResult {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormReport {
    pub index: usize,
    pub k_range: (usize, usize),
    pub forms: Vec<FormResult>,
}

impl ClosedFormReport {
    pub fn form(&self, name: &str) -> Option<&FormResult> {
        self.forms.iter().find(|f| f.form == name)
    }
}

fn run_form(
    form: &'static str,
    ks: RangeInclusive<usize>,
    actual: impl Fn(usize) -> BigInt,
    expected: impl Fn(usize) -> BigRat,
) -> FormResult {
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for k in ks {
        checked += 1;
        let (e, a) = (expected(k), actual(k));
        if e != BigRat::from_integer(a.clone()) {
            mismatches.push(FormMismatch { k, expected: e, actual: a });
        }
    }
    FormResult { form, checked, mismatches }
}

/// Compares the trace at `eps` with the closed forms for `v_{2k}` and
/// `v_{2k+1}`, `k ∈ ks`.
///
/// Algebraic rows use the `γ`-even form and need `k ≥ l + 2`. The direct row
/// reports three forms: `odd`, `even-printed` (`⌊√2·2^{k−2}⌋ + 2^{k−2}`) and
/// `even-shifted` (`⌊√2·2^{k−1}⌋ + 2^{k−1}`).
pub fn closed_form_check(
    pair: &GPPairEntry,
    eps: &QSqrt2,
    ks: RangeInclusive<usize>,
) -> Result<ClosedFormReport, EngineError> {
    if !pair.contains(eps) {
        return Err(EngineError::Domain(format!("epsilon {eps} outside row {}", pair.index)));
    }
    let (lo, hi) = (*ks.start(), *ks.end());
    if lo > hi {
        return Err(EngineError::InvalidSpec("empty k range".into()));
    }
    let t = pair.target.value();
    let tr = exact_trace(eps, 2 * hi + 1);
    let v = |n: usize| tr[n - 1].clone();
    let int = |n: BigInt| BigRat::from_integer(n);
    let mut forms = Vec::new();
    match &pair.target {
        PairTarget::Algebraic(a) => {
            let min_k = a.l as usize + 2;
            if lo < min_k {
                return Err(EngineError::InvalidSpec(format!("row {} needs k >= {min_k}", pair.index)));
            }
            let gamma = a.gamma();
            forms.push(run_form("even", ks.clone(), |k| v(2 * k), |k| int(even_form(&t, &gamma, a.l, k))));
            forms.push(run_form("odd", ks, |k| v(2 * k + 1), |k| int(odd_form(&t, k))));
        }
        PairTarget::Sqrt2 => {
            if lo < 1 {
                return Err(EngineError::InvalidSpec("direct row needs k >= 1".into()));
            }
            forms.push(run_form("odd", ks.clone(), |k| v(2 * k + 1), |k| int(odd_form(&t, k))));
            forms.push(run_form(
                "even-printed",
                ks.clone(),
                |k| v(2 * k),
                |k| int(t.mul_pow2(k as i64 - 2).floor()) + crate::exact::rat_pow2(k as i64 - 2),
            ));
            forms.push(run_form(
                "even-shifted",
                ks,
                |k| v(2 * k),
                |k| int(t.mul_pow2(k as i64 - 1).floor() + (BigInt::one() << (k - 1))),
            ));
        }
    }
    Ok(ClosedFormReport {
        index: pair.index,
        k_range: (lo, hi),
        forms,
    })
}
