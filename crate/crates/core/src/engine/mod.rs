//! Recurrence generation, digit streams and checks of digit-emitting pairs.

mod digits;
mod lemma;
mod probes;
mod sequence;
mod table;
mod verify;
pub use table::{
    delta, domain_hi, domain_lo, table_row, theorem_table, AlgebraicTarget, GPPairEntry, PairTarget,
    ENDPOINTS,
};
pub use verify::{
    certify_pair, closed_form_check, even_form, match_digits, odd_form, verify_pair, Certificate, Check,
    ClosedFormReport, DigitMismatch, FormMismatch, FormResult, MatchReport,
};

pub(crate) use verify::exact_trace;

use thiserror::Error;

use crate::reals::RealsError;
use crate::strategy::StepError;

pub use digits::{digits_from_trace, digits_of_target, max_digits, DigitSource, DigitStream};
pub use lemma::{conditio_value, lemma_checks, lemma_value, LemmaReport, LemmaViolation};
pub use probes::{
    corollary_check, first_bad_digit, first_bad_digit_with, normality_fracs, normality_probe,
    CorollaryMismatch, CorollaryReport, NormalityReport, COROLLARY_ALPHA, COROLLARY_CAP_BITS,
};
pub use sequence::{generate, generate_with, value_at, Epsilon, Recurrence, SequenceSpec, SequenceTrace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("invalid sequence spec: {0}")]
    InvalidSpec(String),
    #[error("step to v_{index} failed: {source}")]
    Step { index: usize, source: StepError },
    #[error("need {needed} values, trace has {available}")]
    Range { needed: usize, available: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Reals(#[from] RealsError),
}
