use std::fmt;
use std::str::FromStr;

use gp_core::engine::Epsilon;
use gp_core::reals::RealsError;

/// An ε as typed on the command line, with its parsed value.
#[derive(Debug, Clone)]
pub struct EpsilonInput {
    pub raw: String,
    pub value: Epsilon,
}

impl EpsilonInput {
    pub fn parse(raw: &str) -> Result<Self, RealsError> {
        Ok(Self {
            raw: raw.to_string(),
            value: Epsilon::parse(raw)?,
        })
    }

    /// Text that reparses to the same value: `p/q+r/s*sqrt2` on the exact
    /// path, a fully parenthesized expression otherwise.
    pub fn canonical(&self) -> String {
        self.value.to_string()
    }

    pub fn kind(&self) -> &'static str {
        match self.value {
            Epsilon::Exact(_) => "exact",
            Epsilon::Real(_) => "real",
        }
    }
}

impl FromStr for EpsilonInput {
    type Err = RealsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for EpsilonInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gp_core::QSqrt2;
    use proptest::prelude::*;

    #[test]
    fn decimal_is_exact_rational() {
        let e = EpsilonInput::parse("0.2928").unwrap();
        assert_eq!(e.value.as_exact(), Some(&QSqrt2::ratio(2928, 10000)));
        assert_eq!(e.canonical(), "183/625");
    }

    #[test]
    fn sqrt2_expressions_stay_exact() {
        let e = EpsilonInput::parse("1296121037/2*sqrt2 - 916495974").unwrap();
        assert_eq!(e.kind(), "exact");
        assert_eq!(e.value.as_exact(), Some(&QSqrt2::half_int(1_296_121_037i64, 916_495_974i64)));
    }

    #[test]
    fn transcendental_is_real() {
        let e = EpsilonInput::parse("1-pi^2/e^3").unwrap();
        assert_eq!(e.kind(), "real");
        let again = EpsilonInput::parse(&e.canonical()).unwrap();
        assert_eq!(again.canonical(), e.canonical());
    }

    fn expr_text() -> impl Strategy<Value = String> {
        let leaf = prop_oneof![
            (0u32..1000).prop_map(|n| n.to_string()),
            (0u32..1000, 1u32..100).prop_map(|(a, b)| format!("{a}.{b}")),
            Just("sqrt2".to_string()),
            Just("pi".to_string()),
            Just("e".to_string()),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone(), prop::sample::select(vec!['+', '-', '*']))
                    .prop_map(|(a, b, op)| format!("({a}){op}({b})")),
                (inner.clone(), 1u32..4).prop_map(|(a, k)| format!("({a})^{k}")),
                inner.clone().prop_map(|a| format!("-({a})")),
                inner.prop_map(|a| format!("({a})/(1+sqrt2)")),
            ]
        })
    }

    proptest! {
        #[test]
        fn canonical_reparses(src in expr_text()) {
            let e = EpsilonInput::parse(&src).unwrap();
            let again = EpsilonInput::parse(&e.canonical()).unwrap();
            prop_assert_eq!(again.kind(), e.kind());
            prop_assert_eq!(again.canonical(), e.canonical());
            if let (Some(a), Some(b)) = (e.value.as_exact(), again.value.as_exact()) {
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn parse_error_has_position() {
        match EpsilonInput::parse("1 + * 2") {
            Err(RealsError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
    }
}
