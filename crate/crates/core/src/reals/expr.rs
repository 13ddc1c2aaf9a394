//! Expression trees over integer/decimal literals, π, e and √2.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | base ('^' integer)?
//! base   := number | 'pi' | 'e' | 'sqrt2' | '(' expr ')'
//! number := digits ('.' digits)?
//! ```
//!
//! Decimal literals are exact: `0.2928` is the rational `2928/10000`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::constants::{e_raw, pi_raw, sqrt2_raw};
use super::interval::{finalize, tight_enough, RealInterval};
use super::RealsError;
use crate::exact::{BigRat, QSqrt2};

/// Largest accepted exponent in `base ^ n`.
pub const MAX_EXPONENT: u32 = 4096;

/// Extra working bits are doubled up to this cap before giving up on a division.
const MAX_GUARD: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Non-negative literal as written (integer or terminating decimal).
    Lit(BigRat),
    Pi,
    E,
    Sqrt2,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr, RealsError> {
        let mut p = Parser { src, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    pub fn from_exact(x: &QSqrt2) -> Expr {
        // Display of QSqrt2 is valid grammar
        Expr::parse(&x.to_string()).expect("canonical QSqrt2 text parses")
    }

    pub fn depth(&self) -> u32 {
        match self {
            Expr::Lit(_) | Expr::Pi | Expr::E | Expr::Sqrt2 => 1,
            Expr::Neg(a) | Expr::Pow(a, _) => 1 + a.depth(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    /// True when the value lies in ℚ(√2) by construction (no π or e leaves).
    pub fn is_algebraic(&self) -> bool {
        match self {
            Expr::Pi | Expr::E => false,
            Expr::Lit(_) | Expr::Sqrt2 => true,
            Expr::Neg(a) | Expr::Pow(a, _) => a.is_algebraic(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.is_algebraic() && b.is_algebraic()
            }
        }
    }

    /// Exact value when the expression lives in ℚ(√2); `Ok(None)` when it contains π or e.
    pub fn eval_exact(&self) -> Result<Option<QSqrt2>, RealsError> {
        if !self.is_algebraic() {
            return Ok(None);
        }
        self.exact_inner().map(Some)
    }

    fn exact_inner(&self) -> Result<QSqrt2, RealsError> {
        Ok(match self {
            Expr::Lit(r) => QSqrt2::from_rat(r.clone()),
            Expr::Sqrt2 => QSqrt2::sqrt2(),
            Expr::Pi | Expr::E => unreachable!("checked by is_algebraic"),
            Expr::Neg(a) => -a.exact_inner()?,
            Expr::Add(a, b) => a.exact_inner()? + b.exact_inner()?,
            Expr::Sub(a, b) => a.exact_inner()? - b.exact_inner()?,
            Expr::Mul(a, b) => a.exact_inner()? * b.exact_inner()?,
            Expr::Div(a, b) => a
                .exact_inner()?
                .checked_div(&b.exact_inner()?)
                .map_err(|_| RealsError::DivisionByZero)?,
            Expr::Pow(a, n) => {
                let base = a.exact_inner()?;
                let mut acc = QSqrt2::one();
                for _ in 0..*n {
                    acc = &acc * &base;
                }
                acc
            }
        })
    }

    /// Outward-rounded evaluation with every intermediate on the grid `2^-wp`.
    pub(crate) fn eval_at(&self, wp: u32) -> Result<RealInterval, RealsError> {
        Ok(match self {
            Expr::Lit(r) => RealInterval::point(r.clone(), wp),
            Expr::Pi => pi_raw(wp),
            Expr::E => e_raw(wp),
            Expr::Sqrt2 => sqrt2_raw(wp),
            Expr::Neg(a) => a.eval_at(wp)?.neg(),
            Expr::Add(a, b) => a.eval_at(wp)?.add(&b.eval_at(wp)?),
            Expr::Sub(a, b) => a.eval_at(wp)?.sub(&b.eval_at(wp)?),
            Expr::Mul(a, b) => a.eval_at(wp)?.mul(&b.eval_at(wp)?).round_outward(wp),
            Expr::Div(a, b) => a
                .eval_at(wp)?
                .div(&b.eval_at(wp)?)
                .ok_or(RealsError::DivisionByZero)?
                .round_outward(wp),
            Expr::Pow(a, n) => a.eval_at(wp)?.powi(*n).round_outward(wp),
        })
    }
}

/// Sound enclosure of `expr` with width at most `2^(1-bits)·max(1, |value|)`.
///
/// Working precision grows until the result is tight enough; a divisor that
/// still contains zero at the guard cap is reported as [`RealsError::DivisionByZero`].
pub fn eval_expr(expr: &Expr, bits: u32) -> Result<RealInterval, RealsError> {
    let mut guard = 16 + 4 * expr.depth();
    loop {
        match expr.eval_at(bits + guard) {
            Ok(t) if tight_enough(&t, bits) => return Ok(finalize(&t, bits)),
            Ok(_) | Err(RealsError::DivisionByZero) => {}
            Err(e) => return Err(e),
        }
        if guard >= MAX_GUARD {
            return Err(match expr.eval_at(bits + guard) {
                Err(e) => e,
                Ok(_) => RealsError::PrecisionExhausted { bits: bits + guard },
            });
        }
        guard = (guard * 2).min(MAX_GUARD);
    }
}

impl FromStr for Expr {
    type Err = RealsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Expr::parse(s)
    }
}

/// Parses the exact form `p/q+r/s*sqrt2` (any algebraic expression is accepted).
impl FromStr for QSqrt2 {
    type Err = RealsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Expr::parse(s)?.eval_exact()?.ok_or(RealsError::NotExact)
    }
}

fn fmt_lit(r: &BigRat) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    // Literals come from decimal text, so the denominator divides a power of ten.
    let mut places = 0usize;
    let mut scaled = r.clone();
    let ten = BigRat::from_integer(BigInt::from(10));
    while !scaled.is_integer() && places < 4096 {
        scaled *= &ten;
        places += 1;
    }
    if scaled.is_integer() {
        crate::exact::decimal_from_scaled(&scaled.to_integer(), places)
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

/// Fully parenthesized rendering that reparses to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Lit(r) => write!(f, "{}", fmt_lit(r)),
            Expr::Pi => write!(f, "pi"),
            Expr::E => write!(f, "e"),
            Expr::Sqrt2 => write!(f, "sqrt2"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a}+{b})"),
            Expr::Sub(a, b) => write!(f, "({a}-{b})"),
            Expr::Mul(a, b) => write!(f, "({a}*{b})"),
            Expr::Div(a, b) => write!(f, "({a}/{b})"),
            Expr::Pow(a, n) => write!(f, "({a}^{n})"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> RealsError {
        RealsError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, RealsError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, RealsError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, RealsError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected non-negative integer exponent"));
            }
            let n: u32 = digits
                .parse()
                .ok()
                .filter(|n| *n <= MAX_EXPONENT)
                .ok_or(RealsError::Parse {
                    pos: start,
                    msg: format!("exponent must be at most {MAX_EXPONENT}"),
                })?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn base(&mut self) -> Result<Expr, RealsError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                match &self.src[start..self.pos] {
                    "pi" => Ok(Expr::Pi),
                    "e" => Ok(Expr::E),
                    "sqrt2" => Ok(Expr::Sqrt2),
                    other => Err(RealsError::Parse {
                        pos: start,
                        msg: format!("unknown identifier '{other}'"),
                    }),
                }
            }
            Some(_) => Err(self.error("expected number, constant or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Expr, RealsError> {
        let int = self.digits().to_string();
        let mut frac = String::new();
        if self.peek() == Some('.') {
            self.pos += 1;
            frac = self.digits().to_string();
            if frac.is_empty() {
                return Err(self.error("expected digits after '.'"));
            }
        }
        let numer: BigInt = format!("{int}{frac}").parse().expect("ascii digits");
        let denom = BigInt::from(10u32).pow(frac.len() as u32);
        let value = if denom.is_one() {
            BigRat::from_integer(numer)
        } else {
            BigRat::new(numer, denom)
        };
        debug_assert!(!value.is_zero() || int.chars().all(|c| c == '0'));
        Ok(Expr::Lit(value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_pow2;

    fn rat(p: i64, q: i64) -> BigRat {
        BigRat::new(p.into(), q.into())
    }

    #[test]
    fn decimal_literal_is_exact() {
        let e = Expr::parse("0.2928").unwrap();
        assert_eq!(e, Expr::Lit(rat(2928, 10000)));
    }

    #[test]
    fn precedence_and_unary_minus() {
        let e = Expr::parse("1 - pi^2/e^3").unwrap();
        assert_eq!(e.to_string(), "(1-((pi^2)/(e^3)))");
        let n = Expr::parse("-2^2").unwrap().eval_exact().unwrap().unwrap();
        assert_eq!(n, QSqrt2::from_integer(-4));
    }

    #[test]
    fn parse_errors_carry_position() {
        match Expr::parse("1 + foo") {
            Err(RealsError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(Expr::parse("(1+2"), Err(RealsError::Parse { .. })));
        assert!(matches!(Expr::parse("2^"), Err(RealsError::Parse { .. })));
        assert!(matches!(Expr::parse("1 2"), Err(RealsError::Parse { pos: 2, .. })));
    }

    #[test]
    fn exact_routing() {
        let x: QSqrt2 = "3/2+1/2*sqrt2".parse().unwrap();
        assert_eq!(x, QSqrt2::new(rat(3, 2), rat(1, 2)));
        assert_eq!(Expr::parse("1-pi").unwrap().eval_exact().unwrap(), None);
        assert!(matches!("1/(sqrt2-sqrt2)".parse::<QSqrt2>(), Err(RealsError::DivisionByZero)));
        assert!(matches!("pi".parse::<QSqrt2>(), Err(RealsError::NotExact)));
    }

    #[test]
    fn corollary_offset_value() {
        let e = Expr::parse("1-pi^2/e^3").unwrap();
        let iv = eval_expr(&e, 32).unwrap();
        assert!(iv.lo() >= &rat(5_086_213, 10_000_000));
        assert!(iv.hi() < &rat(5_086_214, 10_000_000));
    }

    #[test]
    fn sqrt2_half() {
        let iv = eval_expr(&Expr::parse("sqrt2/2").unwrap(), 32).unwrap();
        assert!(iv.lo() >= &rat(7_071_067, 10_000_000) && iv.hi() < &rat(7_071_068, 10_000_000));
    }

    #[test]
    fn cancellation_stays_sound() {
        let e = super::super::constants::const_e(64);
        let diff = e.sub(&e);
        assert!(diff.contains_zero());
        assert_eq!(diff.width(), e.width() * BigRat::from_integer(2.into()));
        let iv = eval_expr(&Expr::parse("e-e").unwrap(), 64).unwrap();
        assert!(iv.contains_zero());
        assert!(iv.width() <= rat_pow2(-63));
    }

    #[test]
    fn singular_division_is_an_error() {
        let e = Expr::parse("1/(pi-pi)").unwrap();
        assert!(matches!(eval_expr(&e, 16), Err(RealsError::DivisionByZero)));
    }

    #[test]
    fn exact_text_roundtrip() {
        let x = QSqrt2::half_int(-1, -1);
        assert_eq!(x.to_string().parse::<QSqrt2>().unwrap(), x);
        assert_eq!(Expr::from_exact(&x).eval_exact().unwrap().unwrap(), x);
    }
}
