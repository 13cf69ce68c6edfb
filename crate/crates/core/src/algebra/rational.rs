//! Exact rational scalars.
//!
//! The ground field is fixed to the rationals. Values are always kept in
//! lowest terms with a positive denominator by `num_rational`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses the textual form used throughout the JSON interfaces: an optional
/// minus sign, a decimal integer, and an optional `/denominator`.
///
/// Decimal points, exponents, signs on the denominator and a zero
/// denominator are rejected.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !den.is_none_or(digits) {
        return None;
    }
    let mut num: BigInt = num.parse().ok()?;
    if neg {
        num = -num;
    }
    let den: BigInt = match den {
        Some(d) => d.parse().ok()?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Canonical text: `"-4/3"`, `"7"`, `"0"`.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub(crate) fn is_negative(value: &Rational) -> bool {
    value.is_negative()
}
