//! Exact rational helpers shared by every module.
//!
//! All quantities in this crate are [`Rational`]s (arbitrary-precision
//! normalized fractions). Text form is `p/q` or a bare integer literal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

pub type Rational = num_rational::BigRational;

/// `n/d` as a normalized rational. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact integer ceiling.
pub fn ceil(x: &Rational) -> BigInt {
    x.numer().div_ceil(x.denom())
}

pub fn is_integral(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Returns the value as `i64` when it is an integer that fits.
pub fn to_i64(x: &Rational) -> Option<i64> {
    if is_integral(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Canonical text form: `p/q`, or `p` when the denominator is 1.
pub fn format(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p/q` or an integer literal. Offsets in errors are relative to
/// `text` shifted by `base`.
pub fn parse_at(text: &str, base: usize) -> Result<Rational, ParseError> {
    let trimmed = text.trim();
    let lead = text.len() - text.trim_start().len();
    if trimmed.is_empty() {
        return Err(ParseError::new(base, "expected a rational number"));
    }
    let (num, den, den_off) = match trimmed.split_once('/') {
        Some((n, d)) => (n, Some(d), n.len() + 1),
        None => (trimmed, None, 0),
    };
    let numer: BigInt =
        num.trim().parse().map_err(|_| ParseError::new(base + lead, format!("invalid integer `{}`", num.trim())))?;
    let denom: BigInt = match den {
        Some(d) => d
            .trim()
            .parse()
            .map_err(|_| ParseError::new(base + lead + den_off, format!("invalid integer `{}`", d.trim())))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(ParseError::new(base + lead + den_off, "zero denominator"));
    }
    Ok(Rational::new(numer, denom))
}

pub fn parse(text: &str) -> Result<Rational, ParseError> {
    parse_at(text, 0)
}

pub fn is_positive(x: &Rational) -> bool {
    x.is_positive()
}
