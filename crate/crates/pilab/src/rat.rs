//! Exact rational scalars and the `p/q` string codec used by scenario files.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Scalar of the base field: an arbitrary-precision rational, always reduced,
/// denominator always positive (both guaranteed by `Ratio::new`).
pub type Rational = BigRational;

/// Shorthand for an integer scalar.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`. Panics on `d == 0`; only used with literal arguments.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in rational literal {0:?}")]
    ZeroDenominator(String),
}

/// Parses `"p"` or `"p/q"` with optional leading `-` on either component.
/// Rejects empty strings, stray characters, and zero denominators.
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let malformed = || RationalParseError::Malformed(s.to_string());
    let parse_int = |part: &str| -> Result<BigInt, RationalParseError> {
        let digits = part.strip_prefix('-').unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        part.parse::<BigInt>().map_err(|_| malformed())
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((num, den)) => {
            let n = parse_int(num)?;
            let d = parse_int(den)?;
            if d.is_zero() {
                return Err(RationalParseError::ZeroDenominator(s.to_string()));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Formats a rational as `"p"` when integral, `"p/q"` (q > 0) otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True when the value is a non-negative integer; returns it as `u64`.
pub fn as_u64(r: &Rational) -> Option<u64> {
    if r.denom().is_one() && !r.numer().is_negative() {
        u64::try_from(r.numer().clone()).ok()
    } else {
        None
    }
}
