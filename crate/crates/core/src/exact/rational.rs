use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact rational scalar. `BigRational` keeps values reduced with a positive
/// denominator after every operation.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses the exact encodings `"p"` and `"p/q"` (optional leading sign on `p`).
///
/// Decimal and exponent notations are rejected so that no value can enter the
/// system through a lossy representation.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let bad = || Error::Parse(format!("`{text}` is not an exact rational (expected \"p\" or \"p/q\")"));
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (trimmed, None),
    };
    let int = |s: &str, allow_sign: bool| -> Option<BigInt> {
        let digits = if allow_sign { s.strip_prefix(['-', '+']).unwrap_or(s) } else { s };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse::<BigInt>().ok()
    };
    let n = int(num, true).ok_or_else(bad)?;
    let d = match den {
        Some(d) => int(d, false).ok_or_else(bad)?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::Parse(format!("`{text}` has a zero denominator")));
    }
    Ok(Rational::new(n, d))
}

/// Converts an exact rational to a machine integer when it is one.
pub fn to_integer(value: &Rational) -> Option<i64> {
    if !value.is_integer() {
        return None;
    }
    i64::try_from(value.to_integer()).ok()
}

/// Nonnegative integer view, used where a rational is known to be a dimension.
pub fn to_dimension(value: &Rational) -> Option<u64> {
    if value.is_negative() {
        return None;
    }
    to_integer(value).map(|v| v as u64)
}
