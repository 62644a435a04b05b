//! Exact rational coordinates and their text format.
//!
//! Accepted forms, with no embedded whitespace:
//!
//! * `p/q` with an optional leading sign, `q != 0` (`-3/4`, `+10/6`)
//! * decimal literals with optional exponent (`2`, `-0.125`, `.5`, `1e-12`)
//!
//! Decimals are read exactly: `0.1` is `1/10`, not the nearest binary float.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// Decimal exponents beyond this are rejected rather than expanded.
const MAX_EXPONENT: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty number")]
    Empty,
    #[error("invalid number {0:?}")]
    Invalid(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("exponent out of range in {0:?}")]
    ExponentRange(String),
}

fn all_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let invalid = || ParseRationalError::Invalid(text.to_string());
    let (negative, body) = match text.as_bytes()[0] {
        b'-' => (true, &text[1..]),
        b'+' => (false, &text[1..]),
        _ => (false, text),
    };
    let value = if let Some((num, den)) = body.split_once('/') {
        if !all_digits(num) || !all_digits(den) {
            return Err(invalid());
        }
        let den: BigInt = den.parse().map_err(|_| invalid())?;
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(text.to_string()));
        }
        BigRational::new(num.parse().map_err(|_| invalid())?, den)
    } else {
        parse_decimal(body).ok_or_else(invalid)??
    };
    Ok(if negative { -value } else { value })
}

/// Unsigned decimal with optional fraction and exponent. `None` on bad syntax.
fn parse_decimal(body: &str) -> Option<Result<Rational, ParseRationalError>> {
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], Some(&body[i + 1..])),
        None => (body, None),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !(int_part.is_empty() || all_digits(int_part))
        || !(frac_part.is_empty() || all_digits(frac_part))
    {
        return None;
    }
    let exp: i64 = match exponent {
        None => 0,
        Some(e) => {
            let digits = e.strip_prefix(['+', '-']).unwrap_or(e);
            if !all_digits(digits) {
                return None;
            }
            match e.parse::<i64>() {
                Ok(v) => v,
                Err(_) => return Some(Err(ParseRationalError::ExponentRange(body.to_string()))),
            }
        }
    };
    let digits = format!("{int_part}{frac_part}");
    let mantissa: BigInt = digits.parse().ok()?;
    let scale = exp - frac_part.len() as i64;
    if scale.unsigned_abs() > MAX_EXPONENT as u64 {
        return Some(Err(ParseRationalError::ExponentRange(body.to_string())));
    }
    let ten = BigInt::from(10u32);
    let power: BigInt = Pow::pow(&ten, scale.unsigned_abs() as u32);
    Some(Ok(if scale >= 0 {
        BigRational::from_integer(mantissa * power)
    } else {
        BigRational::new(mantissa, power)
    }))
}

/// `p/q` in lowest terms, or just `p` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Correctly rounded (nearest, ties to even) conversion to `f64`.
pub fn to_f64(q: &Rational) -> f64 {
    // num-rational divides with a sticky remainder bit, which rounds correctly
    q.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite float; `None` for NaN and infinities.
pub fn from_f64(x: f64) -> Option<Rational> {
    if x == 0.0 {
        return Some(Rational::zero());
    }
    BigRational::from_float(x)
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
