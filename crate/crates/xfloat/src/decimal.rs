//! Exact decimal conversion through rationals.
//!
//! Every backend value is a finite sum of doubles, hence an exact dyadic
//! rational. Formatting rounds that rational to the requested number of
//! significant digits (ties away from zero), so output is deterministic and
//! independent of the backend's internal representation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Real;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Empty,
    Invalid(String),
    Radix(u32),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Empty => write!(f, "empty number"),
            ParseError::Invalid(s) => write!(f, "invalid decimal number `{s}`"),
            ParseError::Radix(r) => write!(f, "unsupported radix {r}"),
        }
    }
}

impl std::error::Error for ParseError {}

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), e as usize)
}

/// Parses `[+-]ddd[.ddd][e[+-]ddd]` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseError::Empty);
    }
    let invalid = || ParseError::Invalid(s.to_string());
    let (neg, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => (
            &body[..i],
            body[i + 1..].parse::<i32>().map_err(|_| invalid())?,
        ),
        None => (body, 0),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(invalid());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(invalid());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(invalid)?;
    if neg {
        value = -value;
    }
    let scale = exponent - frac_part.len() as i32;
    let r = if scale >= 0 {
        BigRational::from_integer(value * pow10(scale as u32))
    } else {
        BigRational::new(value, pow10((-scale) as u32))
    };
    Ok(r)
}

pub fn parse<T: Real>(s: &str) -> Result<T, ParseError> {
    parse_rational(s).map(|r| T::from_rational(&r))
}

/// Decimal digits of `|r|` rounded to `digits` significant digits, with the
/// decimal exponent of the leading digit.
fn round_digits(abs: &BigRational, digits: usize) -> (String, i32) {
    let lead = abs.to_f64().unwrap_or(1.0);
    let mut exp10 = if lead.is_finite() && lead > 0.0 {
        lead.log10().floor() as i32
    } else {
        0
    };
    // fix the estimate so that 10^e <= abs < 10^(e+1)
    let ten = BigRational::from_integer(BigInt::from(10));
    let scale_of = |e: i32| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(pow10(e as u32))
        } else {
            BigRational::new(BigInt::one(), pow10((-e) as u32))
        }
    };
    while &scale_of(exp10) > abs {
        exp10 -= 1;
    }
    while &(scale_of(exp10) * &ten) <= abs {
        exp10 += 1;
    }
    loop {
        let shift = digits as i32 - 1 - exp10;
        let scaled = abs * scale_of(shift);
        let (q, r) = scaled.numer().div_rem(scaled.denom());
        let twice = r * 2;
        let n = if twice >= *scaled.denom() { q + 1 } else { q };
        let s = n.to_string();
        if s.len() > digits {
            exp10 += 1;
            continue;
        }
        return (s, exp10);
    }
}

/// Renders `x` with `digits` significant digits; trailing zeros are dropped.
///
/// Plain notation is used for decimal exponents in `[-5, digits)`, scientific
/// notation otherwise. The output parses back to within half a unit in the
/// last printed digit.
pub fn format_sig<T: Real>(x: T, digits: usize) -> String {
    let lead = x.hi();
    if lead.is_nan() {
        return "NaN".to_string();
    }
    if lead.is_infinite() {
        return if lead > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    format_rational(&x.to_rational(), digits)
}

pub fn format_rational(r: &BigRational, digits: usize) -> String {
    let digits = digits.max(1);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let (body, exp10) = round_digits(&r.abs(), digits);
    let body = body.trim_end_matches('0');
    let body = if body.is_empty() { "0" } else { body };
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if (-5..digits as i32).contains(&exp10) {
        if exp10 < 0 {
            out.push_str("0.");
            for _ in 0..(-exp10 - 1) {
                out.push('0');
            }
            out.push_str(body);
        } else {
            let int_len = exp10 as usize + 1;
            if body.len() <= int_len {
                out.push_str(body);
                for _ in body.len()..int_len {
                    out.push('0');
                }
            } else {
                out.push_str(&body[..int_len]);
                out.push('.');
                out.push_str(&body[int_len..]);
            }
        }
    } else {
        out.push_str(&body[..1]);
        if body.len() > 1 {
            out.push('.');
            out.push_str(&body[1..]);
        }
        out.push('e');
        out.push_str(&exp10.to_string());
    }
    out
}
