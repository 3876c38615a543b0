//! Exact rational scalars and parsing helpers.
//!
//! All certificates in this crate bottom out in [`Rational`] arithmetic;
//! decimal constants such as `1.7` or `0.284` are parsed as exact fractions
//! (`17/10`, `284/1000`) and never rounded through floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

pub type Rational = BigRational;

/// Shorthand for a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("cannot parse {0:?} as an exact rational")]
pub struct ParseRationalError(pub String);

/// Parses `"a/b"`, integers and decimal literals (`"-1.75"`, `"3e-4"`)
/// as exact rationals.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    let err = || ParseRationalError(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    // Decimal with optional exponent: m.f e k
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, i64::from_str(e.trim()).map_err(|_| err())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    let digits = format!(
        "{}{}",
        if int_part.is_empty() { "0" } else { int_part },
        frac_part
    );
    let n = BigInt::from_str(&digits).map_err(|_| err())?;
    let scale = frac_part.len() as i64 - exp;
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        Rational::new(n, ten.pow(scale as u32))
    } else {
        Rational::from_integer(n * ten.pow((-scale) as u32))
    };
    Ok(r)
}

/// Nearest `f64` (for reporting only; never feeds a verdict).
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back on a scaled division when the parts overflow f64.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY * sign_f(r));
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

fn sign_f(r: &Rational) -> f64 {
    if r.is_negative() {
        -1.0
    } else {
        1.0
    }
}

/// Integer power with negative-exponent support (`base != 0` when `e < 0`).
pub fn pow_i(base: &Rational, e: i64) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    let mut acc = Rational::one();
    let mut b = if e < 0 { base.recip() } else { base.clone() };
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        k >>= 1;
    }
    acc
}

/// Smallest integer `>= r`.
pub fn ceil_i(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("9/5").unwrap(), rat(9, 5));
        assert_eq!(parse_rational("-1.75").unwrap(), rat(-7, 4));
        assert_eq!(parse_rational("1.7").unwrap(), rat(17, 10));
        assert_eq!(parse_rational("3e-4").unwrap(), rat(3, 10000));
        assert_eq!(parse_rational("0.284").unwrap(), rat(284, 1000));
        assert_eq!(parse_rational("38/15").unwrap(), rat(38, 15));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn integer_powers() {
        assert_eq!(pow_i(&rat(2, 3), 3), rat(8, 27));
        assert_eq!(pow_i(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(pow_i(&rat(5, 1), 0), int(1));
    }
}
