//! Exact rational numbers and their text form.
//!
//! Terminating decimals (`0.7`, `-1.25e-3`) and fractions (`20/3`) parse
//! exactly. Formatting uses a decimal when the denominator has no prime
//! factors other than 2 and 5 and `p/q` otherwise, so every rendered value
//! parses back to the identical rational.

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rational = BigRational;

/// `numer / denom` as an exact rational.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

pub fn parse_rational(input: &str) -> Result<Rational> {
    let err = || Error::Parse {
        what: "rational",
        input: input.to_string(),
    };
    let s = input.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_decimal(num.trim()).ok_or_else(err)?;
        let d = parse_decimal(den.trim()).ok_or_else(err)?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(n / d);
    }
    parse_decimal(s).ok_or_else(err)
}

const MAX_EXPONENT: i32 = 4096;

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    if exponent.abs() > MAX_EXPONENT {
        return None;
    }
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole
        .bytes()
        .chain(frac.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let all: String = format!("{whole}{frac}");
    let mut value =
        Rational::from_integer(all.parse::<BigInt>().unwrap_or_else(|_| BigInt::zero()));
    let scale = exponent - frac.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num::pow(ten, scale as usize);
    } else {
        value /= num::pow(ten, (-scale) as usize);
    }
    Some(if negative { -value } else { value })
}

/// Renders `x` so that [`parse_rational`] recovers it exactly.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        return x.numer().to_string();
    }
    let mut den = x.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0usize, 0usize);
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", x.numer(), x.denom());
    }
    let places = twos.max(fives);
    let scaled = x * Rational::from_integer(num::pow(BigInt::from(10), places));
    let digits = scaled.to_integer().abs().to_string();
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (whole, frac) = padded.split_at(padded.len() - places);
    let sign = if x.numer().sign() == Sign::Minus {
        "-"
    } else {
        ""
    };
    format!("{sign}{whole}.{frac}")
}

/// Closest rational to a finite float, exact in binary.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.7").unwrap(), ratio(7, 10));
        assert_eq!(parse_rational("20").unwrap(), int(20));
        assert_eq!(parse_rational("-1.25e-3").unwrap(), ratio(-1, 800));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("3e2").unwrap(), int(300));
    }

    #[test]
    fn parses_fractions() {
        assert_eq!(parse_rational("20/3").unwrap(), ratio(20, 3));
        assert_eq!(parse_rational("0.5/0.25").unwrap(), int(2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1/0", "1..2", "--1", "1e", ".", "1e999999999"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formats_terminating_as_decimal() {
        assert_eq!(format_rational(&ratio(7, 10)), "0.7");
        assert_eq!(format_rational(&ratio(-1, 800)), "-0.00125");
        assert_eq!(format_rational(&ratio(20, 3)), "20/3");
        assert_eq!(format_rational(&int(7)), "7");
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(n in -100_000i64..100_000, d in 1i64..10_000) {
            let x = ratio(n, d);
            prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
        }
    }
}
