//! Scalar abstraction shared by every algorithm in the crate.
//!
//! All geometry is written against [`Scalar`], an ordered field. The
//! exact instance is [`Rational`] (arbitrary precision); `f64` and `f32`
//! are provided for fast approximate runs such as warm starts and
//! benchmarks. Equality tests inside the solvers are exact comparisons, so
//! only exact scalars give certified answers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Arbitrary precision rational number, always in lowest terms.
pub type Rational = BigRational;

/// An ordered field usable as a coordinate type.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Num
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// `true` when `+ - * /` never round.
    const EXACT: bool;

    fn from_rational(r: &Rational) -> Self;

    /// Exact rational value of `self`, `None` for non-finite floats.
    fn to_rational(&self) -> Option<Rational>;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("every scalar type represents small integers")
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
}

macro_rules! impl_float_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_rational(r: &Rational) -> Self {
                r.to_f64().map(|v| v as $t).unwrap_or(<$t>::NAN)
            }

            fn to_rational(&self) -> Option<Rational> {
                Rational::from_float(*self)
            }

            fn from_ratio(num: i64, den: i64) -> Self {
                (num as f64 / den as f64) as $t
            }
        }
    )*};
}

impl_float_scalar!(f32, f64);

/// Converts a slice of exact values into another scalar type.
pub fn convert_slice<S: Scalar>(values: &[Rational]) -> Vec<S> {
    values.iter().map(S::from_rational).collect()
}

/// `10^-exp` as an exact rational.
pub fn pow10_inv(exp: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), exp as usize))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {literal:?}: {reason}")]
pub struct ParseRationalError {
    pub literal: String,
    pub reason: &'static str,
}

/// Parses `"p/q"`, integers and decimal literals (optionally with an
/// exponent) into an exact rational. Decimals are converted exactly, so
/// `"0.1"` becomes `1/10`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        literal: text.to_string(),
        reason,
    };
    let s = text.trim().replace('\u{2212}', "-");
    if s.is_empty() {
        return Err(err("empty literal"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| err("bad numerator"))?;
        let den = BigInt::from_str(den.trim()).map_err(|_| err("bad denominator"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(num, den));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = s[pos + 1..].parse().map_err(|_| err("bad exponent"))?;
            (&s[..pos], exp)
        }
        None => (s.as_str(), 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err("unexpected character"));
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer = BigInt::from_str_radix(&all_digits, 10).map_err(|_| err("bad digits"))?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i64;
    if scale.unsigned_abs() > 10_000 {
        return Err(err("exponent out of range"));
    }
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Decimal rendering for human-facing output only.
pub fn to_decimal_string(r: &Rational) -> String {
    match r.to_f64() {
        Some(v) => format!("{}", v),
        None => "nan".to_string(),
    }
}

/// Convenience constructor used heavily in tests and examples.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

/// Integer-valued rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-12").unwrap(), int(-12));
        assert_eq!(parse_rational(" 4/-8 ").unwrap(), rat(-1, 2));
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.1").unwrap(), rat(1, 10));
        assert_eq!(parse_rational("-0.773").unwrap(), rat(-773, 1000));
        assert_eq!(parse_rational("1.5e2").unwrap(), int(150));
        assert_eq!(parse_rational("25E-2").unwrap(), rat(1, 4));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("\u{2212}3").unwrap(), int(-3));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("-").is_err());
    }

    #[test]
    fn formats_in_lowest_terms() {
        assert_eq!(format_rational(&rat(182, 25)), "182/25");
        assert_eq!(format_rational(&rat(10, 5)), "2");
        assert_eq!(format_rational(&rat(-3, 5)), "-3/5");
    }

    #[test]
    fn float_round_trip_is_exact() {
        let r = 0.1f64.to_rational().unwrap();
        assert_eq!(f64::from_rational(&r), 0.1);
        assert!(f64::NAN.to_rational().is_none());
    }
}
