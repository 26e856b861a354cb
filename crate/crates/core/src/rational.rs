//! Exact rationals and their JSON rendering.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Converts a float to the rational with the same shortest decimal
/// representation, so `0.1` becomes `1/10` rather than its binary expansion.
pub fn from_f64(x: f64) -> Result<Rational> {
    if !x.is_finite() {
        return Err(Error::InvalidParameters(format!("cannot convert {x} to a rational")));
    }
    parse_decimal(&format!("{x}")).ok_or_else(|| Error::InvalidParameters(format!("cannot convert {x} to a rational")))
}

/// Parses `-?digits(.digits)?`.
pub fn parse_decimal(text: &str) -> Option<Rational> {
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{whole}{frac}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    let value = Rational::new(numer, denom);
    Some(if negative { -value } else { value })
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn dot(a: &[Rational; 4], b: &[Rational; 4]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// A rational rendered as `{"num", "den", "fraction", "decimal"}`.
///
/// Numerator and denominator are JSON integers when they fit in 64 bits and
/// strings otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: serde_json::Value,
    pub den: serde_json::Value,
    pub fraction: String,
    pub decimal: f64,
}

fn bigint_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(n.to_string()),
    }
}

impl From<&Rational> for RationalJson {
    fn from(x: &Rational) -> Self {
        let fraction = if x.denom().is_one() { x.numer().to_string() } else { format!("{}/{}", x.numer(), x.denom()) };
        RationalJson { num: bigint_json(x.numer()), den: bigint_json(x.denom()), fraction, decimal: to_f64(x) }
    }
}

impl RationalJson {
    pub fn to_rational(&self) -> Option<Rational> {
        let parse = |v: &serde_json::Value| -> Option<BigInt> {
            match v {
                serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
                serde_json::Value::String(s) => s.parse().ok(),
                _ => None,
            }
        };
        let den = parse(&self.den)?;
        if den.is_zero() {
            return None;
        }
        Some(Rational::new(parse(&self.num)?, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_conversion_is_exact_in_base_ten() {
        assert_eq!(from_f64(0.1).unwrap(), ratio(1, 10));
        assert_eq!(from_f64(-20.0).unwrap(), int(-20));
        assert_eq!(from_f64(10.625).unwrap(), ratio(85, 8));
        assert_eq!(from_f64(1e-20).unwrap(), Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 20)));
        assert!(from_f64(f64::NAN).is_err());
        assert_eq!(parse_decimal(".5"), Some(ratio(1, 2)));
        assert_eq!(parse_decimal("1e5"), None);
    }

    #[test]
    fn json_rendering() {
        let j = RationalJson::from(&ratio(58, 3));
        assert_eq!(j.fraction, "58/3");
        assert_eq!(j.num, serde_json::json!(58));
        assert!((j.decimal - 19.333333333333332).abs() < 1e-12);
        assert_eq!(j.to_rational(), Some(ratio(58, 3)));
        assert_eq!(RationalJson::from(&int(21)).fraction, "21");
    }
}
