//! Conversions between binary64 multiwords, oracle values and decimal text.

use std::fmt;
use std::str::FromStr;

use super::MultiWord;
use crate::error::MwError;
use crate::oracle::{self, BigFloat, OracleValue, Rational};

/// Digits printed by default: roughly the precision in decimal digits.
pub const fn default_digits(k: usize) -> usize {
    match k {
        2 => 34,
        3 => 49,
        _ => 64,
    }
}

/// Digits preserved by a decimal round trip, `floor(53 k log10 2) - 2`.
pub fn round_trip_digits(k: usize) -> usize {
    ((53 * k) as f64 * std::f64::consts::LOG10_2).floor() as usize - 2
}

impl<const K: usize> MultiWord<f64, K> {
    /// Exact value as a rational.
    pub fn to_oracle(&self) -> OracleValue {
        OracleValue::from_words(&self.0)
    }

    pub fn to_rational(&self) -> Rational {
        oracle::words_to_rational(&self.0)
    }

    pub fn to_bigfloat(&self) -> BigFloat {
        oracle::words_to_bigfloat(&self.0)
    }

    /// Nearest `K`-word value, built greedily one word at a time.
    pub fn from_rational(x: &Rational) -> Self {
        let w = oracle::rational_to_words(x, K);
        let mut c = [0.0; K];
        c.copy_from_slice(&w);
        MultiWord(c)
    }

    pub fn from_bigfloat(x: &BigFloat) -> Self {
        let w = oracle::bigfloat_to_words(x, K);
        let mut c = [0.0; K];
        c.copy_from_slice(&w);
        MultiWord(c)
    }

    pub fn from_oracle(x: &OracleValue) -> Self {
        match x {
            OracleValue::Exact(r) => Self::from_rational(r),
            OracleValue::Float(f) => Self::from_bigfloat(f),
        }
    }

    /// Parses `[+-]digits[.digits][e[+-]digits]`.
    pub fn from_decimal_str(s: &str) -> Result<Self, MwError> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "nan" => return Ok(Self::from_base(f64::NAN)),
            "inf" | "+inf" => return Ok(Self::from_base(f64::INFINITY)),
            "-inf" => return Ok(Self::from_base(f64::NEG_INFINITY)),
            _ => {}
        }
        Ok(Self::from_rational(&Rational::parse_decimal(t)?))
    }

    /// Scientific notation with `digits` significant digits.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let c0 = self.0[0];
        if !c0.is_finite() {
            return format!("{c0}");
        }
        if !self.is_finite() {
            return "nan".to_string();
        }
        self.to_rational().to_scientific(digits.max(1))
    }
}

impl<const K: usize> fmt::Display for MultiWord<f64, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(default_digits(K));
        f.write_str(&self.to_decimal_string(digits))
    }
}

impl<const K: usize> FromStr for MultiWord<f64, K> {
    type Err = MwError;

    fn from_str(s: &str) -> Result<Self, MwError> {
        Self::from_decimal_str(s)
    }
}

impl<const K: usize> From<f64> for MultiWord<f64, K> {
    fn from(x: f64) -> Self {
        Self::from_base(x)
    }
}
