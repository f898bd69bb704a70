//! Exact number types: dyadic rationals (`m * 2^e`) and general rationals.

use std::cmp::Ordering;
use std::fmt;

use super::bigint::{BigInt, BigUint};
use crate::error::MwError;

/// Exact value `mant * 2^exp`. Every finite binary float and every finite
/// sum of binary floats is a dyadic rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic::default()
    }

    /// Builds `mant * 2^exp` and strips trailing zero bits so equal values
    /// compare equal structurally.
    pub fn new(mant: BigInt, exp: i64) -> Self {
        match mant.magnitude().trailing_zeros() {
            None => Dyadic::zero(),
            Some(0) => Dyadic { mant, exp },
            Some(tz) => Dyadic {
                mant: BigInt::from_parts(mant.is_negative(), mant.magnitude().shr(tz)),
                exp: exp + tz as i64,
            },
        }
    }

    /// Exact conversion; panics on NaN or infinity.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite value has no exact oracle form");
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let neg = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        Dyadic::new(BigInt::from_parts(neg, BigUint::from_u64(m)), e)
    }

    pub fn from_i64(x: i64) -> Self {
        Dyadic::new(BigInt::from_i64(x), 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            mant: self.mant.neg(),
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = self.mant.shl((self.exp - e) as u64);
        let b = other.mant.shl((other.exp - e) as u64);
        Dyadic::new(a.add(&b), e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(self.mant.mul(&other.mant), self.exp + other.exp)
    }

    /// Multiplies by `2^n`.
    pub fn scale2(&self, n: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + n,
        }
    }

    /// Exponent of the leading bit: `2^top <= |self| < 2^(top+1)`.
    pub fn top_exponent(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.magnitude().bits() as i64 - 1)
        }
    }

    pub fn cmp_abs(&self, other: &Dyadic) -> Ordering {
        self.abs().cmp(&other.abs())
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(self.mant.shl(self.exp as u64))
        } else {
            Rational::new_unchecked(self.mant.clone(), BigUint::one().shl((-self.exp) as u64))
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.sub(other);
        match d.mant.signum() {
            0 => Ordering::Equal,
            s if s < 0 => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Reduced fraction `num / den` with `den > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    num: BigInt,
    den: BigUint,
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl Rational {
    pub fn zero() -> Self {
        Rational {
            num: BigInt::zero(),
            den: BigUint::one(),
        }
    }

    pub fn one() -> Self {
        Rational::from_i64(1)
    }

    pub fn from_integer(n: BigInt) -> Self {
        Rational {
            num: n,
            den: BigUint::one(),
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from_i64(n))
    }

    pub fn from_f64(x: f64) -> Self {
        Dyadic::from_f64(x).to_rational()
    }

    /// `n / d` for machine integers; panics when `d == 0`.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        let num = BigInt::from_i64(if d < 0 { -n } else { n });
        Rational::new(num, BigUint::from_u64(d.unsigned_abs()))
    }

    /// Already-reduced inputs (used for power-of-two denominators).
    fn new_unchecked(num: BigInt, den: BigUint) -> Self {
        Rational { num, den }.reduced()
    }

    pub fn new(num: BigInt, den: BigUint) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Rational { num, den }.reduced()
    }

    fn reduced(self) -> Self {
        if self.num.is_zero() {
            return Rational::zero();
        }
        if self.den.is_one() {
            return self;
        }
        // power-of-two denominators reduce by trailing zeros alone
        let g = if self.den.is_power_of_two() {
            let tz = self
                .num
                .magnitude()
                .trailing_zeros()
                .unwrap()
                .min(self.den.trailing_zeros().unwrap());
            BigUint::one().shl(tz)
        } else {
            BigUint::gcd(self.num.magnitude(), &self.den)
        };
        if g.is_one() {
            return self;
        }
        let (n, _) = self.num.magnitude().divrem(&g);
        let (d, _) = self.den.divrem(&g);
        Rational {
            num: BigInt::from_parts(self.num.is_negative(), n),
            den: d,
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn neg(&self) -> Rational {
        Rational {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn abs(&self) -> Rational {
        Rational {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Rational) -> Rational {
        if self.den == other.den {
            return Rational::new(self.num.add(&other.num), self.den.clone());
        }
        if self.den.is_power_of_two() && other.den.is_power_of_two() {
            let (lo, hi) = if self.den < other.den {
                (self, other)
            } else {
                (other, self)
            };
            let shift = hi.den.bits() - lo.den.bits();
            let num = lo.num.shl(shift).add(&hi.num);
            return Rational::new(num, hi.den.clone());
        }
        let d1 = BigInt::from_parts(false, self.den.clone());
        let d2 = BigInt::from_parts(false, other.den.clone());
        let num = self.num.mul(&d2).add(&other.num.mul(&d1));
        Rational::new(num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &Rational) -> Rational {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Rational) -> Rational {
        Rational::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn recip(&self) -> Result<Rational, MwError> {
        if self.is_zero() {
            return Err(MwError::DivisionByZero);
        }
        Ok(Rational::new(
            BigInt::from_parts(self.num.is_negative(), self.den.clone()),
            self.num.magnitude().clone(),
        ))
    }

    pub fn div(&self, other: &Rational) -> Result<Rational, MwError> {
        Ok(self.mul(&other.recip()?))
    }

    /// `10^k` for any integer `k`.
    pub fn pow10(k: i64) -> Rational {
        let p = BigUint::pow_small(10, k.unsigned_abs() as u32);
        if k >= 0 {
            Rational::from_integer(BigInt::from_parts(false, p))
        } else {
            Rational::new(BigInt::from_i64(1), p)
        }
    }

    /// Exact dyadic form when the denominator is a power of two.
    pub fn to_dyadic(&self) -> Option<Dyadic> {
        if !self.den.is_power_of_two() {
            return None;
        }
        let k = self.den.trailing_zeros().unwrap() as i64;
        Some(Dyadic::new(self.num.clone(), -k))
    }

    /// Floor of `log10(|self|)`; `None` for zero.
    pub fn decimal_exponent(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let a = self.abs();
        // estimate from bit lengths, then correct
        let bits = a.num.magnitude().bits() as i64 - a.den.bits() as i64;
        let mut e = ((bits as f64) * std::f64::consts::LOG10_2).floor() as i64 - 1;
        while Rational::pow10(e + 1) <= a {
            e += 1;
        }
        while Rational::pow10(e) > a {
            e -= 1;
        }
        Some(e)
    }

    /// Round-half-even to the nearest integer.
    pub fn round_to_integer(&self) -> BigInt {
        let (q, r) = self.num.magnitude().divrem(&self.den);
        let twice = r.shl(1);
        let up = match twice.cmp(&self.den) {
            Ordering::Greater => true,
            Ordering::Equal => q.is_odd(),
            Ordering::Less => false,
        };
        let q = if up { q.add_small(1) } else { q };
        BigInt::from_parts(self.num.is_negative(), q)
    }

    /// Scientific notation with `digits` significant digits, rounded to
    /// nearest: `-d.ddde±X`.
    pub fn to_scientific(&self, digits: usize) -> String {
        let digits = digits.max(1);
        let Some(mut e) = self.decimal_exponent() else {
            return format!("{}e+0", if digits > 1 { format!("0.{}", "0".repeat(digits - 1)) } else { "0".into() });
        };
        let a = self.abs();
        let mut m = a.mul(&Rational::pow10(digits as i64 - 1 - e)).round_to_integer();
        let limit = BigUint::pow_small(10, digits as u32);
        if *m.magnitude() >= limit {
            e += 1;
            m = a.mul(&Rational::pow10(digits as i64 - 1 - e)).round_to_integer();
        }
        let ds = m.magnitude().to_decimal_string();
        let mut out = String::new();
        if self.is_negative() {
            out.push('-');
        }
        out.push_str(&ds[..1]);
        if ds.len() > 1 {
            out.push('.');
            out.push_str(&ds[1..]);
        }
        out.push_str(&format!("e{}{}", if e < 0 { '-' } else { '+' }, e.abs()));
        out
    }

    /// Parses `[+-]digits[.digits][e[+-]digits]` exactly.
    pub fn parse_decimal(s: &str) -> Result<Rational, MwError> {
        let bad = || MwError::Parse(s.to_string());
        let t = s.trim();
        let (neg, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let (mantissa, exp) = match body.find(['e', 'E']) {
            Some(i) => {
                let e: i64 = body[i + 1..].parse().map_err(|_| bad())?;
                (&body[..i], e)
            }
            None => (body, 0),
        };
        let (int_part, frac_part) = match mantissa.find('.') {
            Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
            None => (mantissa, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        let all = format!("{int_part}{frac_part}");
        let digits = if all.is_empty() { "0".to_string() } else { all };
        let n = BigUint::from_decimal_str(&digits).ok_or_else(bad)?;
        if exp.abs() > 100_000 {
            return Err(bad());
        }
        let r = Rational::from_integer(BigInt::from_parts(neg, n))
            .mul(&Rational::pow10(exp - frac_part.len() as i64));
        Ok(r)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        let l = self
            .num
            .mul(&BigInt::from_parts(false, other.den.clone()));
        let r = other.num.mul(&BigInt::from_parts(false, self.den.clone()));
        l.cmp(&r)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_add_exactly() {
        let a = Rational::from_ratio(1, 3);
        let b = Rational::from_ratio(1, 6);
        assert_eq!(a.add(&b), Rational::from_ratio(1, 2));
        assert_eq!(a.sub(&a), Rational::zero());
    }

    #[test]
    fn add_then_subtract_is_identity() {
        let a = Rational::from_ratio(-7, 13);
        let b = Rational::from_f64(1e-300);
        assert_eq!(a.add(&b).sub(&b), a);
    }

    #[test]
    fn dyadic_from_f64_is_exact() {
        let d = Dyadic::from_f64(0.75);
        assert_eq!(d.mantissa(), &BigInt::from_i64(3));
        assert_eq!(d.exponent(), -2);
        let tiny = Dyadic::from_f64(f64::from_bits(1));
        assert_eq!(tiny.exponent(), -1074);
        assert_eq!(Dyadic::from_f64(-8.0).to_rational(), Rational::from_i64(-8));
    }

    #[test]
    fn dyadic_ordering() {
        let a = Dyadic::from_f64(1.5);
        let b = Dyadic::from_f64(-2.0);
        assert!(a > b);
        assert_eq!(a.cmp_abs(&b), Ordering::Less);
        assert_eq!(a.top_exponent(), Some(0));
    }

    #[test]
    fn scientific_formatting() {
        assert_eq!(Rational::from_ratio(1, 3).to_scientific(5), "3.3333e-1");
        assert_eq!(Rational::from_ratio(2, 3).to_scientific(3), "6.67e-1");
        assert_eq!(Rational::from_i64(-9995).to_scientific(3), "-1.00e+4");
        assert_eq!(Rational::from_i64(1).to_scientific(1), "1e+0");
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(Rational::parse_decimal("1.0").unwrap(), Rational::one());
        assert_eq!(Rational::parse_decimal("-2.5e-1").unwrap(), Rational::from_ratio(-1, 4));
        assert_eq!(Rational::parse_decimal(".5").unwrap(), Rational::from_ratio(1, 2));
        assert_eq!(Rational::parse_decimal("12E2").unwrap(), Rational::from_i64(1200));
        assert!(Rational::parse_decimal("abc").is_err());
        assert!(Rational::parse_decimal("1.2.3").is_err());
        assert!(Rational::parse_decimal("").is_err());
        assert!(Rational::parse_decimal("1e").is_err());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(Rational::one().div(&Rational::zero()).is_err());
    }
}
