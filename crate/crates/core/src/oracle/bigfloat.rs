//! Binary floating point with caller-chosen precision and
//! round-to-nearest-even on every operation.

use std::cmp::Ordering;

use super::bigint::{BigInt, BigUint};
use super::exact::{Dyadic, Rational};
use crate::error::MwError;

/// Oracle working precision in bits.
pub const ORACLE_BITS: u32 = 300;

/// `(-1)^neg * mant * 2^exp`. The mantissa is not kept at a fixed width;
/// each arithmetic operation rounds its result to the requested precision.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BigFloat {
    neg: bool,
    mant: BigUint,
    exp: i64,
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat::default()
    }

    pub fn one() -> Self {
        BigFloat::from_u64(1)
    }

    pub fn from_u64(x: u64) -> Self {
        BigFloat::from_parts(false, BigUint::from_u64(x), 0)
    }

    pub fn from_i64(x: i64) -> Self {
        BigFloat::from_parts(x < 0, BigUint::from_u64(x.unsigned_abs()), 0)
    }

    fn from_parts(neg: bool, mant: BigUint, exp: i64) -> Self {
        match mant.trailing_zeros() {
            None => BigFloat::zero(),
            Some(0) => BigFloat { neg, mant, exp },
            Some(tz) => BigFloat {
                neg,
                mant: mant.shr(tz),
                exp: exp + tz as i64,
            },
        }
    }

    pub fn from_f64(x: f64) -> Self {
        BigFloat::from_dyadic(&Dyadic::from_f64(x))
    }

    pub fn from_dyadic(d: &Dyadic) -> Self {
        BigFloat::from_parts(
            d.is_negative(),
            d.mantissa().magnitude().clone(),
            d.exponent(),
        )
    }

    pub fn to_dyadic(&self) -> Dyadic {
        Dyadic::new(BigInt::from_parts(self.neg, self.mant.clone()), self.exp)
    }

    pub fn to_rational(&self) -> Rational {
        self.to_dyadic().to_rational()
    }

    /// Correctly rounded conversion of an exact rational.
    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        if r.is_zero() {
            return BigFloat::zero();
        }
        let n = r.numer().magnitude();
        let d = r.denom();
        // quotient with at least prec + 2 bits, remainder folded into a sticky bit
        let shift = (prec as i64 + 2 + d.bits() as i64 - n.bits() as i64).max(0);
        let (q, rem) = n.shl(shift as u64).divrem(d);
        let q = q.shl(1);
        let q = if rem.is_zero() { q } else { q.add_small(1) };
        BigFloat::from_parts(r.is_negative(), q, -shift - 1).round(prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.neg
    }

    /// `2^top <= |self| < 2^(top+1)`.
    pub fn top_exponent(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.bits() as i64 - 1)
        }
    }

    pub fn neg(&self) -> Self {
        BigFloat::from_parts(!self.neg, self.mant.clone(), self.exp)
    }

    pub fn abs(&self) -> Self {
        BigFloat::from_parts(false, self.mant.clone(), self.exp)
    }

    /// Multiplies by `2^n` exactly.
    pub fn scale2(&self, n: i64) -> Self {
        BigFloat::from_parts(self.neg, self.mant.clone(), self.exp + n)
    }

    /// Rounds to `prec` significant bits, ties to even.
    pub fn round(&self, prec: u32) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let half = self.mant.bit(shift - 1);
        let sticky = self.mant.low_bits_nonzero(shift - 1);
        let mut m = self.mant.shr(shift);
        let mut e = self.exp + shift as i64;
        if half && (sticky || m.is_odd()) {
            m = m.add_small(1);
            if m.bits() > prec as u64 {
                m = m.shr(1);
                e += 1;
            }
        }
        BigFloat::from_parts(self.neg, m, e)
    }

    /// Exact sum, no rounding.
    pub fn add_exact(&self, other: &BigFloat) -> BigFloat {
        BigFloat::from_dyadic(&self.to_dyadic().add(&other.to_dyadic()))
    }

    pub fn add(&self, other: &BigFloat, prec: u32) -> BigFloat {
        if self.is_zero() {
            return other.round(prec);
        }
        if other.is_zero() {
            return self.round(prec);
        }
        let (big, small) = if self.top_exponent() >= other.top_exponent() {
            (self, other)
        } else {
            (other, self)
        };
        // When `small` sits entirely below both the rounding position and
        // the lowest bit of `big`, only its sign matters for rounding.
        let round_pos = big.top_exponent().unwrap() - prec as i64 + 1;
        let floor = round_pos.min(big.exp) - 2;
        if small.top_exponent().unwrap() < floor {
            let tiny = BigFloat::from_parts(small.neg, BigUint::one(), floor - 1);
            return big.add_exact(&tiny).round(prec);
        }
        big.add_exact(small).round(prec)
    }

    pub fn sub(&self, other: &BigFloat, prec: u32) -> BigFloat {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &BigFloat, prec: u32) -> BigFloat {
        BigFloat::from_parts(
            self.neg != other.neg,
            self.mant.mul(&other.mant),
            self.exp + other.exp,
        )
        .round(prec)
    }

    pub fn mul_i64(&self, k: i64, prec: u32) -> BigFloat {
        self.mul(&BigFloat::from_i64(k), prec)
    }

    pub fn div(&self, other: &BigFloat, prec: u32) -> Result<BigFloat, MwError> {
        if other.is_zero() {
            return Err(MwError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(BigFloat::zero());
        }
        let shift =
            (prec as i64 + 2 + other.mant.bits() as i64 - self.mant.bits() as i64).max(0) as u64;
        let (q, r) = self.mant.shl(shift).divrem(&other.mant);
        let q = q.shl(1);
        let q = if r.is_zero() { q } else { q.add_small(1) };
        Ok(BigFloat::from_parts(
            self.neg != other.neg,
            q,
            self.exp - other.exp - shift as i64 - 1,
        )
        .round(prec))
    }

    pub fn div_i64(&self, k: i64, prec: u32) -> BigFloat {
        self.div(&BigFloat::from_i64(k), prec)
            .expect("division by a nonzero integer")
    }

    pub fn sqrt(&self, prec: u32) -> Result<BigFloat, MwError> {
        if self.is_zero() {
            return Ok(BigFloat::zero());
        }
        if self.neg {
            return Err(MwError::Domain("square root of a negative value"));
        }
        // shift so the integer root has prec + 2 bits and the exponent is even
        let want = 2 * (prec as i64 + 2);
        let mut shift = (want - self.mant.bits() as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = self.mant.shl(shift as u64);
        let root = m.isqrt();
        let exact = root.mul(&root) == m;
        let root = root.shl(1);
        let root = if exact { root } else { root.add_small(1) };
        Ok(BigFloat::from_parts(false, root, (self.exp - shift) / 2 - 1).round(prec))
    }

    /// Correctly rounded to binary64 (normal range).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(53);
        let m = r.mant.to_u64().expect("53-bit mantissa fits") as f64;
        let v = scale_f64(m, r.exp);
        if r.neg {
            -v
        } else {
            v
        }
    }

    /// `log10(|self|)` to double precision; `-inf` for zero.
    pub fn log10_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let r = self.round(60);
        let bits = r.mant.bits() as i64;
        let frac = r.mant.to_u64().unwrap() as f64 / 2f64.powi(bits as i32);
        frac.log10() + (r.exp + bits) as f64 * std::f64::consts::LOG10_2
    }

    pub fn to_scientific(&self, digits: usize) -> String {
        self.to_rational().to_scientific(digits)
    }

    pub fn parse_decimal(s: &str, prec: u32) -> Result<BigFloat, MwError> {
        Ok(BigFloat::from_rational(&Rational::parse_decimal(s)?, prec))
    }
}

fn scale_f64(mut v: f64, mut e: i64) -> f64 {
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_dyadic().cmp(&other.to_dyadic())
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_ties_to_even() {
        // 0b1011 at 3 bits: tie between 0b101 and 0b110 -> even 0b110
        let x = BigFloat::from_u64(0b1011);
        assert_eq!(x.round(3), BigFloat::from_u64(0b1100));
        assert_eq!(BigFloat::from_u64(12), BigFloat::from_u64(3).scale2(2));
        let y = BigFloat::from_u64(0b1001);
        assert_eq!(y.round(3), BigFloat::from_u64(0b1000));
    }

    #[test]
    fn f64_round_trip() {
        for &v in &[1.0, -0.1, 1e300, 3.5e-300, std::f64::consts::PI] {
            assert_eq!(BigFloat::from_f64(v).to_f64(), v);
        }
    }

    #[test]
    fn sqrt_of_four_is_two() {
        assert_eq!(BigFloat::from_u64(4).sqrt(300).unwrap(), BigFloat::from_u64(2));
        assert!(BigFloat::from_i64(-1).sqrt(300).is_err());
    }

    #[test]
    fn sqrt5_squared_is_close_to_five() {
        let r = BigFloat::from_u64(5).sqrt(ORACLE_BITS).unwrap();
        // correctly rounded: agrees with a wider root rounded down to 300 bits
        let wide = BigFloat::from_u64(5).sqrt(2 * ORACLE_BITS).unwrap();
        assert_eq!(wide.round(ORACLE_BITS), r);
        let sq = r.mul(&r, 600);
        let diff = sq.sub(&BigFloat::from_u64(5), 600).abs();
        let rel = diff.div(&BigFloat::from_u64(5), 64).unwrap();
        assert!(rel < BigFloat::one().scale2(-298));
    }

    #[test]
    fn division_matches_rational() {
        let q = BigFloat::from_u64(1).div(&BigFloat::from_u64(3), 100).unwrap();
        let exact = BigFloat::from_rational(&Rational::from_ratio(1, 3), 100);
        assert_eq!(q, exact);
        assert!(BigFloat::one().div(&BigFloat::zero(), 10).is_err());
    }

    #[test]
    fn tiny_addend_rounds_like_exact_sum() {
        let big = BigFloat::one();
        let tiny = BigFloat::one().scale2(-5000);
        assert_eq!(big.add(&tiny, 53), BigFloat::one());
        assert_eq!(big.sub(&tiny, 53).to_f64(), 1.0);
        // directed consequence at a tie: 1 + 2^-53 is a tie, +tiny breaks it upwards
        let tie = BigFloat::one().add_exact(&BigFloat::one().scale2(-53));
        assert_eq!(tie.add(&tiny, 53).to_f64(), 1.0 + f64::EPSILON);
        assert_eq!(tie.sub(&tiny, 53).to_f64(), 1.0);
    }

    #[test]
    fn log10_of_powers_of_ten() {
        let x = BigFloat::parse_decimal("1e-30", 200).unwrap();
        assert!((x.log10_abs() + 30.0).abs() < 1e-12);
    }
}
