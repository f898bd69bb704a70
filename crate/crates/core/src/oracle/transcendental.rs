//! Elementary functions for the oracle: pi, exp, log, sin/cos, sqrt and
//! rational powers. Each is evaluated with 64 guard bits and then rounded
//! to the requested precision.

use super::bigfloat::BigFloat;
use crate::error::MwError;

const GUARD: u32 = 64;

/// Sum of `1 / ((2n+1) k^(2n+1))` with alternating signs when `alternate`.
/// `atan(1/k)` for alternate, `atanh(1/k)` otherwise.
fn arc_series(k: u64, alternate: bool, wp: u32) -> BigFloat {
    let k2 = BigFloat::from_u64(k * k);
    let mut power = BigFloat::one().div_i64(k as i64, wp); // 1/k^(2n+1)
    let mut sum = BigFloat::zero();
    let limit = -(wp as i64) - 4;
    let mut n = 0i64;
    loop {
        let term = power.div_i64(2 * n + 1, wp);
        if term.top_exponent().is_none_or(|t| t < limit) {
            break;
        }
        sum = if alternate && n % 2 == 1 {
            sum.sub(&term, wp)
        } else {
            sum.add(&term, wp)
        };
        power = power.div(&k2, wp).expect("k > 0");
        n += 1;
    }
    sum
}

/// pi via Machin's formula `16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(prec: u32) -> BigFloat {
    let wp = prec + GUARD;
    let a = arc_series(5, true, wp).scale2(4);
    let b = arc_series(239, true, wp).scale2(2);
    a.sub(&b, wp).round(prec)
}

/// ln 2 = 2 atanh(1/3).
pub fn ln2(prec: u32) -> BigFloat {
    let wp = prec + GUARD;
    arc_series(3, false, wp).scale2(1).round(prec)
}

pub fn sqrt(x: &BigFloat, prec: u32) -> Result<BigFloat, MwError> {
    x.sqrt(prec)
}

pub fn exp(x: &BigFloat, prec: u32) -> BigFloat {
    if x.is_zero() {
        return BigFloat::one();
    }
    // x = n ln2 + r with |r| <= ln2/2, then r / 2^m and square m times
    let squarings: u32 = 24;
    let wp = prec + GUARD + squarings + x.top_exponent().unwrap().max(0) as u32;
    let l2 = ln2(wp + 64);
    let n = x.div(&l2, 64).unwrap().to_f64().round();
    let r = x.sub(&l2.mul_i64(n as i64, wp + 64), wp);
    let r = r.scale2(-(squarings as i64));
    // Taylor series
    let mut sum = BigFloat::one();
    let mut term = BigFloat::one();
    let limit = -(wp as i64) - 4;
    let mut k = 1i64;
    loop {
        term = term.mul(&r, wp).div_i64(k, wp);
        if term.top_exponent().is_none_or(|t| t < limit) {
            break;
        }
        sum = sum.add(&term, wp);
        k += 1;
    }
    for _ in 0..squarings {
        sum = sum.mul(&sum, wp);
    }
    sum.scale2(n as i64).round(prec)
}

pub fn log(x: &BigFloat, prec: u32) -> Result<BigFloat, MwError> {
    if x.is_zero() || x.is_negative() {
        return Err(MwError::Domain("logarithm of a non-positive value"));
    }
    let wp = prec + GUARD;
    // x = m 2^e with m in [1/sqrt2, sqrt2)
    let mut e = x.top_exponent().unwrap();
    let mut m = x.scale2(-e);
    let sqrt2 = BigFloat::from_u64(2).sqrt(64).unwrap();
    if m > sqrt2 {
        m = m.scale2(-1);
        e += 1;
    }
    // log m = 2 atanh(t), t = (m-1)/(m+1)
    let one = BigFloat::one();
    let t = m.sub(&one, wp).div(&m.add(&one, wp), wp).unwrap();
    let t2 = t.mul(&t, wp);
    let mut power = t.clone();
    let mut sum = BigFloat::zero();
    let limit = -(wp as i64) - 4;
    let mut n = 0i64;
    while !power.is_zero() {
        let term = power.div_i64(2 * n + 1, wp);
        if term.top_exponent().is_none_or(|t| t < limit) {
            break;
        }
        sum = sum.add(&term, wp);
        power = power.mul(&t2, wp);
        n += 1;
    }
    let log_m = sum.scale2(1);
    let log_2e = ln2(wp).mul_i64(e, wp);
    Ok(log_m.add(&log_2e, wp).round(prec))
}

/// `(cos x, sin x)`.
pub fn cos_sin(x: &BigFloat, prec: u32) -> (BigFloat, BigFloat) {
    let extra = x.top_exponent().map_or(0, |t| t.max(0) as u32);
    let wp = prec + GUARD + extra;
    let two_pi = pi(wp + 8).scale2(1);
    let k = x.div(&two_pi, 64).unwrap().to_f64().round() as i64;
    let r = x.sub(&two_pi.mul_i64(k, wp + 8), wp);
    let r2 = r.mul(&r, wp);
    let limit = -(wp as i64) - 8;
    // cos
    let mut cos = BigFloat::one();
    let mut term = BigFloat::one();
    let mut k = 0i64;
    loop {
        term = term.mul(&r2, wp).div_i64((2 * k + 1) * (2 * k + 2), wp).neg();
        if term.top_exponent().is_none_or(|t| t < limit) {
            break;
        }
        cos = cos.add(&term, wp);
        k += 1;
    }
    // sin
    let mut sin = r.clone();
    let mut term = r.clone();
    let mut k = 1i64;
    loop {
        term = term.mul(&r2, wp).div_i64((2 * k) * (2 * k + 1), wp).neg();
        if term.top_exponent().is_none_or(|t| t < limit) {
            break;
        }
        sin = sin.add(&term, wp);
        k += 1;
    }
    (cos.round(prec), sin.round(prec))
}

/// `x^(num/den)` for `x > 0`, or `x = 0` with a positive exponent.
pub fn pow_ratio(x: &BigFloat, num: i64, den: i64, prec: u32) -> Result<BigFloat, MwError> {
    if den == 0 {
        return Err(MwError::DivisionByZero);
    }
    if x.is_zero() {
        return if num * den.signum() > 0 {
            Ok(BigFloat::zero())
        } else {
            Err(MwError::Domain("zero to a non-positive power"))
        };
    }
    let wp = prec + GUARD;
    let l = log(x, wp)?.mul_i64(num, wp).div_i64(den, wp);
    Ok(exp(&l, wp).round(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::bigfloat::ORACLE_BITS;

    fn close(a: &BigFloat, b: &BigFloat, bits: i64) -> bool {
        let d = a.sub(b, 800).abs();
        d.is_zero() || d.top_exponent().unwrap() < b.top_exponent().unwrap_or(0) - bits
    }

    #[test]
    fn exp_log_inverse() {
        let x = BigFloat::parse_decimal("2.718281828", ORACLE_BITS).unwrap();
        let y = exp(&log(&x, ORACLE_BITS).unwrap(), ORACLE_BITS);
        assert!(close(&x, &y, 290));
        let neg = BigFloat::parse_decimal("-7.25", ORACLE_BITS).unwrap();
        let back = log(&exp(&neg, ORACLE_BITS), ORACLE_BITS).unwrap();
        assert!(close(&neg, &back, 290));
    }

    #[test]
    fn pythagorean_identity() {
        let x = BigFloat::parse_decimal("100.125", ORACLE_BITS).unwrap();
        let (c, s) = cos_sin(&x, ORACLE_BITS);
        let one = c.mul(&c, 700).add(&s.mul(&s, 700), 700);
        assert!(close(&one, &BigFloat::one(), 290));
    }

    #[test]
    fn pi_plus_pi_is_two_pi() {
        let p = pi(ORACLE_BITS);
        let two_p = pi(ORACLE_BITS + 64).scale2(1);
        let d = p.add(&p, ORACLE_BITS).sub(&two_p, 800).abs();
        // within one ulp of 2pi at 300 bits
        assert!(d <= BigFloat::one().scale2(-297));
    }

    #[test]
    fn rational_powers() {
        let r = pow_ratio(&BigFloat::from_u64(4), 1, 2, ORACLE_BITS).unwrap();
        assert!(close(&r, &BigFloat::from_u64(2), 290));
        let c = pow_ratio(&BigFloat::from_u64(27), 2, 3, ORACLE_BITS).unwrap();
        assert!(close(&c, &BigFloat::from_u64(9), 290));
        assert!(log(&BigFloat::zero(), 10).is_err());
        assert!(pow_ratio(&BigFloat::zero(), -1, 2, 10).is_err());
    }
}
