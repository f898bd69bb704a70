//! Minimal arbitrary-size integers on 64-bit limbs.
//!
//! Only what the reference arithmetic needs: schoolbook multiplication,
//! Knuth long division, shifts, integer square root and decimal I/O.

use std::cmp::Ordering;
use std::fmt;

/// Unsigned integer, little-endian limbs with no trailing zero limbs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BigUint {
    limbs: Vec<u64>,
}

impl BigUint {
    pub fn zero() -> Self {
        BigUint { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_u64(1)
    }

    pub fn from_u64(x: u64) -> Self {
        let mut r = BigUint { limbs: vec![x] };
        r.normalize();
        r
    }

    pub fn from_u128(x: u128) -> Self {
        let mut r = BigUint {
            limbs: vec![x as u64, (x >> 64) as u64],
        };
        r.normalize();
        r
    }

    fn from_limbs(limbs: Vec<u64>) -> Self {
        let mut r = BigUint { limbs };
        r.normalize();
        r
    }

    fn normalize(&mut self) {
        while let Some(&0) = self.limbs.last() {
            self.limbs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs.len() == 1 && self.limbs[0] == 1
    }

    pub fn is_odd(&self) -> bool {
        self.limbs.first().is_some_and(|l| l & 1 == 1)
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0]),
            _ => None,
        }
    }

    /// Number of significant bits (0 for zero).
    pub fn bits(&self) -> u64 {
        match self.limbs.last() {
            None => 0,
            Some(&top) => 64 * self.limbs.len() as u64 - top.leading_zeros() as u64,
        }
    }

    pub fn bit(&self, i: u64) -> bool {
        let limb = (i / 64) as usize;
        limb < self.limbs.len() && (self.limbs[limb] >> (i % 64)) & 1 == 1
    }

    pub fn trailing_zeros(&self) -> Option<u64> {
        self.limbs
            .iter()
            .enumerate()
            .find(|(_, &l)| l != 0)
            .map(|(i, &l)| 64 * i as u64 + l.trailing_zeros() as u64)
    }

    /// True when any of the lowest `n` bits is set.
    pub fn low_bits_nonzero(&self, n: u64) -> bool {
        match self.trailing_zeros() {
            None => false,
            Some(tz) => tz < n,
        }
    }

    pub fn is_power_of_two(&self) -> bool {
        match self.trailing_zeros() {
            None => false,
            Some(tz) => tz + 1 == self.bits(),
        }
    }

    pub fn add(&self, other: &BigUint) -> BigUint {
        let (long, short) = if self.limbs.len() >= other.limbs.len() {
            (&self.limbs, &other.limbs)
        } else {
            (&other.limbs, &self.limbs)
        };
        let mut out = Vec::with_capacity(long.len() + 1);
        let mut carry = 0u64;
        for i in 0..long.len() {
            let (s1, c1) = long[i].overflowing_add(*short.get(i).unwrap_or(&0));
            let (s2, c2) = s1.overflowing_add(carry);
            out.push(s2);
            carry = (c1 as u64) + (c2 as u64);
        }
        if carry != 0 {
            out.push(carry);
        }
        BigUint::from_limbs(out)
    }

    /// `self - other`; panics if `other > self`.
    pub fn sub(&self, other: &BigUint) -> BigUint {
        assert!(*self >= *other, "BigUint subtraction underflow");
        let mut out = Vec::with_capacity(self.limbs.len());
        let mut borrow = 0u64;
        for i in 0..self.limbs.len() {
            let (d1, b1) = self.limbs[i].overflowing_sub(*other.limbs.get(i).unwrap_or(&0));
            let (d2, b2) = d1.overflowing_sub(borrow);
            out.push(d2);
            borrow = (b1 as u64) + (b2 as u64);
        }
        debug_assert_eq!(borrow, 0);
        BigUint::from_limbs(out)
    }

    pub fn mul(&self, other: &BigUint) -> BigUint {
        if self.is_zero() || other.is_zero() {
            return BigUint::zero();
        }
        let mut out = vec![0u64; self.limbs.len() + other.limbs.len()];
        for (i, &a) in self.limbs.iter().enumerate() {
            let mut carry = 0u128;
            for (j, &b) in other.limbs.iter().enumerate() {
                let t = a as u128 * b as u128 + out[i + j] as u128 + carry;
                out[i + j] = t as u64;
                carry = t >> 64;
            }
            out[i + other.limbs.len()] = carry as u64;
        }
        BigUint::from_limbs(out)
    }

    pub fn mul_small(&self, m: u64) -> BigUint {
        let mut out = Vec::with_capacity(self.limbs.len() + 1);
        let mut carry = 0u128;
        for &a in &self.limbs {
            let t = a as u128 * m as u128 + carry;
            out.push(t as u64);
            carry = t >> 64;
        }
        out.push(carry as u64);
        BigUint::from_limbs(out)
    }

    pub fn add_small(&self, m: u64) -> BigUint {
        self.add(&BigUint::from_u64(m))
    }

    pub fn shl(&self, n: u64) -> BigUint {
        if self.is_zero() {
            return BigUint::zero();
        }
        let limb_shift = (n / 64) as usize;
        let bit_shift = (n % 64) as u32;
        let mut out = vec![0u64; limb_shift];
        out.reserve(self.limbs.len() + 1);
        if bit_shift == 0 {
            out.extend_from_slice(&self.limbs);
        } else {
            let mut carry = 0u64;
            for &l in &self.limbs {
                out.push((l << bit_shift) | carry);
                carry = l >> (64 - bit_shift);
            }
            out.push(carry);
        }
        BigUint::from_limbs(out)
    }

    /// Floor of `self / 2^n`.
    pub fn shr(&self, n: u64) -> BigUint {
        let limb_shift = (n / 64) as usize;
        if limb_shift >= self.limbs.len() {
            return BigUint::zero();
        }
        let bit_shift = (n % 64) as u32;
        let src = &self.limbs[limb_shift..];
        let mut out = Vec::with_capacity(src.len());
        if bit_shift == 0 {
            out.extend_from_slice(src);
        } else {
            for i in 0..src.len() {
                let hi = src.get(i + 1).map_or(0, |&h| h << (64 - bit_shift));
                out.push((src[i] >> bit_shift) | hi);
            }
        }
        BigUint::from_limbs(out)
    }

    pub fn divrem_small(&self, d: u64) -> (BigUint, u64) {
        assert!(d != 0, "division by zero");
        let mut out = vec![0u64; self.limbs.len()];
        let mut rem = 0u128;
        for i in (0..self.limbs.len()).rev() {
            let cur = (rem << 64) | self.limbs[i] as u128;
            out[i] = (cur / d as u128) as u64;
            rem = cur % d as u128;
        }
        (BigUint::from_limbs(out), rem as u64)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &BigUint) -> (BigUint, BigUint) {
        assert!(!d.is_zero(), "division by zero");
        if self < d {
            return (BigUint::zero(), self.clone());
        }
        if d.limbs.len() == 1 {
            let (q, r) = self.divrem_small(d.limbs[0]);
            return (q, BigUint::from_u64(r));
        }
        let (q, r) = knuth_divrem(&self.limbs, &d.limbs);
        (BigUint::from_limbs(q), BigUint::from_limbs(r))
    }

    pub fn pow_small(base: u64, exp: u32) -> BigUint {
        let mut result = BigUint::one();
        let mut b = BigUint::from_u64(base);
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        result
    }

    /// Floor of the square root.
    pub fn isqrt(&self) -> BigUint {
        if self.is_zero() {
            return BigUint::zero();
        }
        // Newton from above: x0 = 2^ceil(bits/2) >= sqrt(self).
        let mut x = BigUint::one().shl(self.bits().div_ceil(2));
        loop {
            let (q, _) = self.divrem(&x);
            let y = x.add(&q).shr(1);
            if y >= x {
                return x;
            }
            x = y;
        }
    }

    pub fn gcd(a: &BigUint, b: &BigUint) -> BigUint {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let za = a.trailing_zeros().unwrap();
        let zb = b.trailing_zeros().unwrap();
        let shift = za.min(zb);
        let mut u = a.shr(za);
        let mut v = b.shr(zb);
        loop {
            if u > v {
                std::mem::swap(&mut u, &mut v);
            }
            v = v.sub(&u);
            if v.is_zero() {
                return u.shl(shift);
            }
            v = v.shr(v.trailing_zeros().unwrap());
        }
    }

    pub fn to_decimal_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        const CHUNK: u64 = 10_000_000_000_000_000_000;
        let mut chunks = Vec::new();
        let mut cur = self.clone();
        while !cur.is_zero() {
            let (q, r) = cur.divrem_small(CHUNK);
            chunks.push(r);
            cur = q;
        }
        let mut s = chunks.pop().unwrap().to_string();
        for c in chunks.iter().rev() {
            s.push_str(&format!("{c:019}"));
        }
        s
    }

    /// Parses a string of ASCII decimal digits.
    pub fn from_decimal_str(s: &str) -> Option<BigUint> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let mut acc = BigUint::zero();
        for chunk in s.as_bytes().chunks(19) {
            let v: u64 = std::str::from_utf8(chunk).ok()?.parse().ok()?;
            acc = acc
                .mul(&BigUint::pow_small(10, chunk.len() as u32))
                .add(&BigUint::from_u64(v));
        }
        Some(acc)
    }
}

fn shl_limbs(src: &[u64], s: u32, extra: bool) -> Vec<u64> {
    let mut out = Vec::with_capacity(src.len() + 1);
    if s == 0 {
        out.extend_from_slice(src);
        if extra {
            out.push(0);
        }
        return out;
    }
    let mut carry = 0u64;
    for &l in src {
        out.push((l << s) | carry);
        carry = l >> (64 - s);
    }
    if extra {
        out.push(carry);
    } else {
        debug_assert_eq!(carry, 0);
    }
    out
}

/// Knuth, TAOCP vol. 2, algorithm D. Requires `v.len() >= 2` and `u >= v`.
fn knuth_divrem(u: &[u64], v: &[u64]) -> (Vec<u64>, Vec<u64>) {
    const B: u128 = 1 << 64;
    let n = v.len();
    let m = u.len() - n;
    let s = v[n - 1].leading_zeros();
    let vn = shl_limbs(v, s, false);
    let mut un = shl_limbs(u, s, true);
    let mut q = vec![0u64; m + 1];
    let v1 = vn[n - 1] as u128;
    let v2 = vn[n - 2] as u128;
    for j in (0..=m).rev() {
        let num = ((un[j + n] as u128) << 64) | un[j + n - 1] as u128;
        let mut qhat = num / v1;
        let mut rhat = num % v1;
        while qhat >= B || qhat * v2 > ((rhat << 64) | un[j + n - 2] as u128) {
            qhat -= 1;
            rhat += v1;
            if rhat >= B {
                break;
            }
        }
        let mut borrow = 0i128;
        let mut carry = 0u128;
        for i in 0..n {
            let p = qhat * vn[i] as u128 + carry;
            carry = p >> 64;
            let t = un[i + j] as i128 - borrow - (p as u64) as i128;
            un[i + j] = t as u64;
            borrow = (t < 0) as i128;
        }
        let t = un[j + n] as i128 - borrow - carry as i128;
        un[j + n] = t as u64;
        if t < 0 {
            qhat -= 1;
            let mut c = 0u128;
            for i in 0..n {
                let sum = un[i + j] as u128 + vn[i] as u128 + c;
                un[i + j] = sum as u64;
                c = sum >> 64;
            }
            un[j + n] = un[j + n].wrapping_add(c as u64);
        }
        q[j] = qhat as u64;
    }
    let mut r = vec![0u64; n];
    for i in 0..n {
        r[i] = if s == 0 {
            un[i]
        } else {
            (un[i] >> s) | (un[i + 1] << (64 - s))
        };
    }
    (q, r)
}

impl Ord for BigUint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.limbs
            .len()
            .cmp(&other.limbs.len())
            .then_with(|| self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
    }
}

impl PartialOrd for BigUint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BigUint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

/// Signed integer in sign-magnitude form; zero is never negative.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BigInt {
    neg: bool,
    mag: BigUint,
}

impl BigInt {
    pub fn zero() -> Self {
        BigInt::default()
    }

    pub fn from_parts(neg: bool, mag: BigUint) -> Self {
        let neg = neg && !mag.is_zero();
        BigInt { neg, mag }
    }

    pub fn from_i64(x: i64) -> Self {
        Self::from_parts(x < 0, BigUint::from_u64(x.unsigned_abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.mag.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.neg
    }

    pub fn magnitude(&self) -> &BigUint {
        &self.mag
    }

    pub fn neg(&self) -> BigInt {
        Self::from_parts(!self.neg, self.mag.clone())
    }

    pub fn abs(&self) -> BigInt {
        Self::from_parts(false, self.mag.clone())
    }

    pub fn add(&self, other: &BigInt) -> BigInt {
        if self.neg == other.neg {
            return Self::from_parts(self.neg, self.mag.add(&other.mag));
        }
        match self.mag.cmp(&other.mag) {
            Ordering::Equal => BigInt::zero(),
            Ordering::Greater => Self::from_parts(self.neg, self.mag.sub(&other.mag)),
            Ordering::Less => Self::from_parts(other.neg, other.mag.sub(&self.mag)),
        }
    }

    pub fn sub(&self, other: &BigInt) -> BigInt {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BigInt) -> BigInt {
        Self::from_parts(self.neg != other.neg, self.mag.mul(&other.mag))
    }

    pub fn shl(&self, n: u64) -> BigInt {
        Self::from_parts(self.neg, self.mag.shl(n))
    }

    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.neg {
            -1
        } else {
            1
        }
    }
}

impl Ord for BigInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.neg, other.neg) {
            (false, true) => Ordering::Greater,
            (true, false) => Ordering::Less,
            (false, false) => self.mag.cmp(&other.mag),
            (true, true) => other.mag.cmp(&self.mag),
        }
    }
}

impl PartialOrd for BigInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BigInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.neg {
            f.write_str("-")?;
        }
        write!(f, "{}", self.mag)
    }
}
