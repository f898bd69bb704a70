//! Brute-force reference kernels: matrix products, Horner evaluation and
//! a Durand–Kerner solver, all in oracle arithmetic.

use super::bigfloat::{BigFloat, ORACLE_BITS};
use super::exact::Dyadic;
use super::transcendental as tr;
use crate::error::MwError;

/// Complex number over [`BigFloat`].
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        BigComplex { re, im }
    }

    pub fn zero() -> Self {
        BigComplex::new(BigFloat::zero(), BigFloat::zero())
    }

    pub fn from_real(re: BigFloat) -> Self {
        BigComplex::new(re, BigFloat::zero())
    }

    pub fn add(&self, o: &BigComplex, prec: u32) -> BigComplex {
        BigComplex::new(self.re.add(&o.re, prec), self.im.add(&o.im, prec))
    }

    pub fn sub(&self, o: &BigComplex, prec: u32) -> BigComplex {
        BigComplex::new(self.re.sub(&o.re, prec), self.im.sub(&o.im, prec))
    }

    pub fn mul(&self, o: &BigComplex, prec: u32) -> BigComplex {
        let wp = prec + 16;
        let re = self.re.mul(&o.re, wp).sub(&self.im.mul(&o.im, wp), prec);
        let im = self.re.mul(&o.im, wp).add(&self.im.mul(&o.re, wp), prec);
        BigComplex::new(re, im)
    }

    pub fn norm_sqr(&self, prec: u32) -> BigFloat {
        self.re
            .mul(&self.re, prec + 16)
            .add(&self.im.mul(&self.im, prec + 16), prec)
    }

    pub fn div(&self, o: &BigComplex, prec: u32) -> Result<BigComplex, MwError> {
        let wp = prec + 16;
        let d = o.norm_sqr(wp);
        let re = self.re.mul(&o.re, wp).add(&self.im.mul(&o.im, wp), wp);
        let im = self.im.mul(&o.re, wp).sub(&self.re.mul(&o.im, wp), wp);
        Ok(BigComplex::new(re.div(&d, prec)?, im.div(&d, prec)?))
    }

    pub fn abs(&self, prec: u32) -> BigFloat {
        self.norm_sqr(prec + 8)
            .sqrt(prec)
            .expect("norm is non-negative")
    }
}

/// `C = A B` for row-major `m x k` and `k x n` inputs, each product and
/// partial sum rounded to `ORACLE_BITS`.
pub fn oracle_matmul(a: &[BigFloat], b: &[BigFloat], m: usize, k: usize, n: usize) -> Vec<BigFloat> {
    assert_eq!(a.len(), m * k);
    assert_eq!(b.len(), k * n);
    let mut c = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let mut s = BigFloat::zero();
            for l in 0..k {
                let p = a[i * k + l].mul(&b[l * n + j], ORACLE_BITS);
                s = s.add(&p, ORACLE_BITS);
            }
            c.push(s);
        }
    }
    c
}

/// Exact product over dyadic rationals.
pub fn exact_matmul(a: &[Dyadic], b: &[Dyadic], m: usize, k: usize, n: usize) -> Vec<Dyadic> {
    assert_eq!(a.len(), m * k);
    assert_eq!(b.len(), k * n);
    let mut c = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let mut s = Dyadic::zero();
            for l in 0..k {
                s = s.add(&a[i * k + l].mul(&b[l * n + j]));
            }
            c.push(s);
        }
    }
    c
}

/// Horner evaluation of `sum coeffs[i] x^i`.
pub fn oracle_horner(coeffs: &[BigFloat], x: &BigFloat) -> BigFloat {
    let mut acc = BigFloat::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(x, ORACLE_BITS).add(c, ORACLE_BITS);
    }
    acc
}

pub fn oracle_horner_complex(coeffs: &[BigComplex], z: &BigComplex) -> BigComplex {
    let mut acc = BigComplex::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, ORACLE_BITS).add(c, ORACLE_BITS);
    }
    acc
}

/// Durand–Kerner on the monic polynomial `x^n + sum c[i] x^i`, started
/// from Aberth points and iterated until the largest relative update is
/// below `2^-(ORACLE_BITS - 40)`. Intended for `n <= 16`.
pub fn oracle_dk(c: &[BigFloat], max_iter: usize) -> Result<Vec<BigComplex>, MwError> {
    let n = c.len();
    if n == 0 {
        return Err(MwError::Empty("polynomial of degree zero"));
    }
    let p = ORACLE_BITS;
    let mut coeffs: Vec<BigComplex> = c.iter().cloned().map(BigComplex::from_real).collect();
    coeffs.push(BigComplex::from_real(BigFloat::one()));

    // radius
    let nnz = c.iter().filter(|x| !x.is_zero()).count() as i64 + 1;
    let mut r = BigFloat::zero();
    for (i, ci) in c.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        let v = ci.abs().mul_i64(nnz, p);
        let root = tr::pow_ratio(&v, 1, (n - i) as i64, p)?;
        if root > r {
            r = root;
        }
    }
    if r.is_zero() {
        r = BigFloat::one();
    }
    let center = c[n - 1].neg().div_i64(n as i64, p);
    let two_pi = tr::pi(p + 8).scale2(1);
    let offset = BigFloat::from_u64(3).div_i64(2 * n as i64, p + 8);
    let mut z: Vec<BigComplex> = (0..n)
        .map(|i| {
            let theta = two_pi
                .mul_i64(i as i64, p + 8)
                .div_i64(n as i64, p + 8)
                .add(&offset, p + 8);
            let (cos, sin) = tr::cos_sin(&theta, p);
            BigComplex::new(center.add(&r.mul(&cos, p), p), r.mul(&sin, p))
        })
        .collect();

    let threshold = -(p as i64 - 40);
    for _ in 0..max_iter {
        let mut next = Vec::with_capacity(n);
        let mut max_update: Option<i64> = None;
        let mut max_z: Option<i64> = None;
        for i in 0..n {
            let num = oracle_horner_complex(&coeffs, &z[i]);
            let mut den = BigComplex::from_real(BigFloat::one());
            for j in 0..n {
                if j != i {
                    den = den.mul(&z[i].sub(&z[j], p), p);
                }
            }
            if den.re.is_zero() && den.im.is_zero() {
                return Err(MwError::Collision(i, i));
            }
            let dz = num.div(&den, p)?;
            let zi = z[i].sub(&dz, p);
            max_update = max_update.max(dz.abs(64).top_exponent());
            max_z = max_z.max(zi.abs(64).top_exponent());
            next.push(zi);
        }
        z = next;
        let converged = match (max_update, max_z) {
            (None, _) => true,
            (Some(u), Some(m)) => u - m < threshold,
            (Some(_), None) => false,
        };
        if converged {
            return Ok(z);
        }
    }
    Err(MwError::NoConvergence {
        iterations: max_iter,
        last_update: f64::NAN,
    })
}
