//! Seeded random inputs.
//!
//! The generator is ChaCha8 seeded with `ChaCha8Rng::seed_from_u64`.
//! Uniform doubles take the top 53 bits of `next_u64`; normals use the
//! Box–Muller cosine branch. Fixing these choices makes every generated
//! matrix and polynomial reproducible from its seed.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::multiword::{MultiWord, Scalar, Variant};

pub type MwRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> MwRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in `[0, 1)`.
pub fn uniform01(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Standard normal via Box–Muller.
pub fn standard_normal(rng: &mut impl RngCore) -> f64 {
    let u1 = 1.0 - uniform01(rng); // (0, 1]
    let u2 = uniform01(rng);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Random sign, uniform significand in `[1, 2)`, exponent in `[emin, emax]`.
pub fn random_f64(rng: &mut impl Rng, emin: i32, emax: i32) -> f64 {
    let m: f64 = rng.gen_range(1.0..2.0);
    let e = rng.gen_range(emin..=emax);
    let s = if rng.gen::<bool>() { -1.0 } else { 1.0 };
    s * m * 2f64.powi(e)
}

/// A normalized `K`-word value: leading word from [`random_f64`], each
/// later word below half an ulp of its predecessor.
pub fn random_multiword<const K: usize>(rng: &mut impl Rng, emin: i32, emax: i32) -> MultiWord<f64, K> {
    let mut c = [0.0; K];
    c[0] = random_f64(rng, emin, emax);
    for i in 1..K {
        let e = c[i - 1].abs().log2().floor() as i32;
        let r: f64 = rng.gen_range(-1.0..1.0);
        c[i] = r * 2f64.powi(e - 53);
    }
    MultiWord(c)
}

/// Uniform in `[0, 1)` at full `K`-word resolution: `K` uniform doubles
/// summed with weights `2^(-53 i)`.
pub fn uniform_multiword<T: Scalar>(rng: &mut impl RngCore) -> T {
    let mut x = T::from_base(uniform01(rng));
    for i in 1..T::WORDS {
        let w = uniform01(rng) * 2f64.powi(-53 * i as i32);
        x = x.add(T::from_base(w), Variant::Standard);
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_repeat() {
        let a: Vec<f64> = (0..5).map({
            let mut r = rng_from_seed(7);
            move |_| standard_normal(&mut r)
        }).collect();
        let mut r = rng_from_seed(7);
        let b: Vec<f64> = (0..5).map(|_| standard_normal(&mut r)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn normal_moments() {
        let mut r = rng_from_seed(11);
        let xs: Vec<f64> = (0..100_000).map(|_| standard_normal(&mut r)).collect();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / xs.len() as f64;
        assert!(mean.abs() < 0.02 && (var - 1.0).abs() < 0.02, "{mean} {var}");
    }

    #[test]
    fn multiwords_are_normalized() {
        let mut r = rng_from_seed(3);
        for _ in 0..1000 {
            let x: MultiWord<f64, 4> = random_multiword(&mut r, -100, 100);
            for i in 1..4 {
                let ulp = 2f64.powi(x.0[i - 1].abs().log2().floor() as i32 - 52);
                assert!(x.0[i].abs() <= ulp / 2.0);
            }
        }
    }
}
