//! Reference arithmetic used to verify the multiword library.
//!
//! Built only from the big-integer routines in this module, so nothing in
//! the verification chain depends on the code under test. Values are
//! either exact rationals (every finite float and multiword is a dyadic
//! rational) or 300-bit binary floats for transcendental work.

mod bigfloat;
mod bigint;
mod exact;
mod reference;
pub mod transcendental;

pub use bigfloat::{BigFloat, ORACLE_BITS};
pub use bigint::{BigInt, BigUint};
pub use exact::{Dyadic, Rational};
pub use reference::{
    exact_matmul, oracle_dk, oracle_horner, oracle_horner_complex, oracle_matmul, BigComplex,
};

use crate::error::MwError;

/// Exact sum of a multiword's components.
pub fn words_to_dyadic(words: &[f64]) -> Dyadic {
    words
        .iter()
        .fold(Dyadic::zero(), |acc, &w| acc.add(&Dyadic::from_f64(w)))
}

pub fn words_to_rational(words: &[f64]) -> Rational {
    words_to_dyadic(words).to_rational()
}

pub fn words_to_bigfloat(words: &[f64]) -> BigFloat {
    BigFloat::from_dyadic(&words_to_dyadic(words))
}

/// Greedy split of `x` into `k` binary64 words: each word is the nearest
/// double to what remains. The result is non-overlapping and carries about
/// `53 k` bits.
pub fn rational_to_words(x: &Rational, k: usize) -> Vec<f64> {
    let mut rest = x.clone();
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let w = BigFloat::from_rational(&rest, 53).to_f64();
        rest = rest.sub(&Rational::from_f64(w));
        out.push(w);
    }
    out
}

pub fn bigfloat_to_words(x: &BigFloat, k: usize) -> Vec<f64> {
    let mut rest = x.to_dyadic();
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let w = BigFloat::from_dyadic(&rest).to_f64();
        rest = rest.sub(&Dyadic::from_f64(w));
        out.push(w);
    }
    out
}

/// A reference number: exact rational, or a 300-bit float when the value
/// came from a transcendental computation.
#[derive(Clone, Debug, PartialEq)]
pub enum OracleValue {
    Exact(Rational),
    Float(BigFloat),
}

impl OracleValue {
    pub fn from_f64(x: f64) -> Self {
        OracleValue::Exact(Rational::from_f64(x))
    }

    pub fn from_words(words: &[f64]) -> Self {
        OracleValue::Exact(words_to_rational(words))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            OracleValue::Exact(r) => r.is_zero(),
            OracleValue::Float(f) => f.is_zero(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, OracleValue::Exact(_))
    }

    pub fn to_bigfloat(&self, prec: u32) -> BigFloat {
        match self {
            OracleValue::Exact(r) => BigFloat::from_rational(r, prec),
            OracleValue::Float(f) => f.round(prec),
        }
    }

    /// Exact value; a float-mode value is itself a dyadic rational.
    pub fn to_rational(&self) -> Rational {
        match self {
            OracleValue::Exact(r) => r.clone(),
            OracleValue::Float(f) => f.to_rational(),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            OracleValue::Exact(r) => OracleValue::Exact(r.neg()),
            OracleValue::Float(f) => OracleValue::Float(f.neg()),
        }
    }

    pub fn exact_add(&self, other: &OracleValue) -> OracleValue {
        match (self, other) {
            (OracleValue::Exact(a), OracleValue::Exact(b)) => OracleValue::Exact(a.add(b)),
            _ => OracleValue::Float(
                self.to_bigfloat(ORACLE_BITS + 64)
                    .add(&other.to_bigfloat(ORACLE_BITS + 64), ORACLE_BITS),
            ),
        }
    }

    pub fn exact_sub(&self, other: &OracleValue) -> OracleValue {
        self.exact_add(&other.neg())
    }

    pub fn exact_mul(&self, other: &OracleValue) -> OracleValue {
        match (self, other) {
            (OracleValue::Exact(a), OracleValue::Exact(b)) => OracleValue::Exact(a.mul(b)),
            _ => OracleValue::Float(
                self.to_bigfloat(ORACLE_BITS + 64)
                    .mul(&other.to_bigfloat(ORACLE_BITS + 64), ORACLE_BITS),
            ),
        }
    }

    pub fn exact_div(&self, other: &OracleValue) -> Result<OracleValue, MwError> {
        match (self, other) {
            (OracleValue::Exact(a), OracleValue::Exact(b)) => Ok(OracleValue::Exact(a.div(b)?)),
            _ => Ok(OracleValue::Float(
                self.to_bigfloat(ORACLE_BITS + 64)
                    .div(&other.to_bigfloat(ORACLE_BITS + 64), ORACLE_BITS)?,
            )),
        }
    }
}

impl From<Rational> for OracleValue {
    fn from(r: Rational) -> Self {
        OracleValue::Exact(r)
    }
}

impl From<BigFloat> for OracleValue {
    fn from(f: BigFloat) -> Self {
        OracleValue::Float(f)
    }
}

/// `log10 |x|` of an exact rational, to double precision.
pub fn log10_rational(x: &Rational) -> f64 {
    BigFloat::from_rational(x, 64).log10_abs()
}

/// Relative error `|approx - exact| / |exact|`, as `log2`. Falls back to
/// the absolute error when `exact` is zero. `-inf` when they are equal.
pub fn log2_rel_error(approx: &[f64], exact: &OracleValue) -> f64 {
    let e = exact.to_rational();
    let err = words_to_rational(approx).sub(&e);
    if err.is_zero() {
        return f64::NEG_INFINITY;
    }
    let mut l = log10_rational(&err);
    if !e.is_zero() {
        l -= log10_rational(&e);
    }
    l / std::f64::consts::LOG10_2
}

/// Significant decimal digits of `approx` against `exact`:
/// `-log10(|approx - exact| / |exact|)`, capped at `2 * 16 * K` for a
/// `K`-word value that matches exactly.
pub fn significant_digits(approx: &[f64], exact: &OracleValue) -> f64 {
    let cap = 32.0 * approx.len() as f64;
    let l2 = log2_rel_error(approx, exact);
    (-l2 * std::f64::consts::LOG10_2).min(cap)
}

/// Complex digits: the minimum over real and imaginary parts.
pub fn significant_digits_complex(
    re: &[f64],
    im: &[f64],
    exact_re: &OracleValue,
    exact_im: &OracleValue,
) -> f64 {
    significant_digits(re, exact_re).min(significant_digits(im, exact_im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::transcendental as tr;

    const FIXTURES: &str = include_str!("constants.txt");

    fn fixture(name: &str) -> Rational {
        let line = FIXTURES
            .lines()
            .filter(|l| !l.starts_with('#'))
            .find(|l| l.split_whitespace().next() == Some(name))
            .unwrap_or_else(|| panic!("fixture {name} missing"));
        Rational::parse_decimal(line.split_whitespace().nth(1).unwrap()).unwrap()
    }

    // 100 decimal digits need about 333 bits
    const FIXTURE_BITS: u32 = 360;

    fn agrees_to_100_digits(computed: &BigFloat, name: &str) {
        let reference = fixture(name);
        let err = computed.to_rational().sub(&reference).abs();
        let rel = log10_rational(&err) - log10_rational(&reference);
        // fixtures are truncated at 100 significant digits
        assert!(rel < -98.5, "{name}: relative error 1e{rel}");
    }

    #[test]
    fn pi_matches_fixture() {
        agrees_to_100_digits(&tr::pi(FIXTURE_BITS), "pi");
    }

    #[test]
    fn e_matches_fixture() {
        agrees_to_100_digits(&tr::exp(&BigFloat::one(), FIXTURE_BITS), "e");
    }

    #[test]
    fn square_roots_match_fixtures() {
        agrees_to_100_digits(&tr::sqrt(&BigFloat::from_u64(3), FIXTURE_BITS).unwrap(), "sqrt3");
        agrees_to_100_digits(&tr::sqrt(&BigFloat::from_u64(5), FIXTURE_BITS).unwrap(), "sqrt5");
    }

    #[test]
    fn rational_mode_is_exact() {
        let a = OracleValue::Exact(Rational::from_ratio(1, 3));
        let b = OracleValue::Exact(Rational::from_ratio(1, 6));
        assert_eq!(a.exact_add(&b), OracleValue::Exact(Rational::from_ratio(1, 2)));
        let c = OracleValue::from_f64(0.1);
        assert_eq!(c.exact_add(&a).exact_sub(&a), c);
        assert!(a.exact_div(&OracleValue::from_f64(0.0)).is_err());
    }

    #[test]
    fn float_mode_pi_plus_pi() {
        let p = OracleValue::Float(tr::pi(ORACLE_BITS));
        let two_pi = p.exact_add(&p).to_bigfloat(ORACLE_BITS);
        let reference = tr::pi(ORACLE_BITS + 64).scale2(1);
        let d = two_pi.sub(&reference, 800).abs();
        assert!(d <= BigFloat::one().scale2(-297));
    }

    #[test]
    fn multiword_round_trip_is_exact() {
        let w = [1.0, 2f64.powi(-60), 2f64.powi(-120)];
        let r = words_to_rational(&w);
        assert_eq!(rational_to_words(&r, 3), w.to_vec());
        assert!(r.denom().is_power_of_two());
    }

    #[test]
    fn digit_counting() {
        let exact = OracleValue::from_f64(1.0);
        assert_eq!(significant_digits(&[1.0, 0.0], &exact), 64.0);
        let x = Rational::one().add(&Rational::pow10(-30));
        let approx = rational_to_words(&x, 4);
        let d = significant_digits(&approx, &exact);
        assert!((d - 30.0).abs() < 1e-6, "{d}");
        // monotone in the error
        let y = Rational::one().add(&Rational::pow10(-20));
        assert!(significant_digits(&rational_to_words(&y, 4), &exact) < d);
    }

    #[test]
    fn complex_digits_take_the_minimum() {
        let one = OracleValue::from_f64(1.0);
        let re = rational_to_words(&Rational::one().add(&Rational::pow10(-30)), 4);
        let im = rational_to_words(&Rational::one().add(&Rational::pow10(-25)), 4);
        let d = significant_digits_complex(&re, &im, &one, &one);
        assert!((d - 25.0).abs() < 1e-6);
    }

    #[test]
    fn greedy_split_of_sqrt5_is_accurate() {
        let s5 = tr::sqrt(&BigFloat::from_u64(5), ORACLE_BITS).unwrap();
        for k in 2..=4 {
            let w = bigfloat_to_words(&s5, k);
            let l2 = log2_rel_error(&w, &OracleValue::Float(s5.clone()));
            assert!(l2 < -(53.0 * k as f64) + 2.0, "k={k}: 2^{l2}");
        }
    }
}
