//! Exponential in `K`-word arithmetic.

use super::{Scalar, Variant};
use crate::oracle::{bigfloat_to_words, transcendental, ORACLE_BITS};

/// Halvings applied to the reduced argument before the Taylor series.
const SQUARINGS: i32 = 8;

/// `exp` with the `K`-word `ln 2` computed once.
#[derive(Clone, Copy, Debug)]
pub struct Exp<T> {
    ln2: T,
}

impl<T: Scalar> Default for Exp<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> Exp<T> {
    pub fn new() -> Self {
        let ln2 = transcendental::ln2(ORACLE_BITS);
        Exp {
            ln2: T::from_words(&bigfloat_to_words(&ln2, T::WORDS)),
        }
    }

    /// `x = k ln2 + r`, `exp(r) = (taylor(r / 2^s))^(2^s)`, then scale by
    /// `2^k`. Arguments outside the binary64 range saturate like `f64::exp`.
    pub fn eval(&self, x: T) -> T {
        let v = Variant::Standard;
        let x0 = x.leading();
        if !x0.is_finite() || x0.abs() > 708.0 {
            return T::from_base(x0.exp());
        }
        let k = (x0 / std::f64::consts::LN_2).round();
        let r = x.sub(self.ln2.mul(T::from_base(k), v), v);
        let r = scale2(r, -SQUARINGS);
        let tiny = 2f64.powi(-(T::BITS as i32) - 8);
        let mut term = r;
        let mut sum = T::one().add(r, v);
        let mut m = 2.0;
        while term.leading().abs() > tiny {
            term = term.mul(r, v).div(T::from_base(m), v);
            sum = sum.add(term, v);
            m += 1.0;
        }
        for _ in 0..SQUARINGS {
            sum = sum.mul(sum, v);
        }
        scale2(sum, k as i32)
    }
}

/// Exact multiplication by `2^e` for results in the normal range.
fn scale2<T: Scalar>(x: T, e: i32) -> T {
    let f = 2f64.powi(e);
    let w: Vec<f64> = x.words().iter().map(|c| c * f).collect();
    T::from_words(&w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiword::{DD, QD, TD};
    use crate::oracle::{log2_rel_error, BigFloat, OracleValue};

    fn check<T: Scalar>() {
        let e = Exp::<T>::new();
        for &x in &[0.0, 1.0, -1.0, 0.3, 2.5, -3.75, 10.0, -20.0] {
            let y = e.eval(T::from_base(x));
            let exact = transcendental::exp(&BigFloat::from_f64(x), ORACLE_BITS);
            let l2 = log2_rel_error(y.words(), &OracleValue::Float(exact));
            assert!(l2 < -(T::BITS as f64) + 12.0, "K={} x={x}: 2^{l2}", T::WORDS);
        }
        assert_eq!(e.eval(T::from_base(f64::NEG_INFINITY)).leading(), 0.0);
    }

    #[test]
    fn matches_oracle() {
        check::<DD>();
        check::<TD>();
        check::<QD>();
    }
}
