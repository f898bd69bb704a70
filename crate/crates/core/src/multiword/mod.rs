//! Double-, triple- and quadruple-word arithmetic.
//!
//! A [`MultiWord<F, K>`] is the unevaluated sum of `K` base floats, leading
//! component first. Every arithmetic entry point takes a [`Variant`]:
//! `Standard` ends in the conventional branching renormalization, while
//! `BranchFree` uses straight-line formulations that vectorize across lanes.

mod complex;
mod convert;
pub mod dw;
mod elementary;
pub mod qw;
pub mod tw;

use std::fmt::Debug;

use crate::eft::{BaseFloat, ScalarFloat};

pub use complex::ComplexMW;
pub use convert::{default_digits, round_trip_digits};
pub use elementary::Exp;

/// `K` base floats whose exact sum is the represented value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MultiWord<F, const K: usize>(pub [F; K]);

/// Double-double, 106-bit.
pub type DD = MultiWord<f64, 2>;
/// Triple-double, 159-bit.
pub type TD = MultiWord<f64, 3>;
/// Quadruple-double, 212-bit.
pub type QD = MultiWord<f64, 4>;

/// Algorithm family used for addition and multiplication.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Conventional algorithms with renormalization.
    #[default]
    Standard,
    /// Branch-free algorithms.
    BranchFree,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Standard, Variant::BranchFree];

    pub fn short_name(self) -> &'static str {
        match self {
            Variant::Standard => "std",
            Variant::BranchFree => "bf",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = crate::MwError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "std" | "standard" | "nobf" => Ok(Variant::Standard),
            "bf" | "branchfree" | "branch-free" => Ok(Variant::BranchFree),
            _ => Err(crate::MwError::InvalidArgument(format!("unknown variant `{s}`"))),
        }
    }
}

impl<F: Copy, const K: usize> MultiWord<F, K> {
    pub const fn new(components: [F; K]) -> Self {
        MultiWord(components)
    }

    pub fn components(&self) -> &[F; K] {
        &self.0
    }
}

impl<F: BaseFloat, const K: usize> MultiWord<F, K> {
    pub fn zero() -> Self {
        MultiWord([F::zero(); K])
    }

    pub fn from_base(x: F) -> Self {
        let mut c = [F::zero(); K];
        c[0] = x;
        MultiWord(c)
    }

    /// Componentwise sign flip; exact.
    pub fn neg(self) -> Self {
        MultiWord(self.0.map(|c| -c))
    }
}

impl<const K: usize> MultiWord<f64, K> {
    /// Bitwise equality of every component (distinguishes -0.0 and NaN payloads).
    pub fn bits_eq(&self, other: &Self) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| a.to_bits() == b.to_bits())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// Approximate magnitude from the leading component.
    pub fn to_f64(&self) -> f64 {
        self.0[0]
    }
}

/// Arithmetic over `K`-word values. Implemented for scalar multiwords and
/// for lane batches, so the linear-algebra and polynomial kernels are
/// written once for both.
pub trait MultiFloat: Copy + Debug + Send + Sync + 'static {
    type Base: BaseFloat;
    /// Number of components.
    const WORDS: usize;
    /// Nominal significand precision in bits (106/159/212 over binary64).
    const BITS: u32;
    /// Newton steps used by [`MultiFloat::div`].
    const NEWTON_STEPS: usize;

    fn zero() -> Self;
    fn from_base(x: Self::Base) -> Self;
    fn leading(self) -> Self::Base;
    fn neg(self) -> Self;
    fn add(self, rhs: Self, v: Variant) -> Self;
    fn mul(self, rhs: Self, v: Variant) -> Self;

    fn one() -> Self {
        Self::from_base(Self::Base::one())
    }

    fn sub(self, rhs: Self, v: Variant) -> Self {
        self.add(rhs.neg(), v)
    }

    /// Newton reciprocal `y <- y + y (1 - b y)` seeded with `1 / b[0]`, then
    /// one multiplication by the dividend. Division by zero propagates the
    /// base format's infinities and NaNs.
    fn div(self, rhs: Self, v: Variant) -> Self {
        let one = Self::one();
        let mut y = Self::from_base(Self::Base::one() / rhs.leading());
        for _ in 0..Self::NEWTON_STEPS {
            let r = one.sub(rhs.mul(y, v), v);
            y = y.add(y.mul(r, v), v);
        }
        self.mul(y, v)
    }
}

impl<F: ScalarFloat> MultiFloat for MultiWord<F, 2> {
    type Base = F;
    const WORDS: usize = 2;
    const BITS: u32 = 2 * F::PRECISION;
    const NEWTON_STEPS: usize = 2;

    #[inline]
    fn zero() -> Self {
        MultiWord::zero()
    }
    #[inline]
    fn from_base(x: F) -> Self {
        MultiWord::from_base(x)
    }
    #[inline]
    fn leading(self) -> F {
        self.0[0]
    }
    #[inline]
    fn neg(self) -> Self {
        MultiWord::neg(self)
    }
    #[inline]
    fn add(self, rhs: Self, v: Variant) -> Self {
        match v {
            Variant::Standard => dw::dw_add_accurate(self, rhs),
            Variant::BranchFree => dw::dw_add_bf(self, rhs),
        }
    }
    #[inline]
    fn mul(self, rhs: Self, v: Variant) -> Self {
        match v {
            Variant::Standard => dw::dw_mul(self, rhs),
            Variant::BranchFree => dw::dw_mul_bf(self, rhs),
        }
    }
}

impl<F: ScalarFloat> MultiFloat for MultiWord<F, 3> {
    type Base = F;
    const WORDS: usize = 3;
    const BITS: u32 = 3 * F::PRECISION;
    const NEWTON_STEPS: usize = 3;

    #[inline]
    fn zero() -> Self {
        MultiWord::zero()
    }
    #[inline]
    fn from_base(x: F) -> Self {
        MultiWord::from_base(x)
    }
    #[inline]
    fn leading(self) -> F {
        self.0[0]
    }
    #[inline]
    fn neg(self) -> Self {
        MultiWord::neg(self)
    }
    #[inline]
    fn add(self, rhs: Self, v: Variant) -> Self {
        match v {
            Variant::Standard => tw::tw_add(self, rhs),
            Variant::BranchFree => tw::tw_add_bf(self, rhs),
        }
    }
    #[inline]
    fn mul(self, rhs: Self, v: Variant) -> Self {
        match v {
            Variant::Standard => tw::tw_mul_standard(self, rhs),
            Variant::BranchFree => tw::tw_mul_bf(self, rhs),
        }
    }
}

impl<F: ScalarFloat> MultiFloat for MultiWord<F, 4> {
    type Base = F;
    const WORDS: usize = 4;
    const BITS: u32 = 4 * F::PRECISION;
    const NEWTON_STEPS: usize = 3;

    #[inline]
    fn zero() -> Self {
        MultiWord::zero()
    }
    #[inline]
    fn from_base(x: F) -> Self {
        MultiWord::from_base(x)
    }
    #[inline]
    fn leading(self) -> F {
        self.0[0]
    }
    #[inline]
    fn neg(self) -> Self {
        MultiWord::neg(self)
    }
    #[inline]
    fn add(self, rhs: Self, v: Variant) -> Self {
        match v {
            Variant::Standard => qw::qw_add(self, rhs),
            Variant::BranchFree => qw::qw_add_bf(self, rhs),
        }
    }
    #[inline]
    fn mul(self, rhs: Self, v: Variant) -> Self {
        match v {
            Variant::Standard => qw::qw_mul(self, rhs),
            Variant::BranchFree => qw::qw_mul_bf(self, rhs),
        }
    }
}

/// Scalar binary64 multiwords: the types with exact oracle conversions.
pub trait Scalar: MultiFloat<Base = f64> + PartialEq {
    fn words(&self) -> &[f64];
    fn from_words(w: &[f64]) -> Self;
}

impl<const K: usize> Scalar for MultiWord<f64, K>
where
    MultiWord<f64, K>: MultiFloat<Base = f64>,
{
    fn words(&self) -> &[f64] {
        &self.0
    }
    fn from_words(w: &[f64]) -> Self {
        let mut c = [0.0; K];
        c.copy_from_slice(w);
        MultiWord(c)
    }
}

macro_rules! std_ops {
    ($k:literal) => {
        impl std::ops::Add for MultiWord<f64, $k> {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                MultiFloat::add(self, rhs, Variant::Standard)
            }
        }
        impl std::ops::Sub for MultiWord<f64, $k> {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                MultiFloat::sub(self, rhs, Variant::Standard)
            }
        }
        impl std::ops::Mul for MultiWord<f64, $k> {
            type Output = Self;
            fn mul(self, rhs: Self) -> Self {
                MultiFloat::mul(self, rhs, Variant::Standard)
            }
        }
        impl std::ops::Div for MultiWord<f64, $k> {
            type Output = Self;
            fn div(self, rhs: Self) -> Self {
                MultiFloat::div(self, rhs, Variant::Standard)
            }
        }
        impl std::ops::Neg for MultiWord<f64, $k> {
            type Output = Self;
            fn neg(self) -> Self {
                MultiWord::neg(self)
            }
        }
    };
}

std_ops!(2);
std_ops!(3);
std_ops!(4);

#[cfg(test)]
mod tests;
