//! Error-free transformations on the base floating-point format.
//!
//! Every routine here is straight-line code: no comparisons, no branches.
//! They are generic over [`BaseFloat`] so the same instruction sequence runs
//! on plain `f64`, on SIMD lane groups ([`crate::batch::Lanes`]) and on the
//! operation-counting float in [`crate::counting`].
//!
//! Correctness relies on IEEE round-to-nearest-even and on the compiler not
//! reassociating or contracting floating-point expressions. Rust guarantees
//! the latter; [`rounding_mode_is_nearest_even`] checks the former.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arithmetic needed by the branch-free kernels.
pub trait BaseFloat:
    'static
    + Copy
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Significand precision of the scalar format (53 for binary64).
    const PRECISION: u32;

    fn zero() -> Self;
    fn one() -> Self;
    fn splat(x: f64) -> Self;
    /// `self * b + c` with a single rounding.
    fn fma(self, b: Self, c: Self) -> Self;
}

/// Scalar base floats additionally support the comparisons that the
/// renormalizing (branching) algorithms need.
pub trait ScalarFloat: BaseFloat + PartialOrd {
    fn abs(self) -> Self;
    fn is_zero(self) -> bool;
    fn is_finite(self) -> bool;
    fn to_f64(self) -> f64;
}

impl BaseFloat for f64 {
    const PRECISION: u32 = 53;

    #[inline(always)]
    fn zero() -> Self {
        0.0
    }
    #[inline(always)]
    fn one() -> Self {
        1.0
    }
    #[inline(always)]
    fn splat(x: f64) -> Self {
        x
    }
    #[inline(always)]
    fn fma(self, b: Self, c: Self) -> Self {
        self.mul_add(b, c)
    }
}

impl ScalarFloat for f64 {
    #[inline(always)]
    fn abs(self) -> Self {
        f64::abs(self)
    }
    #[inline(always)]
    fn is_zero(self) -> bool {
        self == 0.0
    }
    #[inline(always)]
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    #[inline(always)]
    fn to_f64(self) -> f64 {
        self
    }
}

impl BaseFloat for f32 {
    const PRECISION: u32 = 24;

    #[inline(always)]
    fn zero() -> Self {
        0.0
    }
    #[inline(always)]
    fn one() -> Self {
        1.0
    }
    #[inline(always)]
    fn splat(x: f64) -> Self {
        x as f32
    }
    #[inline(always)]
    fn fma(self, b: Self, c: Self) -> Self {
        self.mul_add(b, c)
    }
}

impl ScalarFloat for f32 {
    #[inline(always)]
    fn abs(self) -> Self {
        f32::abs(self)
    }
    #[inline(always)]
    fn is_zero(self) -> bool {
        self == 0.0
    }
    #[inline(always)]
    fn is_finite(self) -> bool {
        f32::is_finite(self)
    }
    #[inline(always)]
    fn to_f64(self) -> f64 {
        self as f64
    }
}

/// Rounded result and its exact rounding error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SumAndErr<F> {
    pub s: F,
    pub e: F,
}

/// `s = fl(a + b)`, `e = a + b - s`, valid when `|a| >= |b|` or `a == 0`.
/// The precondition is not checked.
#[inline(always)]
pub fn quick_two_sum<F: BaseFloat>(a: F, b: F) -> SumAndErr<F> {
    let s = a + b;
    let e = b - (s - a);
    SumAndErr { s, e }
}

/// `s = fl(a + b)`, `e = a + b - s` for any finite operands.
#[inline(always)]
pub fn two_sum<F: BaseFloat>(a: F, b: F) -> SumAndErr<F> {
    let s = a + b;
    let v = s - a;
    let e = (a - (s - v)) + (b - v);
    SumAndErr { s, e }
}

/// `p = fl(a * b)`, `e = a * b - p` via a fused multiply-add. Exact as long
/// as the product neither overflows nor loses bits to underflow.
#[inline(always)]
pub fn two_prod<F: BaseFloat>(a: F, b: F) -> SumAndErr<F> {
    let p = a * b;
    let e = a.fma(b, -p);
    SumAndErr { s: p, e }
}

/// Tuple forms used inside the multiword kernels.
#[inline(always)]
pub(crate) fn qts<F: BaseFloat>(a: F, b: F) -> (F, F) {
    let r = quick_two_sum(a, b);
    (r.s, r.e)
}

#[inline(always)]
pub(crate) fn ts<F: BaseFloat>(a: F, b: F) -> (F, F) {
    let r = two_sum(a, b);
    (r.s, r.e)
}

#[inline(always)]
pub(crate) fn tp<F: BaseFloat>(a: F, b: F) -> (F, F) {
    let r = two_prod(a, b);
    (r.s, r.e)
}

/// Probes binary64 addition for round-to-nearest, ties-to-even.
pub fn rounding_mode_is_nearest_even() -> bool {
    let one = std::hint::black_box(1.0f64);
    let half_ulp = std::hint::black_box(f64::EPSILON / 2.0);
    let above = std::hint::black_box(1.0 + f64::EPSILON);
    // 1 + 2^-53 is a tie that must round down to the even neighbour 1,
    // (1 + 2^-52) + 2^-53 a tie that must round up to 1 + 2^-51,
    // and -1 - 2^-53 must stay symmetric.
    one + half_ulp == 1.0
        && above + half_ulp == 1.0 + 2.0 * f64::EPSILON
        && -one - half_ulp == -1.0
        && one + half_ulp * 1.5 == 1.0 + f64::EPSILON
}

/// Whether the running CPU executes FMA in hardware. `f64::mul_add` is
/// correctly rounded either way; without hardware support it is slow.
pub fn hardware_fma() -> bool {
    #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
    {
        std::arch::is_x86_feature_detected!("fma")
    }
    #[cfg(target_arch = "aarch64")]
    {
        true
    }
    #[cfg(not(any(target_arch = "x86", target_arch = "x86_64", target_arch = "aarch64")))]
    {
        false
    }
}
