//! Lane-batched multiword arithmetic.
//!
//! A [`LaneBatch<K, W>`] holds `W` multiword values component-planar: one
//! `[f64; W]` per component. The branch-free kernels run unchanged on it,
//! since [`Lanes`] implements [`BaseFloat`] elementwise and LLVM lowers the
//! fixed-width loops to vector instructions. The standard TD/QD kernels run
//! their terms stage on the batch and then renormalize lane by lane.
//!
//! Every lane of every batch operation is bitwise equal to the scalar
//! operation on that lane: the instruction sequence per lane is identical.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::eft::BaseFloat;
use crate::error::MwError;
use crate::multiword::{dw, qw, tw, MultiFloat, MultiWord, Scalar, Variant};

/// `W` binary64 values operated on elementwise.
#[derive(Clone, Copy, Debug, PartialEq)]
#[repr(C, align(64))]
pub struct Lanes<const W: usize>(pub [f64; W]);

/// `W` multiword values, component-planar.
pub type LaneBatch<const K: usize, const W: usize> = MultiWord<Lanes<W>, K>;

macro_rules! lanes_binop {
    ($tr:ident, $f:ident, $op:tt) => {
        impl<const W: usize> $tr for Lanes<W> {
            type Output = Self;
            #[inline(always)]
            fn $f(self, rhs: Self) -> Self {
                let mut out = [0.0; W];
                for i in 0..W {
                    out[i] = self.0[i] $op rhs.0[i];
                }
                Lanes(out)
            }
        }
    };
}

lanes_binop!(Add, add, +);
lanes_binop!(Sub, sub, -);
lanes_binop!(Mul, mul, *);
lanes_binop!(Div, div, /);

impl<const W: usize> Neg for Lanes<W> {
    type Output = Self;
    #[inline(always)]
    fn neg(self) -> Self {
        Lanes(self.0.map(|x| -x))
    }
}

impl<const W: usize> BaseFloat for Lanes<W> {
    const PRECISION: u32 = 53;

    #[inline(always)]
    fn zero() -> Self {
        Lanes([0.0; W])
    }
    #[inline(always)]
    fn one() -> Self {
        Lanes([1.0; W])
    }
    #[inline(always)]
    fn splat(x: f64) -> Self {
        Lanes([x; W])
    }
    #[inline(always)]
    fn fma(self, b: Self, c: Self) -> Self {
        let mut out = [0.0; W];
        for i in 0..W {
            out[i] = self.0[i].mul_add(b.0[i], c.0[i]);
        }
        Lanes(out)
    }
}

impl<const K: usize, const W: usize> MultiWord<Lanes<W>, K> {
    /// Lane `i` as a scalar multiword.
    #[inline]
    pub fn lane(&self, i: usize) -> MultiWord<f64, K> {
        MultiWord(std::array::from_fn(|k| self.0[k].0[i]))
    }

    #[inline]
    pub fn set_lane(&mut self, i: usize, x: MultiWord<f64, K>) {
        for k in 0..K {
            self.0[k].0[i] = x.0[k];
        }
    }

    /// Every lane set to `x`.
    #[inline]
    pub fn splat(x: MultiWord<f64, K>) -> Self {
        MultiWord(x.0.map(Lanes::<W>::splat))
    }

    /// Up to `W` values; missing lanes are zero.
    #[inline]
    pub fn gather(values: &[MultiWord<f64, K>]) -> Self {
        let mut b = MultiWord([Lanes([0.0; W]); K]);
        for (i, x) in values.iter().take(W).enumerate() {
            b.set_lane(i, *x);
        }
        b
    }

    /// Writes the first `out.len()` lanes (at most `W`).
    #[inline]
    pub fn scatter(&self, out: &mut [MultiWord<f64, K>]) {
        for (i, o) in out.iter_mut().take(W).enumerate() {
            *o = self.lane(i);
        }
    }

    pub fn bits_eq(&self, other: &Self) -> bool {
        (0..W).all(|i| self.lane(i).bits_eq(&other.lane(i)))
    }
}

macro_rules! batch_common {
    ($k:literal) => {
        type Base = Lanes<W>;
        const WORDS: usize = $k;
        const BITS: u32 = $k * 53;
        const NEWTON_STEPS: usize = <MultiWord<f64, $k> as MultiFloat>::NEWTON_STEPS;

        #[inline(always)]
        fn zero() -> Self {
            MultiWord::zero()
        }
        #[inline(always)]
        fn from_base(x: Lanes<W>) -> Self {
            MultiWord::from_base(x)
        }
        #[inline(always)]
        fn leading(self) -> Lanes<W> {
            self.0[0]
        }
        #[inline(always)]
        fn neg(self) -> Self {
            MultiWord::neg(self)
        }
    };
}

impl<const W: usize> MultiFloat for LaneBatch<2, W> {
    batch_common!(2);

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

impl<const W: usize> MultiFloat for LaneBatch<3, W> {
    batch_common!(3);

    #[inline]
    fn add(self, rhs: Self, v: Variant) -> Self {
        match v {
            Variant::Standard => {
                let t = tw::tw_add_terms(self, rhs);
                renorm_lanes_3(t)
            }
            Variant::BranchFree => tw::tw_add_bf(self, rhs),
        }
    }
    #[inline]
    fn mul(self, rhs: Self, v: Variant) -> Self {
        match v {
            Variant::Standard => {
                let t = tw::tw_mul_standard_terms(self, rhs);
                renorm_lanes_3(t)
            }
            Variant::BranchFree => tw::tw_mul_bf(self, rhs),
        }
    }
}

impl<const W: usize> MultiFloat for LaneBatch<4, W> {
    batch_common!(4);

    #[inline]
    fn add(self, rhs: Self, v: Variant) -> Self {
        match v {
            Variant::Standard => {
                let t = qw::qw_add_terms(self, rhs);
                renorm_lanes_4(t)
            }
            Variant::BranchFree => qw::qw_add_bf(self, rhs),
        }
    }
    #[inline]
    fn mul(self, rhs: Self, v: Variant) -> Self {
        match v {
            Variant::Standard => {
                let t = qw::qw_mul_terms(self, rhs);
                renorm_lanes_4(t)
            }
            Variant::BranchFree => qw::qw_mul_bf(self, rhs),
        }
    }
}

/// Scalar renormalization epilogue, one lane at a time.
#[inline]
fn renorm_lanes_3<const W: usize>(t: [Lanes<W>; 4]) -> LaneBatch<3, W> {
    let mut out = MultiWord([Lanes([0.0; W]); 3]);
    for i in 0..W {
        let r = tw::tw_renormalize(t[0].0[i], t[1].0[i], t[2].0[i], t[3].0[i]);
        out.set_lane(i, r);
    }
    out
}

#[inline]
fn renorm_lanes_4<const W: usize>(t: [Lanes<W>; 5]) -> LaneBatch<4, W> {
    let mut out = MultiWord([Lanes([0.0; W]); 4]);
    for i in 0..W {
        let r = qw::qw_renormalize(t[0].0[i], t[1].0[i], t[2].0[i], t[3].0[i], t[4].0[i]);
        out.set_lane(i, r);
    }
    out
}

/// A scalar multiword type together with its lane-batched counterparts.
pub trait Batchable: Scalar {
    type Batch<const W: usize>: MultiFloat<Base = Lanes<W>>;

    fn splat_batch<const W: usize>(x: Self) -> Self::Batch<W>;
    fn gather_batch<const W: usize>(values: &[Self]) -> Self::Batch<W>;
    fn scatter_batch<const W: usize>(b: &Self::Batch<W>, out: &mut [Self]);
}

macro_rules! batchable {
    ($k:literal) => {
        impl Batchable for MultiWord<f64, $k> {
            type Batch<const W: usize> = LaneBatch<$k, W>;

            #[inline(always)]
            fn splat_batch<const W: usize>(x: Self) -> LaneBatch<$k, W> {
                LaneBatch::splat(x)
            }
            #[inline(always)]
            fn gather_batch<const W: usize>(values: &[Self]) -> LaneBatch<$k, W> {
                LaneBatch::gather(values)
            }
            #[inline(always)]
            fn scatter_batch<const W: usize>(b: &LaneBatch<$k, W>, out: &mut [Self]) {
                b.scatter(out)
            }
        }
    };
}

batchable!(2);
batchable!(3);
batchable!(4);

pub fn batch_add<T: MultiFloat>(a: T, b: T, v: Variant) -> T {
    a.add(b, v)
}

pub fn batch_mul<T: MultiFloat>(a: T, b: T, v: Variant) -> T {
    a.mul(b, v)
}

pub fn batch_div<T: MultiFloat>(a: T, b: T, v: Variant) -> T {
    a.div(b, v)
}

/// Packs values into batches of `W`; the last batch is zero-padded.
pub fn pack<const K: usize, const W: usize>(
    values: &[MultiWord<f64, K>],
) -> Result<Vec<LaneBatch<K, W>>, MwError> {
    if values.is_empty() {
        return Err(MwError::Empty("nothing to pack"));
    }
    Ok(values.chunks(W).map(LaneBatch::gather).collect())
}

/// Inverse of [`pack`]; `len` drops the padding lanes.
pub fn unpack<const K: usize, const W: usize>(
    batches: &[LaneBatch<K, W>],
    len: usize,
) -> Vec<MultiWord<f64, K>> {
    let mut out = vec![MultiWord::zero(); batches.len() * W];
    for (b, chunk) in batches.iter().zip(out.chunks_mut(W)) {
        b.scatter(chunk);
    }
    out.truncate(len);
    out
}

/// Lane widths compiled into the library.
pub const WIDTHS: [usize; 3] = [2, 4, 8];

/// Width matching the widest vector unit found at runtime: 8 with
/// AVX-512, 4 with AVX2, otherwise 2.
pub fn default_width() -> usize {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("avx512f") {
            return 8;
        }
        if std::arch::is_x86_feature_detected!("avx2") {
            return 4;
        }
    }
    2
}

pub fn check_width(w: usize) -> Result<usize, MwError> {
    match w {
        0 => Ok(default_width()),
        2 | 4 | 8 => Ok(w),
        _ => Err(MwError::InvalidArgument(format!(
            "lane width {w} not in {{2, 4, 8}}"
        ))),
    }
}

/// Runs `$body` with the const `$W` bound to the runtime width `$w`.
#[macro_export]
macro_rules! with_width {
    ($w:expr, $W:ident => $body:expr) => {
        match $w {
            2 => {
                const $W: usize = 2;
                $body
            }
            4 => {
                const $W: usize = 4;
                $body
            }
            _ => {
                const $W: usize = 8;
                $body
            }
        }
    };
}

/// Elementwise `op` over two slices, evaluated `W` lanes at a time.
pub fn zip_batched<T: Batchable, const W: usize>(
    a: &[T],
    b: &[T],
    out: &mut [T],
    op: impl Fn(T::Batch<W>, T::Batch<W>) -> T::Batch<W>,
) {
    assert!(a.len() == b.len() && a.len() == out.len());
    for ((x, y), o) in a.chunks(W).zip(b.chunks(W)).zip(out.chunks_mut(W)) {
        let r = op(T::gather_batch(x), T::gather_batch(y));
        T::scatter_batch(&r, o);
    }
}
