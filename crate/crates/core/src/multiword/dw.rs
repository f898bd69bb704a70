//! Double-word (DD) addition and multiplication.
//!
//! All routines are straight-line and generic over [`BaseFloat`], so they
//! serve scalars and lane batches alike.

use super::MultiWord;
use crate::eft::{qts, tp, ts, BaseFloat};

type Dw<F> = MultiWord<F, 2>;

/// Sloppy addition: one TwoSum on the leading parts, the trailing parts
/// folded into the error. Loses accuracy under heavy cancellation.
#[inline]
pub fn dw_add_sloppy<F: BaseFloat>(a: Dw<F>, b: Dw<F>) -> Dw<F> {
    let [a0, a1] = a.0;
    let [b0, b1] = b.0;
    let (s, e) = ts(a0, b0);
    let e = e + (a1 + b1);
    let (c0, c1) = qts(s, e);
    MultiWord([c0, c1])
}

/// Accurate addition: TwoSum on both component pairs.
#[inline]
pub fn dw_add_accurate<F: BaseFloat>(a: Dw<F>, b: Dw<F>) -> Dw<F> {
    let [a0, a1] = a.0;
    let [b0, b1] = b.0;
    let (s1, s2) = ts(a0, b0);
    let (t1, t2) = ts(a1, b1);
    let s2 = s2 + t1;
    let (s1, s2) = qts(s1, s2);
    let s2 = s2 + t2;
    let (c0, c1) = qts(s1, s2);
    MultiWord([c0, c1])
}

/// Branch-free reformulation of the accurate addition.
#[inline]
pub fn dw_add_bf<F: BaseFloat>(a: Dw<F>, b: Dw<F>) -> Dw<F> {
    let [a0, a1] = a.0;
    let [b0, b1] = b.0;
    let (g1, g1e) = ts(a0, b0);
    let (g2, g2e) = ts(a1, b1);
    let (g3, g3e) = qts(g1, g2);
    let g4 = g1e + g2e;
    let g5 = g4 + g3e;
    let (c0, c1) = qts(g3, g5);
    MultiWord([c0, c1])
}

#[inline]
pub fn dw_mul<F: BaseFloat>(a: Dw<F>, b: Dw<F>) -> Dw<F> {
    let [a0, a1] = a.0;
    let [b0, b1] = b.0;
    let (p1, p2) = tp(a0, b0);
    let p2 = p2 + (a0 * b1 + a1 * b0);
    let (c0, c1) = qts(p1, p2);
    MultiWord([c0, c1])
}

#[inline]
pub fn dw_mul_bf<F: BaseFloat>(a: Dw<F>, b: Dw<F>) -> Dw<F> {
    let [a0, a1] = a.0;
    let [b0, b1] = b.0;
    let (p00, pe00) = tp(a0, b0);
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let g1 = p01 + p10;
    let g2 = pe00 + g1;
    let (c0, c1) = qts(p00, g2);
    MultiWord([c0, c1])
}
