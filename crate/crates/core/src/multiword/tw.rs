//! Triple-word (TD) addition and multiplication.
//!
//! The standard routines split into a straight-line "terms" stage, generic
//! over [`BaseFloat`], and a branching renormalization on scalars. Lane
//! batches run the terms stage vectorized and renormalize lane by lane.

use super::MultiWord;
use crate::eft::{qts, tp, ts, BaseFloat, ScalarFloat};

type Tw<F> = MultiWord<F, 3>;

/// Renormalizes a four-term expansion into three non-overlapping words.
///
/// This is the four-input quad-double renormalization; its fourth output
/// word is folded into the third.
#[inline]
pub fn tw_renormalize<F: ScalarFloat>(c0: F, c1: F, c2: F, c3: F) -> Tw<F> {
    if !c0.is_finite() {
        return MultiWord([c0, c1, c2]);
    }
    let (s0, c3) = qts(c2, c3);
    let (s0, c2) = qts(c1, s0);
    let (c0, c1) = qts(c0, s0);

    let (mut s0, mut s1) = (c0, c1);
    let mut s2 = F::zero();
    let mut s3 = F::zero();
    if !s1.is_zero() {
        (s1, s2) = qts(s1, c2);
        if !s2.is_zero() {
            (s2, s3) = qts(s2, c3);
        } else {
            (s1, s2) = qts(s1, c3);
        }
    } else {
        (s0, s1) = qts(s0, c2);
        if !s1.is_zero() {
            (s1, s2) = qts(s1, c3);
        } else {
            (s0, s1) = qts(s0, c3);
        }
    }
    MultiWord([s0, s1, s2 + s3])
}

#[inline]
pub fn tw_add_terms<F: BaseFloat>(a: Tw<F>, b: Tw<F>) -> [F; 4] {
    let [a0, a1, a2] = a.0;
    let [b0, b1, b2] = b.0;
    let s0 = a0 + b0;
    let s1 = a1 + b1;
    let s2 = a2 + b2;
    let v0 = s0 - a0;
    let v1 = s1 - a1;
    let v2 = s2 - a2;
    let u0 = s0 - v0;
    let u1 = s1 - v1;
    let u2 = s2 - v2;
    let w0 = a0 - u0;
    let w1 = a1 - u1;
    let w2 = a2 - u2;
    let u0 = b0 - v0;
    let u1 = b1 - v1;
    let u2 = b2 - v2;
    let t0 = w0 + u0;
    let t1 = w1 + u1;
    let t2 = w2 + u2;

    let (s1, t0) = ts(s1, t0);
    let (i1, i2) = ts(s2, t0);
    let (s2, i3) = ts(t1, i1);
    let (t0, t1) = ts(i2, i3);
    let t0 = t0 + t1 + t2;
    [s0, s1, s2, t0]
}

#[inline]
pub fn tw_add<F: ScalarFloat>(a: Tw<F>, b: Tw<F>) -> Tw<F> {
    let [s0, s1, s2, t0] = tw_add_terms(a, b);
    tw_renormalize(s0, s1, s2, t0)
}

/// Multiplication terms exactly as the published listing has them,
/// including assignments whose values never reach the result.
#[inline]
pub fn tw_mul_terms<F: BaseFloat>(a: Tw<F>, b: Tw<F>) -> [F; 4] {
    let [a0, a1, a2] = a.0;
    let [b0, b1, b2] = b.0;
    let (p0, q0) = tp(a0, b0);
    let (p1, q1) = tp(a0, b1);
    let (p2, q2) = tp(a1, b0);
    let (p3, q3) = tp(a0, b2);
    let (p4, q4) = tp(a1, b1);
    let (p5, q5) = tp(a2, b0);

    let (i1, i2) = ts(p1, p2);
    let (p1, i3) = ts(q0, i1);
    let (p2, q0) = ts(i2, i3);

    let (i1, i2) = ts(p2, q1);
    let (p2, i3) = ts(q2, i1);
    let (q1, q2) = ts(i2, i3);

    let (i1, i2) = ts(p3, p4);
    let (p3, i3) = ts(p5, i1);
    let (p4, p5) = ts(i2, i3);

    let (s0, t0) = ts(p2, p3);
    let (s1, t1) = ts(q1, p4);
    let s2 = q2 + p5;
    let (s1, t0) = ts(s1, t0);
    let _s2 = s2 + (t0 + t1);
    let (q0, q3) = ts(q0, q3);
    let (q4, q5) = ts(q4, q5);
    let (_t0, t1) = ts(q0, q4);
    let _t1 = t1 + (q3 + q5);
    let (t0, _t1) = ts(q3, s1);
    [p0, p1, s0, t0]
}

/// Multiplication terms with every partial sum carried into the result.
#[inline]
pub fn tw_mul_cleaned_terms<F: BaseFloat>(a: Tw<F>, b: Tw<F>) -> [F; 4] {
    let [a0, a1, a2] = a.0;
    let [b0, b1, b2] = b.0;
    let (p0, q0) = tp(a0, b0);
    let (p1, q1) = tp(a0, b1);
    let (p2, q2) = tp(a1, b0);
    let (p3, q3) = tp(a0, b2);
    let (p4, q4) = tp(a1, b1);
    let (p5, q5) = tp(a2, b0);

    let (i1, i2) = ts(p1, p2);
    let (p1, i3) = ts(q0, i1);
    let (p2, q0) = ts(i2, i3);

    let (i1, i2) = ts(p2, q1);
    let (p2, i3) = ts(q2, i1);
    let (q1, q2) = ts(i2, i3);

    let (i1, i2) = ts(p3, p4);
    let (p3, i3) = ts(p5, i1);
    let (p4, p5) = ts(i2, i3);

    let (s0, t0) = ts(p2, p3);
    let (s1, t1) = ts(q1, p4);
    let s2 = q2 + p5;
    let (s1, t0) = ts(s1, t0);
    let s2 = s2 + (t0 + t1);
    let (q0, q3) = ts(q0, q3);
    let (q4, q5) = ts(q4, q5);
    let (t0, t1) = ts(q0, q4);
    let t1 = t1 + (q3 + q5);
    let (t0, e) = ts(t0, s1);
    let tail = e + t1 + s2 + (a1 * b2 + a2 * b1);
    [p0, p1, s0, t0 + tail]
}

/// Listing version of the standard multiplication.
#[inline]
pub fn tw_mul<F: ScalarFloat>(a: Tw<F>, b: Tw<F>) -> Tw<F> {
    let [c0, c1, c2, c3] = tw_mul_terms(a, b);
    tw_renormalize(c0, c1, c2, c3)
}

#[inline]
pub fn tw_mul_cleaned<F: ScalarFloat>(a: Tw<F>, b: Tw<F>) -> Tw<F> {
    let [c0, c1, c2, c3] = tw_mul_cleaned_terms(a, b);
    tw_renormalize(c0, c1, c2, c3)
}

/// The standard multiplication used by [`super::MultiFloat`]: the listing
/// version, or the cleaned one with the `tw-mul-cleaned` feature.
#[inline]
pub fn tw_mul_standard<F: ScalarFloat>(a: Tw<F>, b: Tw<F>) -> Tw<F> {
    if cfg!(feature = "tw-mul-cleaned") {
        tw_mul_cleaned(a, b)
    } else {
        tw_mul(a, b)
    }
}

#[inline]
pub fn tw_mul_standard_terms<F: BaseFloat>(a: Tw<F>, b: Tw<F>) -> [F; 4] {
    if cfg!(feature = "tw-mul-cleaned") {
        tw_mul_cleaned_terms(a, b)
    } else {
        tw_mul_terms(a, b)
    }
}

#[inline]
pub fn tw_add_bf<F: BaseFloat>(x: Tw<F>, y: Tw<F>) -> Tw<F> {
    let [x0, x1, x2] = x.0;
    let [y0, y1, y2] = y.0;
    let (a1, b1) = ts(x0, y0);
    let (c1, d1) = ts(x1, y1);
    let (e1, f1) = ts(x2, y2);
    let (a2, c2) = qts(a1, c1);
    let b2 = b1 + f1;
    let (d2, e2) = ts(d1, e1);
    let (a3, d3) = qts(a2, d2);
    let (b3, c3) = ts(b2, c2);
    let c4 = c3 + e2;
    let (c5, d5) = ts(c4, d3);
    let (b6, c6) = ts(b3, c5);
    let (r0, b7) = qts(a3, b6);
    let c7 = c6 + d5;
    let (r1, r2) = qts(b7, c7);
    MultiWord([r0, r1, r2])
}

#[inline]
pub fn tw_mul_bf<F: BaseFloat>(x: Tw<F>, y: Tw<F>) -> Tw<F> {
    let [x0, x1, x2] = x.0;
    let [y0, y1, y2] = y.0;
    let (a0, b0) = tp(x0, y0);
    let (c0, e0) = tp(x0, y1);
    let (d0, f0) = tp(x1, y0);
    let g0 = x0 * y2;
    let h0 = x1 * y1;
    let i0 = x2 * y0;
    let (c1, d1) = ts(c0, d0);
    let e1 = e0 + f0;
    let g1 = g0 + i0;
    let (b2, c2) = ts(b0, c1);
    let g2 = g1 + h0;
    let (a3, b3) = qts(a0, b2);
    let c3 = c2 + d1;
    let e3 = e1 + g2;
    let c4 = c3 + e3;
    let (b5, c5) = qts(b3, c4);
    let (r0, b6) = qts(a3, b5);
    let (r1, r2) = qts(b6, c5);
    MultiWord([r0, r1, r2])
}
