//! Quadruple-word (QD) addition and multiplication.
//!
//! The standard routines follow the quad-double library's sloppy add and
//! mul, split like the TD ones into vectorizable terms and a scalar
//! renormalization.

use super::MultiWord;
use crate::eft::{qts, tp, ts, BaseFloat, ScalarFloat};

type Qw<F> = MultiWord<F, 4>;

/// Five-input quad-double renormalization.
#[inline]
pub fn qw_renormalize<F: ScalarFloat>(c0: F, c1: F, c2: F, c3: F, c4: F) -> Qw<F> {
    if !c0.is_finite() {
        return MultiWord([c0, c1, c2, c3]);
    }
    let (s0, c4) = qts(c3, c4);
    let (s0, c3) = qts(c2, s0);
    let (s0, c2) = qts(c1, s0);
    let (c0, c1) = qts(c0, s0);

    let (mut s0, mut s1) = (c0, c1);
    let mut s2 = F::zero();
    let mut s3 = F::zero();
    if !s1.is_zero() {
        (s1, s2) = qts(s1, c2);
        if !s2.is_zero() {
            (s2, s3) = qts(s2, c3);
            if !s3.is_zero() {
                s3 = s3 + c4;
            } else {
                (s2, s3) = qts(s2, c4);
            }
        } else {
            (s1, s2) = qts(s1, c3);
            if !s2.is_zero() {
                (s2, s3) = qts(s2, c4);
            } else {
                (s1, s2) = qts(s1, c4);
            }
        }
    } else {
        (s0, s1) = qts(s0, c2);
        if !s1.is_zero() {
            (s1, s2) = qts(s1, c3);
            if !s2.is_zero() {
                (s2, s3) = qts(s2, c4);
            } else {
                (s1, s2) = qts(s1, c4);
            }
        } else {
            (s0, s1) = qts(s0, c3);
            if !s1.is_zero() {
                (s1, s2) = qts(s1, c4);
            } else {
                (s0, s1) = qts(s0, c4);
            }
        }
    }
    MultiWord([s0, s1, s2, s3])
}

#[inline(always)]
fn three_sum<F: BaseFloat>(a: F, b: F, c: F) -> (F, F, F) {
    let (t1, t2) = ts(a, b);
    let (a, t3) = ts(c, t1);
    let (b, c) = ts(t2, t3);
    (a, b, c)
}

#[inline(always)]
fn three_sum2<F: BaseFloat>(a: F, b: F, c: F) -> (F, F) {
    let (t1, t2) = ts(a, b);
    let (a, t3) = ts(c, t1);
    (a, t2 + t3)
}

#[inline]
pub fn qw_add_terms<F: BaseFloat>(a: Qw<F>, b: Qw<F>) -> [F; 5] {
    let mut s = [F::zero(); 4];
    let mut t = [F::zero(); 4];
    for i in 0..4 {
        s[i] = a.0[i] + b.0[i];
        let v = s[i] - a.0[i];
        let u = s[i] - v;
        let w = a.0[i] - u;
        let u = b.0[i] - v;
        t[i] = w + u;
    }
    let [s0, s1, s2, s3] = s;
    let [t0, t1, t2, t3] = t;
    let (s1, t0) = ts(s1, t0);
    let (s2, t0, t1) = three_sum(s2, t0, t1);
    let (s3, t0) = three_sum2(s3, t0, t2);
    let t0 = t0 + t1 + t3;
    [s0, s1, s2, s3, t0]
}

#[inline]
pub fn qw_add<F: ScalarFloat>(a: Qw<F>, b: Qw<F>) -> Qw<F> {
    let [c0, c1, c2, c3, c4] = qw_add_terms(a, b);
    qw_renormalize(c0, c1, c2, c3, c4)
}

#[inline]
pub fn qw_mul_terms<F: BaseFloat>(a: Qw<F>, b: Qw<F>) -> [F; 5] {
    let [a0, a1, a2, a3] = a.0;
    let [b0, b1, b2, b3] = b.0;
    let (p0, q0) = tp(a0, b0);
    let (p1, q1) = tp(a0, b1);
    let (p2, q2) = tp(a1, b0);
    let (p3, q3) = tp(a0, b2);
    let (p4, q4) = tp(a1, b1);
    let (p5, q5) = tp(a2, b0);

    let (p1, p2, q0) = three_sum(p1, p2, q0);
    let (p2, q1, q2) = three_sum(p2, q1, q2);
    let (p3, p4, p5) = three_sum(p3, p4, p5);

    let (s0, t0) = ts(p2, p3);
    let (s1, t1) = ts(q1, p4);
    let s2 = q2 + p5;
    let (s1, t0) = ts(s1, t0);
    let s2 = s2 + (t0 + t1);

    let s1 = s1 + (a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0 + q0 + q3 + q4 + q5);
    [p0, p1, s0, s1, s2]
}

#[inline]
pub fn qw_mul<F: ScalarFloat>(a: Qw<F>, b: Qw<F>) -> Qw<F> {
    let [c0, c1, c2, c3, c4] = qw_mul_terms(a, b);
    qw_renormalize(c0, c1, c2, c3, c4)
}

#[inline]
pub fn qw_add_bf<F: BaseFloat>(x: Qw<F>, y: Qw<F>) -> Qw<F> {
    let [x0, x1, x2, x3] = x.0;
    let [y0, y1, y2, y3] = y.0;
    let (a1, b1) = ts(x0, y0);
    let (c1, d1) = ts(x1, y1);
    let (e1, f1) = ts(x2, y2);
    let (g1, h1) = ts(x3, y3);
    let (a2, c2) = qts(a1, c1);
    let b2 = b1 + h1;
    let (d2, e2) = ts(d1, e1);
    let (f2, g2) = ts(f1, g1);
    let (b3, g3) = ts(b2, g2);
    let (c3, d3) = qts(c2, d2);
    let (e3, f3) = ts(e2, f2);
    let (a4, c4) = qts(a2, c3);
    let (d4, e4) = qts(d3, e3);
    let (b5, d5) = ts(b3, d4);
    let e5 = e4 + f3;
    let (b6, c6) = ts(b5, c4);
    let (d6, e6) = ts(d5, e5);
    let (a7, b7) = qts(a4, b6);
    let (c7, d7) = qts(c6, d6);
    let e8 = e6 + g3;
    let (b8, c8) = qts(b7, c7);
    let d9 = d7 + e8;
    let (r0, b10) = qts(a7, b8);
    let (c10, d10) = qts(c8, d9);
    let (r1, c11) = qts(b10, c10);
    let (r2, r3) = qts(c11, d10);
    MultiWord([r0, r1, r2, r3])
}

#[inline]
pub fn qw_mul_bf<F: BaseFloat>(x: Qw<F>, y: Qw<F>) -> Qw<F> {
    let [x0, x1, x2, x3] = x.0;
    let [y0, y1, y2, y3] = y.0;
    let (a0, b0) = tp(x0, y0);
    let (c0, e0) = tp(x0, y1);
    let (d0, f0) = tp(x1, y0);
    let (g0, j0) = tp(x0, y2);
    let (h0, k0) = tp(x1, y1);
    let (i0, l0) = tp(x2, y0);
    let m0 = x0 * y3;
    let n0 = x1 * y2;
    let o0 = x2 * y1;
    let p0 = x3 * y0;
    let (c1, d1) = ts(c0, d0);
    let (e1, f1) = ts(e0, f0);
    let (g1, i1) = ts(g0, i0);
    let j1 = j0 + l0;
    let m1 = m0 + p0;
    let n1 = n0 + o0;
    let (b2, c2) = ts(b0, c1);
    let (e2, h2) = ts(e1, h0);
    let f2 = f1 + j1;
    let i2 = i1 + k0;
    let m2 = m1 + n1;
    let (a3, b3) = qts(a0, b2);
    let (c3, d3) = qts(c2, d1);
    let (e3, g3) = ts(e2, g1);
    let f3 = f2 + m2;
    let h3 = h2 + i2;
    let (c4, e4) = ts(c3, e3);
    let d4 = d3 + h3;
    let f4 = f3 + g3;
    let d5 = d4 + e4;
    let (c6, d6) = ts(c4, d5);
    let (b7, c7) = ts(b3, c6);
    let d7 = d6 + f4;
    let (r0, b8) = qts(a3, b7);
    let (c8, d8) = ts(c7, d7);
    let (r1, c9) = ts(b8, c8);
    let (r2, r3) = qts(c9, d8);
    MultiWord([r0, r1, r2, r3])
}
