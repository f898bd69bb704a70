use super::dw::*;
use super::qw::*;
use super::tw::*;
use super::*;
use crate::counting::{count, Counted};
use crate::oracle::{log2_rel_error, OracleValue, Rational};
use crate::rng::{random_multiword, rng_from_seed};

const P60: f64 = 8.673617379884035e-19; // 2^-60
const P120: f64 = 7.52316384526264e-37; // 2^-120

fn exact_sum(a: &[f64], b: &[f64]) -> OracleValue {
    OracleValue::from_words(a).exact_add(&OracleValue::from_words(b))
}

fn exact_prod(a: &[f64], b: &[f64]) -> OracleValue {
    OracleValue::from_words(a).exact_mul(&OracleValue::from_words(b))
}

fn exact_quot(a: &[f64], b: &[f64]) -> OracleValue {
    OracleValue::from_words(a)
        .exact_div(&OracleValue::from_words(b))
        .unwrap()
}

fn is_normalized(c: &[f64]) -> bool {
    c.windows(2).all(|w| {
        if w[0] == 0.0 {
            return w[1] == 0.0;
        }
        let ulp = 2f64.powi(w[0].abs().log2().floor() as i32 - 52);
        w[1].abs() <= ulp / 2.0
    })
}

#[test]
fn spec_constants() {
    assert_eq!(P60, 2f64.powi(-60));
    assert_eq!(P120, 2f64.powi(-120));
    assert_eq!(<DD as MultiFloat>::BITS, 106);
    assert_eq!(<TD as MultiFloat>::BITS, 159);
    assert_eq!(<QD as MultiFloat>::BITS, 212);
}

#[test]
fn dd_add_examples() {
    let x = DD::new([1.5, 3.0 * P60]);
    let z = DD::zero();
    for f in [dw_add_sloppy::<f64>, dw_add_accurate, dw_add_bf] {
        assert_eq!(f(x, z), x);
        let c = f(x, x.neg());
        assert_eq!(c.0, [0.0, 0.0]);
        let a = DD::new([1.0, P60]);
        let b = DD::new([2f64.powi(-53), 0.0]);
        let r = f(a, b);
        let l2 = log2_rel_error(&r.0, &exact_sum(&a.0, &b.0));
        assert!(l2 <= -104.0, "2^{l2}");
    }
}

#[test]
fn dd_mul_examples() {
    let x = DD::new([1.5, 3.0 * P60]);
    for f in [dw_mul::<f64>, dw_mul_bf] {
        assert_eq!(f(x, DD::from_base(1.0)), x);
        assert_eq!(f(DD::from_base(2.0), DD::from_base(3.0)), DD::from_base(6.0));
    }
}

#[test]
fn identities_for_all_precisions() {
    fn check<const K: usize>()
    where
        MultiWord<f64, K>: MultiFloat<Base = f64>,
    {
        let mut rng = rng_from_seed(5);
        for _ in 0..200 {
            let x: MultiWord<f64, K> = random_multiword(&mut rng, -50, 50);
            for v in Variant::ALL {
                assert_eq!(x.add(MultiWord::zero(), v), x, "{v:?}");
                assert_eq!(x.mul(MultiWord::from_base(1.0), v), x, "{v:?}");
                let d = x.sub(x, v);
                assert!(d.0.iter().all(|&c| c == 0.0), "{v:?} {d:?}");
                let six = MultiWord::<f64, K>::from_base(2.0).mul(MultiWord::from_base(3.0), v);
                assert_eq!(six, MultiWord::from_base(6.0));
                assert_eq!(x.div(MultiWord::from_base(1.0), v), x, "{v:?}");
            }
        }
    }
    check::<2>();
    check::<3>();
    check::<4>();
}

#[test]
fn neg_and_sub() {
    let z = TD::zero().neg();
    assert!(z.0.iter().all(|&c| c == 0.0));
    let x = TD::new([1.0, P60, P120]);
    assert_eq!(x.neg().0, [-1.0, -P60, -P120]);
}

#[test]
fn tw_renormalize_examples() {
    assert_eq!(tw_renormalize(3.0, 0.0, 0.0, 0.0).0, [3.0, 0.0, 0.0]);
    assert_eq!(tw_renormalize(1.0, P60, P120, 0.0).0, [1.0, P60, P120]);
    let r = tw_renormalize(1.0, 1.0, P60, 0.0);
    assert_eq!(r.to_rational(), Rational::from_f64(2.0).add(&Rational::from_f64(P60)));
    assert!(is_normalized(&r.0));
}

#[test]
fn qw_renormalize_examples() {
    assert_eq!(qw_renormalize(3.0, 0.0, 0.0, 0.0, 0.0).0, [3.0, 0.0, 0.0, 0.0]);
    let p180 = 2f64.powi(-180);
    assert_eq!(qw_renormalize(1.0, P60, P120, p180, 0.0).0, [1.0, P60, P120, p180]);
    let r = qw_renormalize(1.0, 1.0, P60, 0.0, 0.0);
    assert_eq!(r.to_rational(), Rational::from_f64(2.0).add(&Rational::from_f64(P60)));
    assert!(is_normalized(&r.0));
}

/// Oracle sweep: every op and variant within `2^(-b+4)` of the exact result.
fn sweep<const K: usize>(n: usize, seed: u64)
where
    MultiWord<f64, K>: MultiFloat<Base = f64>,
{
    let bits = <MultiWord<f64, K> as MultiFloat>::BITS as f64;
    let bound = -bits + 4.0;
    let mut rng = rng_from_seed(seed);
    for _ in 0..n {
        let a: MultiWord<f64, K> = random_multiword(&mut rng, -100, 100);
        let b: MultiWord<f64, K> = random_multiword(&mut rng, -100, 100);
        for v in Variant::ALL {
            let s = a.add(b, v);
            let l = log2_rel_error(&s.0, &exact_sum(&a.0, &b.0));
            assert!(l <= bound, "K={K} {v:?} add {a:?} {b:?}: 2^{l}");
            let p = a.mul(b, v);
            let l = log2_rel_error(&p.0, &exact_prod(&a.0, &b.0));
            assert!(l <= bound, "K={K} {v:?} mul {a:?} {b:?}: 2^{l}");
            let q = a.div(b, v);
            let l = log2_rel_error(&q.0, &exact_quot(&a.0, &b.0));
            assert!(l <= bound, "K={K} {v:?} div {a:?} {b:?}: 2^{l}");
        }
    }
}

#[test]
fn dd_error_bounds() {
    sweep::<2>(3000, 21);
}

#[test]
fn td_error_bounds() {
    sweep::<3>(3000, 22);
}

#[test]
fn qd_error_bounds() {
    sweep::<4>(3000, 23);
}

#[test]
fn standard_outputs_are_normalized() {
    let mut rng = rng_from_seed(8);
    for _ in 0..5000 {
        let a: TD = random_multiword(&mut rng, -100, 100);
        let b: TD = random_multiword(&mut rng, -100, 100);
        assert!(is_normalized(&tw_add(a, b).0));
        assert!(is_normalized(&tw_mul(a, b).0));
        let a: QD = random_multiword(&mut rng, -100, 100);
        let b: QD = random_multiword(&mut rng, -100, 100);
        assert!(is_normalized(&qw_add(a, b).0));
        assert!(is_normalized(&qw_mul(a, b).0));
    }
}

#[test]
fn bf_and_standard_agree() {
    fn check<const K: usize>(seed: u64)
    where
        MultiWord<f64, K>: MultiFloat<Base = f64>,
    {
        let bits = <MultiWord<f64, K> as MultiFloat>::BITS as f64;
        let mut rng = rng_from_seed(seed);
        for _ in 0..2000 {
            let a: MultiWord<f64, K> = random_multiword(&mut rng, -100, 100);
            let b: MultiWord<f64, K> = random_multiword(&mut rng, -100, 100);
            for (s, f) in [
                (a.add(b, Variant::Standard), a.add(b, Variant::BranchFree)),
                (a.mul(b, Variant::Standard), a.mul(b, Variant::BranchFree)),
            ] {
                let l = log2_rel_error(&f.0, &s.to_oracle());
                assert!(l <= -bits + 5.0, "K={K}: 2^{l}");
            }
        }
    }
    check::<2>(31);
    check::<3>(32);
    check::<4>(33);
}

#[test]
fn cancellation_heavy_additions() {
    // a + b where b nearly cancels a: the exact sum is the tiny residue
    let mut rng = rng_from_seed(9);
    for _ in 0..2000 {
        let a: QD = random_multiword(&mut rng, -20, 20);
        let t: QD = random_multiword(&mut rng, -200, -150);
        let b = a.neg().add(t, Variant::Standard);
        for v in Variant::ALL {
            let s = a.add(b, v);
            let l = log2_rel_error(&s.0, &exact_sum(&a.0, &b.0));
            assert!(l <= -208.0, "{v:?}: 2^{l}");
        }
    }
}

#[test]
fn division_examples() {
    let third = DD::from_base(1.0).div(DD::from_base(3.0), Variant::Standard);
    let exact = OracleValue::Exact(Rational::from_ratio(1, 3));
    assert!(log2_rel_error(&third.0, &exact) <= -104.0);
    let mut rng = rng_from_seed(4);
    for _ in 0..200 {
        let x: QD = random_multiword(&mut rng, -100, 100);
        for v in Variant::ALL {
            let one = x.div(x, v);
            let l = log2_rel_error(&one.0, &OracleValue::from_f64(1.0));
            assert!(l <= -208.0, "2^{l}");
        }
    }
    let inf = DD::from_base(1.0).div(DD::zero(), Variant::Standard);
    assert!(!inf.0[0].is_finite());
}

#[test]
fn decimal_round_trip() {
    assert_eq!("1.0".parse::<DD>().unwrap(), DD::new([1.0, 0.0]));
    assert!("1.0.0".parse::<DD>().is_err());
    assert!("abc".parse::<QD>().is_err());
    assert_eq!(round_trip_digits(2), 29);
    assert_eq!(round_trip_digits(3), 45);
    assert_eq!(round_trip_digits(4), 61);
    fn check<const K: usize>(seed: u64) {
        let mut rng = rng_from_seed(seed);
        for _ in 0..300 {
            let x: MultiWord<f64, K> = random_multiword(&mut rng, -100, 100);
            let s = x.to_decimal_string(default_digits(K));
            let y: MultiWord<f64, K> = s.parse().unwrap();
            let d = crate::oracle::significant_digits(&y.0, &x.to_oracle());
            assert!(d >= round_trip_digits(K) as f64, "{s}: {d}");
        }
    }
    check::<2>(1);
    check::<3>(2);
    check::<4>(3);
}

#[test]
fn oracle_exactness_of_multiwords() {
    let x = TD::new([1.0, P60, P120]);
    let r = Rational::one()
        .add(&Rational::from_f64(P60))
        .add(&Rational::from_f64(P120));
    assert_eq!(x.to_rational(), r);
    assert_eq!(TD::from_rational(&r), x);
}

#[test]
fn sqrt5_constant() {
    let s5 = crate::oracle::transcendental::sqrt(
        &crate::oracle::BigFloat::from_u64(5),
        crate::oracle::ORACLE_BITS,
    )
    .unwrap();
    let q = QD::from_bigfloat(&s5);
    assert!(log2_rel_error(&q.0, &OracleValue::Float(s5)) <= -208.0);
}

#[test]
fn complex_examples() {
    let v = Variant::Standard;
    let z = ComplexMW::new(TD::from_base(1.5), TD::new([-0.25, P60, 0.0]));
    assert_eq!(z.mul(ComplexMW::one(), v), z);
    let ii = ComplexMW::<QD>::i().mul(ComplexMW::i(), v);
    assert_eq!(ii, ComplexMW::new(QD::from_base(-1.0), QD::zero()));
    let q = z.div(z, v);
    assert!(log2_rel_error(&q.re.0, &OracleValue::from_f64(1.0)) < -150.0);
    assert!(q.im.0[0].abs() < 1e-45);
}

#[test]
fn complex_3m_matches_4m() {
    let mut rng = rng_from_seed(12);
    for _ in 0..2000 {
        let z = ComplexMW::<DD>::new(random_multiword(&mut rng, -3, 3), random_multiword(&mut rng, -3, 3));
        let w = ComplexMW::<DD>::new(random_multiword(&mut rng, -3, 3), random_multiword(&mut rng, -3, 3));
        for v in Variant::ALL {
            let a = z.mul(w, v);
            let b = z.mul_4m(w, v);
            // scale: |z||w| bounds both parts
            let scale = (z.re.0[0].abs() + z.im.0[0].abs()) * (w.re.0[0].abs() + w.im.0[0].abs());
            let ulp = scale * 2f64.powi(-105);
            for (x, y) in [(a.re, b.re), (a.im, b.im)] {
                let d = x.sub(y, Variant::Standard).0[0].abs();
                assert!(d <= 8.0 * ulp, "{d:e} vs ulp {ulp:e}");
            }
        }
    }
}

/// Worst-case operation count over a few random operands.
fn flops<T, R>(mut f: impl FnMut(T, T) -> R, inputs: &[(T, T)]) -> u64
where
    T: Copy,
{
    inputs
        .iter()
        .map(|&(a, b)| count(|| f(a, b)).1.flops())
        .max()
        .unwrap()
}

fn counted<const K: usize>(x: MultiWord<f64, K>) -> MultiWord<Counted, K> {
    MultiWord(x.0.map(Counted))
}

fn counted_pairs<const K: usize>() -> Vec<(MultiWord<Counted, K>, MultiWord<Counted, K>)> {
    let mut rng = rng_from_seed(77);
    (0..50)
        .map(|_| {
            (
                counted(random_multiword::<K>(&mut rng, -10, 10)),
                counted(random_multiword::<K>(&mut rng, -10, 10)),
            )
        })
        .collect()
}

#[test]
fn dd_operation_counts() {
    let p = counted_pairs::<2>();
    assert_eq!(flops(dw_add_sloppy, &p), 11);
    assert_eq!(flops(dw_add_accurate, &p), 20);
    assert_eq!(flops(dw_add_bf, &p), 20);
    assert_eq!(flops(dw_mul, &p), 9);
    assert_eq!(flops(dw_mul_bf, &p), 9);
}

#[test]
fn bf_uses_fewer_operations_for_td() {
    let p = counted_pairs::<3>();
    let std_add = flops(tw_add, &p);
    let bf_add = flops(tw_add_bf, &p);
    let std_mul = flops(tw_mul, &p);
    let bf_mul = flops(tw_mul_bf, &p);
    assert!(bf_add < std_add, "{bf_add} vs {std_add}");
    assert!(bf_mul < std_mul, "{bf_mul} vs {std_mul}");
}

#[test]
fn bf_uses_fewer_operations_for_qd_mul() {
    let p = counted_pairs::<4>();
    let std_mul = flops(qw_mul, &p);
    let bf_mul = flops(qw_mul_bf, &p);
    assert!(bf_mul < std_mul, "{bf_mul} vs {std_mul}");
}

#[test]
#[ignore = "branch-free QD addition costs more flops than the sloppy QD addition"]
fn bf_uses_fewer_operations_for_qd_add() {
    let p = counted_pairs::<4>();
    let std_add = flops(qw_add, &p);
    let bf_add = flops(qw_add_bf, &p);
    assert!(bf_add < std_add, "{bf_add} vs {std_add}");
}

#[test]
fn bf_kernels_make_no_comparisons() {
    let p3 = counted_pairs::<3>();
    let p4 = counted_pairs::<4>();
    let (a, b) = p3[0];
    assert_eq!(count(|| tw_add_bf(a, b)).1.cmp, 0);
    assert_eq!(count(|| tw_mul_bf(a, b)).1.cmp, 0);
    assert!(count(|| tw_add(a, b)).1.cmp > 0);
    let (a, b) = p4[0];
    assert_eq!(count(|| qw_add_bf(a, b)).1.cmp, 0);
    assert_eq!(count(|| qw_mul_bf(a, b)).1.cmp, 0);
    assert!(count(|| qw_mul(a, b)).1.cmp > 0);
}
