use mwfloat::batch::{Batchable, WIDTHS};
use mwfloat::eft::{two_prod, two_sum};
use mwfloat::linalg::{
    cmatmul, gen_complex_test_matrices, gen_test_matrices, matmul, min_digits, min_digits_complex,
    reference_cmatmul, reference_matmul, MatMulPlan, Scheme,
};
use mwfloat::oracle::{self, words_to_dyadic, Dyadic};
use mwfloat::poly::{random_points, random_polynomial, EvalMethod};
use mwfloat::rng::{random_f64, random_multiword, rng_from_seed};
use mwfloat::roots::{chebyshev_coeffs, dk_solve, max_root_distance, residual_check, DEFAULT_MAX_ITER};
use mwfloat::{MultiFloat, MultiWord, Scalar, Variant};
use serde::Serialize;

use crate::bench::scaled_ulps;
use crate::{CliError, OpArg, Suite, VerifyArgs};

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub suite: &'static str,
    pub case: String,
    pub checked: usize,
    pub failures: usize,
    pub detail: String,
    pub pass: bool,
}

impl Row {
    fn counted(suite: &'static str, case: String, checked: usize, failures: usize) -> Row {
        Row {
            suite,
            case,
            checked,
            failures,
            detail: String::new(),
            pass: failures == 0,
        }
    }

    fn measured(suite: &'static str, case: String, value: f64, limit: f64, higher_is_better: bool) -> Row {
        let pass = if higher_is_better { value >= limit } else { value <= limit };
        let cmp = if higher_is_better { ">=" } else { "<=" };
        Row {
            suite,
            case,
            checked: 1,
            failures: usize::from(!pass),
            detail: format!("{value:.3e} (need {cmp} {limit:.3e})"),
            pass,
        }
    }
}

pub fn run(args: &VerifyArgs) -> Result<(), CliError> {
    if args.pairs == 0 {
        return Err(CliError::Usage("--pairs must be positive".into()));
    }
    if args.n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    let all = args.suite.contains(&Suite::All);
    let want = |s| all || args.suite.contains(&s);
    let ops: Vec<OpArg> = match args.op {
        Some(op) => vec![op],
        None => vec![OpArg::Add, OpArg::Mul, OpArg::Div],
    };
    let mut rows = Vec::new();
    if want(Suite::Eft) {
        eft(args, &ops, &mut rows);
    }
    if want(Suite::Ops) {
        op_bounds::<2>(args, &ops, &mut rows);
        op_bounds::<3>(args, &ops, &mut rows);
        op_bounds::<4>(args, &ops, &mut rows);
    }
    if want(Suite::Batch) {
        batch::<2>(args, &ops, &mut rows);
        batch::<3>(args, &ops, &mut rows);
        batch::<4>(args, &ops, &mut rows);
    }
    if want(Suite::Digits) {
        digits::<MultiWord<f64, 2>>(args.n, 29.0, 23.2, &mut rows);
        digits::<MultiWord<f64, 3>>(args.n, 45.5, 39.2, &mut rows);
        digits::<MultiWord<f64, 4>>(args.n, 61.7, 55.8, &mut rows);
    }
    if want(Suite::Poly) {
        poly::<MultiWord<f64, 2>>(args.seed, &mut rows);
        poly::<MultiWord<f64, 3>>(args.seed, &mut rows);
        poly::<MultiWord<f64, 4>>(args.seed, &mut rows);
    }
    if want(Suite::Dk) {
        dk::<MultiWord<f64, 2>>(32.0, &mut rows);
        dk::<MultiWord<f64, 3>>(48.0, &mut rows);
        dk::<MultiWord<f64, 4>>(64.0, &mut rows);
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&rows).expect("plain data"));
    } else {
        print_table(&rows);
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{failed} of {} checks failed", rows.len())))
    }
}

fn print_table(rows: &[Row]) {
    println!("{:<7} {:<34} {:>9} {:>8}  {:<6} detail", "suite", "case", "checked", "failed", "status");
    for r in rows {
        println!(
            "{:<7} {:<34} {:>9} {:>8}  {:<6} {}",
            r.suite,
            r.case,
            r.checked,
            r.failures,
            if r.pass { "PASS" } else { "FAIL" },
            r.detail
        );
    }
}

fn op_name(op: OpArg) -> &'static str {
    match op {
        OpArg::Add => "add",
        OpArg::Mul => "mul",
        OpArg::Div => "div",
    }
}

fn eft(args: &VerifyArgs, ops: &[OpArg], rows: &mut Vec<Row>) {
    let mut rng = rng_from_seed(args.seed);
    let pairs: Vec<(f64, f64)> = (0..args.pairs)
        .map(|_| (random_f64(&mut rng, -300, 300), random_f64(&mut rng, -300, 300)))
        .collect();
    let d = Dyadic::from_f64;
    if ops.contains(&OpArg::Add) {
        let bad = pairs
            .iter()
            .filter(|(a, b)| {
                let r = two_sum(*a, *b);
                d(*a).add(&d(*b)) != d(r.s).add(&d(r.e))
            })
            .count();
        rows.push(Row::counted("eft", "two_sum exact".into(), pairs.len(), bad));
    }
    if ops.contains(&OpArg::Mul) {
        let bad = pairs
            .iter()
            .filter(|(a, b)| {
                let r = two_prod(*a, *b);
                d(*a).mul(&d(*b)) != d(r.s).add(&d(r.e))
            })
            .count();
        rows.push(Row::counted("eft", "two_prod exact".into(), pairs.len(), bad));
    }
}

/// `|approx - exact| <= 2^-e |exact|`.
fn within(approx: &Dyadic, exact: &Dyadic, e: i64) -> bool {
    let err = approx.sub(exact);
    err.is_zero() || err.scale2(e).cmp_abs(exact).is_le()
}

fn op_bounds<const K: usize>(args: &VerifyArgs, ops: &[OpArg], rows: &mut Vec<Row>)
where
    MultiWord<f64, K>: Scalar,
{
    let e = <MultiWord<f64, K> as MultiFloat>::BITS as i64 - 4;
    for v in Variant::ALL {
        for &op in ops {
            let mut rng = rng_from_seed(args.seed ^ (K as u64) << 8);
            let mut bad = 0;
            for _ in 0..args.pairs {
                let a: MultiWord<f64, K> = random_multiword(&mut rng, -100, 100);
                let b: MultiWord<f64, K> = random_multiword(&mut rng, -100, 100);
                let (da, db) = (words_to_dyadic(&a.0), words_to_dyadic(&b.0));
                let ok = match op {
                    OpArg::Add => within(&words_to_dyadic(&a.add(b, v).0), &da.add(&db), e),
                    OpArg::Mul => within(&words_to_dyadic(&a.mul(b, v).0), &da.mul(&db), e),
                    // |q - a/b| <= 2^-e |a/b|  <=>  |q b - a| <= 2^-e |a|
                    OpArg::Div => within(&words_to_dyadic(&a.div(b, v).0).mul(&db), &da, e),
                };
                bad += usize::from(!ok);
            }
            let case = format!("K={K} {} {} <= 2^-{e}", v.short_name(), op_name(op));
            rows.push(Row::counted("ops", case, args.pairs, bad));
        }
    }
}

fn batch<const K: usize>(args: &VerifyArgs, ops: &[OpArg], rows: &mut Vec<Row>)
where
    MultiWord<f64, K>: Batchable,
{
    for w in WIDTHS {
        mwfloat::with_width!(w, W => batch_width::<K, W>(args, ops, rows));
    }
}

fn batch_width<const K: usize, const W: usize>(args: &VerifyArgs, ops: &[OpArg], rows: &mut Vec<Row>)
where
    MultiWord<f64, K>: Batchable,
{
    type T<const K: usize> = MultiWord<f64, K>;
    let batches = args.pairs.div_ceil(W);
    let mut rng = rng_from_seed(args.seed ^ (K * 16 + W) as u64);
    let xs: Vec<T<K>> = (0..batches * W).map(|_| random_multiword(&mut rng, -60, 60)).collect();
    let ys: Vec<T<K>> = (0..batches * W).map(|_| random_multiword(&mut rng, -60, 60)).collect();
    let mut lanes = vec![T::<K>::zero(); W];
    for v in Variant::ALL {
        for &op in ops {
            let mut bad = 0;
            for (x, y) in xs.chunks(W).zip(ys.chunks(W)) {
                let (bx, by) = (T::<K>::gather_batch::<W>(x), T::<K>::gather_batch::<W>(y));
                let r = match op {
                    OpArg::Add => bx.add(by, v),
                    OpArg::Mul => bx.mul(by, v),
                    OpArg::Div => bx.div(by, v),
                };
                T::<K>::scatter_batch::<W>(&r, &mut lanes);
                for l in 0..W {
                    let s = match op {
                        OpArg::Add => x[l].add(y[l], v),
                        OpArg::Mul => x[l].mul(y[l], v),
                        OpArg::Div => x[l].div(y[l], v),
                    };
                    bad += usize::from(!s.bits_eq(&lanes[l]));
                }
            }
            let case = format!("K={K} W={W} {} {}", v.short_name(), op_name(op));
            rows.push(Row::counted("batch", case, batches * W, bad));
        }
    }
}

fn digits<T: Batchable>(n: usize, real_floor: f64, complex_floor: f64, rows: &mut Vec<Row>) {
    let (a, b) = gen_test_matrices::<T>(n);
    let exact = reference_matmul(&a, &b);
    let (ca, cb) = gen_complex_test_matrices::<T>(n, 2024);
    let exact_c = reference_cmatmul(&ca, &cb);
    for v in Variant::ALL {
        for s in Scheme::ALL {
            let plan = MatMulPlan::new(s, v);
            let d = min_digits(&matmul(&a, &b, &plan).expect("valid plan"), &exact);
            let case = format!("K={} real n={n} {s} {}", T::WORDS, v.short_name());
            rows.push(Row::measured("digits", case, d, real_floor, true));
            let d = min_digits_complex(&cmatmul(&ca, &cb, &plan).expect("valid plan"), &exact_c);
            let case = format!("K={} complex n={n} {s} {}", T::WORDS, v.short_name());
            rows.push(Row::measured("digits", case, d, complex_floor, true));
        }
    }
}

fn poly<T: Batchable>(seed: u64, rows: &mut Vec<Row>) {
    for (i, n) in [1usize, 16, 256, 1024].into_iter().enumerate() {
        let p = random_polynomial::<T>(n, seed + i as u64);
        let xs = random_points::<T>(32, seed + 100 + i as u64);
        for v in Variant::ALL {
            let h = p.eval_many(&xs, EvalMethod::Horner, v, 2);
            let e = p.eval_many(&xs, EvalMethod::Estrin, v, 2);
            let worst = xs
                .iter()
                .zip(h.iter().zip(&e))
                .map(|(x, (h, e))| scaled_ulps(h.words(), e.words(), p.abs_scale(x.words()[0])))
                .fold(0.0, f64::max);
            let case = format!("K={} n={n} {} horner~estrin ulps", T::WORDS, v.short_name());
            rows.push(Row::measured("poly", case, worst, 4.0, false));
        }
    }
}

fn dk<T: Scalar>(digits: f64, rows: &mut Vec<Row>) {
    let q64 = chebyshev_coeffs::<T>(64).expect("n >= 2");
    let q8 = chebyshev_coeffs::<T>(8).expect("n >= 2");
    let exact = oracle::oracle_dk(&q8.to_bigfloats(), 500);
    for v in Variant::ALL {
        let case = format!("K={} cheb64 {} residual", T::WORDS, v.short_name());
        let r = dk_solve(&q64, v, None, DEFAULT_MAX_ITER)
            .map(|s| residual_check(&q64, &s.z))
            .unwrap_or(f64::INFINITY);
        rows.push(Row::measured("dk", case, r, 10f64.powf(-(digits - 6.0)), false));
        let case = format!("K={} cheb8 {} vs oracle", T::WORDS, v.short_name());
        let d = match (&exact, dk_solve(&q8, v, None, DEFAULT_MAX_ITER)) {
            (Ok(e), Ok(s)) => max_root_distance(&s.z, e),
            _ => f64::INFINITY,
        };
        rows.push(Row::measured("dk", case, d, 10f64.powf(-(digits - 5.0)), false));
    }
}
