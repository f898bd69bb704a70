use mwfloat::batch::{default_width, Batchable};
use mwfloat::linalg::{
    cmatmul, digits_range, digits_range_complex, gen_complex_test_matrices, gen_test_matrices, matmul,
    reference_cmatmul, reference_matmul, MatMulPlan,
};
use mwfloat::oracle::{log10_rational, words_to_dyadic};
use mwfloat::poly::{random_complex_points, random_points, random_polynomial, EvalMethod};
use mwfloat::Variant;

use crate::record::{hardware_tag, median_seconds, timestamp, write_records, BenchRecord};
use crate::{dispatch, ArgKind, CliError, MatmulArgs, PolyArgs, Precision};

const MIN_ORDER: usize = 32;
const MAX_ORDER: usize = 2049;
const VERIFY_MAX_ORDER: usize = 128;

/// Horner and Estrin may differ by this many ulps of `sum |a_i| |x|^i`.
const REAL_TOLERANCE: f64 = 4.0;
const COMPLEX_TOLERANCE: f64 = 16.0;

pub fn bench_matmul(args: &MatmulArgs, complex: bool) -> Result<(), CliError> {
    if let Some(n) = args.sizes.iter().find(|n| !(MIN_ORDER..=MAX_ORDER).contains(*n)) {
        return Err(CliError::Usage(format!("size {n} outside [{MIN_ORDER}, {MAX_ORDER}]")));
    }
    if args.common.threads == 0 {
        return Err(CliError::Usage("--threads must be positive".into()));
    }
    let mut records = Vec::new();
    for &p in &args.common.precision {
        dispatch!(p, T => run_matmul::<T>(args, p, complex, &mut records)?);
    }
    write_records(&records, args.common.output.csv.as_deref(), args.common.output.json)?;
    Ok(())
}

fn run_matmul<T: Batchable>(
    args: &MatmulArgs,
    p: Precision,
    complex: bool,
    out: &mut Vec<BenchRecord>,
) -> Result<(), CliError> {
    let c = &args.common;
    let repeats = c.repeats as usize;
    for &n in &args.sizes {
        let (a, b) = gen_test_matrices::<T>(n);
        let cm = complex.then(|| gen_complex_test_matrices::<T>(n, c.seed));
        let verify = args.verify && n <= VERIFY_MAX_ORDER;
        let exact = (verify && !complex).then(|| reference_matmul(&a, &b));
        let exact_c = match (&cm, verify) {
            (Some((ca, cb)), true) => Some(reference_cmatmul(ca, cb)),
            _ => None,
        };
        for &scheme in &args.scheme {
            for &v in &c.variant {
                for &simd in &args.simd {
                    let plan = MatMulPlan::new(scheme.into(), v.into())
                        .with_simd(simd.on())
                        .with_threads(c.threads);
                    plan.validate()?;
                    let real_time = median_seconds(repeats, || {
                        std::hint::black_box(matmul(&a, &b, &plan).expect("validated plan"));
                    });
                    let (wall, digits, ratio) = match &cm {
                        None => {
                            let d = exact.as_ref().map(|e| digits_range(&matmul(&a, &b, &plan).unwrap(), e));
                            (real_time, d, None)
                        }
                        Some((ca, cb)) => {
                            let t = median_seconds(repeats, || {
                                std::hint::black_box(cmatmul(ca, cb, &plan).expect("validated plan"));
                            });
                            let d = exact_c
                                .as_ref()
                                .map(|e| digits_range_complex(&cmatmul(ca, cb, &plan).unwrap(), e));
                            (t, d, Some(t / real_time))
                        }
                    };
                    out.push(BenchRecord {
                        suite: if complex { "cmatmul" } else { "matmul" }.into(),
                        precision: p.name().into(),
                        variant: Variant::from(v).short_name().into(),
                        simd: simd.name().into(),
                        scheme: plan.scheme.name().into(),
                        threads: c.threads,
                        n,
                        repeat: repeats,
                        wall_seconds: wall,
                        digits_min: digits.map(|d| d.0),
                        digits_max: digits.map(|d| d.1),
                        hardware: hardware_tag().into(),
                        timestamp: timestamp(),
                        real_ratio: ratio,
                    });
                }
            }
        }
    }
    Ok(())
}

/// `|p - q|` in ulps of `scale` at `K`-word precision.
pub fn scaled_ulps(p: &[f64], q: &[f64], scale: f64) -> f64 {
    let d = words_to_dyadic(p).sub(&words_to_dyadic(q));
    if d.is_zero() {
        return 0.0;
    }
    let ulp = scale.log2().floor() + 1.0 - 53.0 * p.len() as f64;
    (log10_rational(&d.to_rational()) / std::f64::consts::LOG10_2 - ulp).exp2()
}

pub fn bench_polyeval(args: &PolyArgs) -> Result<(), CliError> {
    if args.points == 0 {
        return Err(CliError::Usage("--points must be positive".into()));
    }
    if args.degrees.is_empty() {
        return Err(CliError::Usage("no degrees given".into()));
    }
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for &p in &args.common.precision {
        dispatch!(p, T => run_poly::<T>(args, p, &mut records, &mut failures));
    }
    write_records(&records, args.common.output.csv.as_deref(), args.common.output.json)?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("Horner/Estrin cross-check: {}", failures.join("; "))))
    }
}

fn run_poly<T: Batchable>(args: &PolyArgs, p: Precision, out: &mut Vec<BenchRecord>, failures: &mut Vec<String>) {
    let c = &args.common;
    let width = default_width();
    for (idx, &n) in args.degrees.iter().enumerate() {
        let seed = c.seed.wrapping_add(idx as u64);
        let poly = random_polynomial::<T>(n, seed);
        let real = random_points::<T>(args.points, seed ^ 0x5eed);
        let cplx = random_complex_points::<T>(args.points, seed ^ 0x5eed);
        for &v in &c.variant {
            let v = Variant::from(v);
            let worst = match args.arg_kind {
                ArgKind::Real => {
                    let h = poly.eval_many(&real, EvalMethod::Horner, v, width);
                    let e = poly.eval_many(&real, EvalMethod::Estrin, v, width);
                    let b = poly.eval_many(&real, EvalMethod::EstrinBatched, v, width);
                    if b != e {
                        failures.push(format!("{} n={n} {}: batched differs", p.name(), v.short_name()));
                    }
                    real.iter()
                        .zip(h.iter().zip(&e))
                        .map(|(x, (h, e))| scaled_ulps(h.words(), e.words(), poly.abs_scale(x.words()[0])))
                        .fold(0.0, f64::max)
                }
                ArgKind::Complex => {
                    let h = poly.eval_complex_many(&cplx, EvalMethod::Horner, v, width);
                    let e = poly.eval_complex_many(&cplx, EvalMethod::Estrin, v, width);
                    let b = poly.eval_complex_many(&cplx, EvalMethod::EstrinBatched, v, width);
                    if b != e {
                        failures.push(format!("{} n={n} {}: batched differs", p.name(), v.short_name()));
                    }
                    let mut worst = 0.0f64;
                    for (z, (h, e)) in cplx.iter().zip(h.iter().zip(&e)) {
                        let s = poly.abs_scale(z.re.words()[0].abs() + z.im.words()[0].abs());
                        worst = worst
                            .max(scaled_ulps(h.re.words(), e.re.words(), s))
                            .max(scaled_ulps(h.im.words(), e.im.words(), s));
                    }
                    worst
                }
            };
            let tol = match args.arg_kind {
                ArgKind::Real => REAL_TOLERANCE,
                ArgKind::Complex => COMPLEX_TOLERANCE,
            };
            if worst > tol {
                failures.push(format!("{} n={n} {}: {worst:.2} ulps", p.name(), v.short_name()));
            }
            for &m in &args.methods {
                let method = EvalMethod::from(m);
                let t = match args.arg_kind {
                    ArgKind::Real => median_seconds(c.repeats as usize, || {
                        std::hint::black_box(poly.eval_many(&real, method, v, width));
                    }),
                    ArgKind::Complex => median_seconds(c.repeats as usize, || {
                        std::hint::black_box(poly.eval_complex_many(&cplx, method, v, width));
                    }),
                };
                out.push(BenchRecord {
                    suite: match args.arg_kind {
                        ArgKind::Real => "polyeval",
                        ArgKind::Complex => "polyeval-complex",
                    }
                    .into(),
                    precision: p.name().into(),
                    variant: v.short_name().into(),
                    simd: if method == EvalMethod::EstrinBatched { "on" } else { "off" }.into(),
                    scheme: method.name().into(),
                    threads: 1,
                    n,
                    repeat: c.repeats as usize,
                    wall_seconds: (t / args.points as f64).max(1e-12),
                    digits_min: None,
                    digits_max: None,
                    hardware: hardware_tag().into(),
                    timestamp: timestamp(),
                    real_ratio: None,
                });
            }
        }
    }
}
