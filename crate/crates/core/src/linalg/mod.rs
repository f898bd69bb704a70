//! Dense real and complex multiword matrix products.
//!
//! Three schemes share one entry-level sum order where they can: naive and
//! blocked products are bitwise identical, and the lane-batched kernels
//! match the scalar ones bit for bit. Strassen recurses down to the blocked
//! kernel. Results never depend on the thread count.

mod kernels;
mod matrix;
mod strassen;

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

pub use kernels::ROW_BLOCK;
pub use matrix::{CMWMatrix, MWMatrix};
pub use strassen::{strassen_pad_policy, Decomposition};

use crate::batch::{check_width, Batchable};
use crate::error::MwError;
use crate::multiword::{Exp, Scalar, Variant};
use crate::oracle::{self, transcendental, BigFloat, Dyadic, Rational, ORACLE_BITS};
use crate::rng::{rng_from_seed, standard_normal, uniform_multiword};
use kernels::{gemm, Tiling};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    Naive,
    Blocked,
    Strassen,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Naive, Scheme::Blocked, Scheme::Strassen];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Naive => "naive",
            Scheme::Blocked => "blocked",
            Scheme::Strassen => "strassen",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = MwError;

    fn from_str(s: &str) -> Result<Self, MwError> {
        match s.to_ascii_lowercase().as_str() {
            "naive" => Ok(Scheme::Naive),
            "blocked" | "block" | "b32" => Ok(Scheme::Blocked),
            "strassen" => Ok(Scheme::Strassen),
            _ => Err(MwError::InvalidArgument(format!("unknown scheme {s:?}"))),
        }
    }
}

/// Blocked kernel tile size.
pub const DEFAULT_BLOCK: usize = 32;
pub const DEFAULT_STRASSEN_CUTOFF: usize = 32;

#[derive(Clone, Debug, PartialEq)]
pub struct MatMulPlan {
    pub scheme: Scheme,
    pub variant: Variant,
    pub simd: bool,
    pub threads: usize,
    pub strassen_cutoff: usize,
    /// Lane width for the batched kernels; 0 picks the probed default.
    pub width: usize,
    pub block: usize,
}

impl Default for MatMulPlan {
    fn default() -> Self {
        MatMulPlan {
            scheme: Scheme::Strassen,
            variant: Variant::Standard,
            simd: false,
            threads: 1,
            strassen_cutoff: DEFAULT_STRASSEN_CUTOFF,
            width: 0,
            block: DEFAULT_BLOCK,
        }
    }
}

impl MatMulPlan {
    pub fn new(scheme: Scheme, variant: Variant) -> Self {
        MatMulPlan {
            scheme,
            variant,
            ..Default::default()
        }
    }

    pub fn with_simd(mut self, simd: bool) -> Self {
        self.simd = simd;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn validate(&self) -> Result<(), MwError> {
        if self.threads == 0 {
            return Err(MwError::InvalidArgument("threads must be positive".into()));
        }
        if self.strassen_cutoff < 2 {
            return Err(MwError::InvalidArgument("Strassen cutoff must be at least 2".into()));
        }
        if self.block == 0 {
            return Err(MwError::InvalidArgument("block size must be positive".into()));
        }
        check_width(self.width)?;
        Ok(())
    }

    pub(crate) fn simd_width(&self) -> Option<usize> {
        self.simd.then(|| check_width(self.width).unwrap_or(2))
    }

    fn pool(&self) -> Result<rayon::ThreadPool, MwError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| MwError::InvalidArgument(format!("thread pool: {e}")))
    }
}

pub fn matmul<T: Batchable>(
    a: &MWMatrix<T>,
    b: &MWMatrix<T>,
    plan: &MatMulPlan,
) -> Result<MWMatrix<T>, MwError> {
    plan.validate()?;
    check_inner(a, b)?;
    Ok(plan.pool()?.install(|| matmul_in_pool(a, b, plan)))
}

fn check_inner<T: Batchable>(a: &MWMatrix<T>, b: &MWMatrix<T>) -> Result<(), MwError> {
    if a.cols() != b.rows() {
        return Err(MwError::Shape(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}

fn matmul_in_pool<T: Batchable>(a: &MWMatrix<T>, b: &MWMatrix<T>, plan: &MatMulPlan) -> MWMatrix<T> {
    match plan.scheme {
        Scheme::Naive => gemm(
            a,
            b,
            plan.variant,
            Tiling::naive(a.cols(), b.cols()),
            plan.simd_width(),
        ),
        Scheme::Blocked => gemm(a, b, plan.variant, Tiling::blocked(plan.block), plan.simd_width()),
        Scheme::Strassen => strassen::strassen(a, b, plan, 0),
    }
}

/// Complex product by the 3M method: three real products
/// `P1 = Re A Re B`, `P2 = Im A Im B`, `P3 = (Re A + Im A)(Re B + Im B)`,
/// then `Re C = P1 - P2` and `Im C = P3 - P1 - P2`.
pub fn cmatmul<T: Batchable>(
    a: &CMWMatrix<T>,
    b: &CMWMatrix<T>,
    plan: &MatMulPlan,
) -> Result<CMWMatrix<T>, MwError> {
    plan.validate()?;
    check_inner(&a.re, &b.re)?;
    let v = plan.variant;
    let pool = plan.pool()?;
    pool.install(|| {
        let sa = a.re.add(&a.im, v);
        let sb = b.re.add(&b.im, v);
        let p1 = matmul_in_pool(&a.re, &b.re, plan);
        let p2 = matmul_in_pool(&a.im, &b.im, plan);
        let p3 = matmul_in_pool(&sa, &sb, plan);
        let re = p1.sub(&p2, v);
        let im = p3.sub(&p1, v).sub(&p2, v);
        CMWMatrix::new(re, im)
    })
}

/// Complex product with four real products, `Re C = Re A Re B - Im A Im B`
/// and `Im C = Re A Im B + Im A Re B`.
pub fn cmatmul_4m<T: Batchable>(
    a: &CMWMatrix<T>,
    b: &CMWMatrix<T>,
    plan: &MatMulPlan,
) -> Result<CMWMatrix<T>, MwError> {
    plan.validate()?;
    check_inner(&a.re, &b.re)?;
    let v = plan.variant;
    plan.pool()?.install(|| {
        let rr = matmul_in_pool(&a.re, &b.re, plan);
        let ii = matmul_in_pool(&a.im, &b.im, plan);
        let ri = matmul_in_pool(&a.re, &b.im, plan);
        let ir = matmul_in_pool(&a.im, &b.re, plan);
        CMWMatrix::new(rr.sub(&ii, v), ri.add(&ir, v))
    })
}

/// `K`-word constant nearest to `sqrt(x)`.
pub fn sqrt_constant<T: Scalar>(x: u64) -> T {
    let s = transcendental::sqrt(&BigFloat::from_u64(x), ORACLE_BITS).expect("positive");
    T::from_words(&oracle::bigfloat_to_words(&s, T::WORDS))
}

/// The real test pair `a_ij = sqrt(5) (i + j - 1)`,
/// `b_ij = sqrt(3) (n - i + 1)` with 1-based indices. Each entry is the
/// `K`-word constant times the integer, multiplied in the standard variant.
pub fn gen_test_matrices<T: Scalar>(n: usize) -> (MWMatrix<T>, MWMatrix<T>) {
    let s5: T = sqrt_constant(5);
    let s3: T = sqrt_constant(3);
    let int = |k: usize| T::from_base(k as f64);
    let a = MWMatrix::from_fn(n, n, |i, j| s5.mul(int(i + j + 1), Variant::Standard));
    let b = MWMatrix::from_fn(n, n, |i, _| s3.mul(int(n - i), Variant::Standard));
    (a, b)
}

/// Random complex test pair. Every part of every entry is
/// `exp(r_n) (r_u - 1/2)` with a fresh standard normal `r_n` and a uniform
/// `r_u` drawn at `K`-word resolution, from ChaCha8 seeded with `seed`.
/// Draw order: A then B, row-major, for each entry real part then
/// imaginary part, `r_n` before `r_u`. The exponential and the product are
/// evaluated in `K`-word arithmetic.
pub fn gen_complex_test_matrices<T: Scalar>(n: usize, seed: u64) -> (CMWMatrix<T>, CMWMatrix<T>) {
    let mut rng = rng_from_seed(seed);
    let exp = Exp::<T>::new();
    let half = T::from_base(0.5);
    let mut draw = || {
        let rn = standard_normal(&mut rng);
        let ru: T = uniform_multiword(&mut rng);
        exp.eval(T::from_base(rn)).mul(ru.sub(half, Variant::Standard), Variant::Standard)
    };
    let mut make = || {
        let mut re = Vec::with_capacity(n * n);
        let mut im = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            re.push(draw());
            im.push(draw());
        }
        CMWMatrix {
            re: MWMatrix::new(n, n, re).expect("shape"),
            im: MWMatrix::new(n, n, im).expect("shape"),
        }
    };
    let a = make();
    let b = make();
    (a, b)
}

fn to_dyadics<T: Scalar>(m: &MWMatrix<T>) -> Vec<Dyadic> {
    m.data().iter().map(|x| oracle::words_to_dyadic(x.words())).collect()
}

/// Exact product of the stored entries.
pub fn reference_matmul<T: Scalar>(a: &MWMatrix<T>, b: &MWMatrix<T>) -> Vec<Dyadic> {
    oracle::exact_matmul(&to_dyadics(a), &to_dyadics(b), a.rows(), a.cols(), b.cols())
}

/// Exact complex product of the stored entries, as `(re, im)`.
pub fn reference_cmatmul<T: Scalar>(
    a: &CMWMatrix<T>,
    b: &CMWMatrix<T>,
) -> (Vec<Dyadic>, Vec<Dyadic>) {
    let (m, k, n) = (a.rows(), a.cols(), b.cols());
    let (ar, ai, br, bi) = (to_dyadics(&a.re), to_dyadics(&a.im), to_dyadics(&b.re), to_dyadics(&b.im));
    let rr = oracle::exact_matmul(&ar, &br, m, k, n);
    let ii = oracle::exact_matmul(&ai, &bi, m, k, n);
    let ri = oracle::exact_matmul(&ar, &bi, m, k, n);
    let ir = oracle::exact_matmul(&ai, &br, m, k, n);
    let re = rr.iter().zip(&ii).map(|(x, y)| x.sub(y)).collect();
    let im = ri.iter().zip(&ir).map(|(x, y)| x.add(y)).collect();
    (re, im)
}

/// Minimum significant decimal digits over all entries.
pub fn min_digits<T: Scalar>(c: &MWMatrix<T>, exact: &[Dyadic]) -> f64 {
    digits_range(c, exact).0
}

/// `(min, max)` significant decimal digits over all entries.
pub fn digits_range<T: Scalar>(c: &MWMatrix<T>, exact: &[Dyadic]) -> (f64, f64) {
    c.data()
        .iter()
        .zip(exact)
        .map(|(x, e)| {
            oracle::significant_digits(x.words(), &oracle::OracleValue::Exact(e.to_rational()))
        })
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), d| (lo.min(d), hi.max(d)))
}

/// Complex digits: per entry the minimum of the real and imaginary parts.
pub fn min_digits_complex<T: Scalar>(c: &CMWMatrix<T>, exact: &(Vec<Dyadic>, Vec<Dyadic>)) -> f64 {
    min_digits(&c.re, &exact.0).min(min_digits(&c.im, &exact.1))
}

/// `(min, max)` over both parts.
pub fn digits_range_complex<T: Scalar>(
    c: &CMWMatrix<T>,
    exact: &(Vec<Dyadic>, Vec<Dyadic>),
) -> (f64, f64) {
    let (a, b) = digits_range(&c.re, &exact.0);
    let (x, y) = digits_range(&c.im, &exact.1);
    (a.min(x), b.max(y))
}

/// Largest entrywise difference in units of `2^-(53 K)` relative to the
/// largest magnitude among the two entries.
pub fn max_ulp_distance<T: Scalar>(x: &MWMatrix<T>, y: &MWMatrix<T>) -> f64 {
    x.data()
        .iter()
        .zip(y.data())
        .map(|(p, q)| ulp_distance(p.words(), q.words()))
        .fold(0.0, f64::max)
}

pub fn ulp_distance(p: &[f64], q: &[f64]) -> f64 {
    let dp = oracle::words_to_dyadic(p);
    let dq = oracle::words_to_dyadic(q);
    let d = dp.sub(&dq);
    if d.is_zero() {
        return 0.0;
    }
    let scale = if dp.cmp_abs(&dq).is_ge() { dp } else { dq };
    let bits = (53 * p.len()) as f64;
    let l2 = (oracle::log10_rational(&d.to_rational())
        - oracle::log10_rational(&scale.to_rational()))
        / std::f64::consts::LOG10_2;
    (l2 + bits).exp2()
}

/// `max_ij (|A| |B|)_ij` in binary64: the natural scale of product errors.
pub fn product_scale<T: Scalar>(a: &MWMatrix<T>, b: &MWMatrix<T>) -> f64 {
    let (m, k, n) = (a.rows(), a.cols(), b.cols());
    let aa: Vec<f64> = a.data().iter().map(|x| x.words()[0].abs()).collect();
    let bb: Vec<f64> = b.data().iter().map(|x| x.words()[0].abs()).collect();
    let mut best = 0.0f64;
    let mut row = vec![0.0; n];
    for i in 0..m {
        row.iter_mut().for_each(|r| *r = 0.0);
        for l in 0..k {
            let x = aa[i * k + l];
            for (r, y) in row.iter_mut().zip(&bb[l * n..(l + 1) * n]) {
                *r += x * y;
            }
        }
        best = row.iter().copied().fold(best, f64::max);
    }
    best
}

/// Largest entrywise difference in units of `2^-(53 K) * scale`.
pub fn normwise_ulp_distance<T: Scalar>(x: &MWMatrix<T>, y: &MWMatrix<T>, scale: f64) -> f64 {
    let bits = (53 * T::WORDS) as i32;
    x.data()
        .iter()
        .zip(y.data())
        .map(|(p, q)| {
            let d = oracle::words_to_dyadic(p.words()).sub(&oracle::words_to_dyadic(q.words()));
            if d.is_zero() {
                return 0.0;
            }
            let l2 = oracle::log10_rational(&d.to_rational()) / std::f64::consts::LOG10_2;
            (l2 - scale.log2() + bits as f64).exp2()
        })
        .fold(0.0, f64::max)
}

fn entry_to_string<T: Scalar>(x: &T, digits: usize) -> String {
    let r = oracle::words_to_rational(x.words());
    r.to_scientific(digits)
}

fn parse_entry<T: Scalar>(s: &str) -> Result<T, MwError> {
    let r = Rational::parse_decimal(s)?;
    Ok(T::from_words(&oracle::rational_to_words(&r, T::WORDS)))
}

fn digits_for<T: Scalar>() -> usize {
    // enough digits that parsing returns the same words
    (53 * T::WORDS) * 30103 / 100000 + 6
}

/// Writes `MW K rows cols` then one row per line.
pub fn write_matrix<T: Scalar>(m: &MWMatrix<T>, out: &mut impl Write) -> Result<(), MwError> {
    writeln!(out, "MW {} {} {}", T::WORDS, m.rows(), m.cols()).map_err(io_err)?;
    let digits = digits_for::<T>();
    for i in 0..m.rows() {
        let line: Vec<String> = m.row(i).iter().map(|x| entry_to_string(x, digits)).collect();
        writeln!(out, "{}", line.join(" ")).map_err(io_err)?;
    }
    Ok(())
}

/// Complex variant of [`write_matrix`]: each entry is `re im`.
pub fn write_cmatrix<T: Scalar>(m: &CMWMatrix<T>, out: &mut impl Write) -> Result<(), MwError> {
    writeln!(out, "MW {} {} {}", T::WORDS, m.rows(), m.cols()).map_err(io_err)?;
    let digits = digits_for::<T>();
    for i in 0..m.rows() {
        let line: Vec<String> = m
            .re
            .row(i)
            .iter()
            .zip(m.im.row(i))
            .map(|(r, c)| format!("{} {}", entry_to_string(r, digits), entry_to_string(c, digits)))
            .collect();
        writeln!(out, "{}", line.join(" ")).map_err(io_err)?;
    }
    Ok(())
}

fn io_err(e: std::io::Error) -> MwError {
    MwError::Format(e.to_string())
}

fn read_entries(input: impl BufRead, per_entry: usize, k: usize) -> Result<(usize, usize, Vec<String>), MwError> {
    let mut tokens = Vec::new();
    let mut header = None;
    for line in input.lines() {
        let line = line.map_err(io_err)?;
        if header.is_none() {
            if line.trim().is_empty() {
                continue;
            }
            header = Some(line);
            continue;
        }
        tokens.extend(line.split_whitespace().map(str::to_owned));
    }
    let header = header.ok_or_else(|| MwError::Format("missing header".into()))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 4 || h[0] != "MW" {
        return Err(MwError::Format(format!("bad header {header:?}")));
    }
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| MwError::Format(format!("bad header field {s:?}")))
    };
    let (fk, rows, cols) = (num(h[1])?, num(h[2])?, num(h[3])?);
    if fk != k {
        return Err(MwError::Format(format!("file holds {fk}-word values, expected {k}")));
    }
    if tokens.len() != rows * cols * per_entry {
        return Err(MwError::Format(format!(
            "expected {} values, found {}",
            rows * cols * per_entry,
            tokens.len()
        )));
    }
    Ok((rows, cols, tokens))
}

pub fn read_matrix<T: Scalar>(input: impl BufRead) -> Result<MWMatrix<T>, MwError> {
    let (rows, cols, tokens) = read_entries(input, 1, T::WORDS)?;
    let data = tokens.iter().map(|s| parse_entry(s)).collect::<Result<_, _>>()?;
    MWMatrix::new(rows, cols, data)
}

pub fn read_cmatrix<T: Scalar>(input: impl BufRead) -> Result<CMWMatrix<T>, MwError> {
    let (rows, cols, tokens) = read_entries(input, 2, T::WORDS)?;
    let mut re = Vec::with_capacity(rows * cols);
    let mut im = Vec::with_capacity(rows * cols);
    for pair in tokens.chunks(2) {
        re.push(parse_entry(&pair[0])?);
        im.push(parse_entry(&pair[1])?);
    }
    CMWMatrix::new(MWMatrix::new(rows, cols, re)?, MWMatrix::new(rows, cols, im)?)
}
