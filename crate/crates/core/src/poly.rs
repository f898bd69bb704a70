//! Real-coefficient polynomial evaluation: Horner, Estrin and lane-batched
//! Estrin, at real or complex arguments.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::batch::Batchable;
use crate::error::MwError;
use crate::multiword::{ComplexMW, MultiFloat, Scalar, Variant};
use crate::oracle::{self, BigComplex, BigFloat, Rational};
use crate::rng::{rng_from_seed, uniform01};

/// Values that can be added and multiplied: multiwords, lane batches and
/// their complex counterparts.
pub trait Ring: Copy {
    fn ring_add(self, o: Self, v: Variant) -> Self;
    fn ring_mul(self, o: Self, v: Variant) -> Self;
}

impl<T: MultiFloat> Ring for T {
    #[inline(always)]
    fn ring_add(self, o: Self, v: Variant) -> Self {
        self.add(o, v)
    }
    #[inline(always)]
    fn ring_mul(self, o: Self, v: Variant) -> Self {
        self.mul(o, v)
    }
}

impl<T: MultiFloat> Ring for ComplexMW<T> {
    #[inline(always)]
    fn ring_add(self, o: Self, v: Variant) -> Self {
        self.add(o, v)
    }
    #[inline(always)]
    fn ring_mul(self, o: Self, v: Variant) -> Self {
        self.mul(o, v)
    }
}

/// `b = a[n]`, then `b = b x + a[i]` down to `i = 0`.
pub fn horner<R: Ring>(coeffs: &[R], x: R, v: Variant) -> R {
    let (last, rest) = coeffs.split_last().expect("at least one coefficient");
    rest.iter().rev().fold(*last, |b, &a| b.ring_mul(x, v).ring_add(a, v))
}

/// Estrin's scheme over a zero-padded power-of-two buffer: each level
/// replaces pairs by `a[2i+1] p + a[2i]` and squares `p`.
pub fn estrin<R: Ring>(buf: &mut [R], x: R, v: Variant) -> R {
    debug_assert!(buf.len().is_power_of_two());
    let mut len = buf.len();
    let mut p = x;
    while len > 1 {
        for i in 0..len / 2 {
            buf[i] = buf[2 * i + 1].ring_mul(p, v).ring_add(buf[2 * i], v);
        }
        len /= 2;
        if len > 1 {
            p = p.ring_mul(p, v);
        }
    }
    buf[0]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EvalMethod {
    Horner,
    Estrin,
    /// Estrin over lane batches of evaluation points.
    EstrinBatched,
}

impl EvalMethod {
    pub const ALL: [EvalMethod; 3] = [EvalMethod::Horner, EvalMethod::Estrin, EvalMethod::EstrinBatched];

    pub fn name(self) -> &'static str {
        match self {
            EvalMethod::Horner => "horner",
            EvalMethod::Estrin => "estrin",
            EvalMethod::EstrinBatched => "estrin-simd",
        }
    }
}

impl fmt::Display for EvalMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EvalMethod {
    type Err = MwError;

    fn from_str(s: &str) -> Result<Self, MwError> {
        match s.to_ascii_lowercase().as_str() {
            "horner" => Ok(EvalMethod::Horner),
            "estrin" => Ok(EvalMethod::Estrin),
            "estrin-simd" | "estrin_simd" | "simd" => Ok(EvalMethod::EstrinBatched),
            _ => Err(MwError::InvalidArgument(format!("unknown method {s:?}"))),
        }
    }
}

/// `p(x) = sum a[i] x^i` with multiword coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct MWPolynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> MWPolynomial<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self, MwError> {
        if coeffs.is_empty() {
            return Err(MwError::Empty("polynomial without coefficients"));
        }
        if coeffs.iter().any(|c| c.words().iter().any(|w| !w.is_finite())) {
            return Err(MwError::Domain("non-finite coefficient"));
        }
        Ok(MWPolynomial { coeffs })
    }

    pub fn from_f64(coeffs: &[f64]) -> Result<Self, MwError> {
        Self::new(coeffs.iter().map(|&c| T::from_base(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn horner_eval(&self, x: T, v: Variant) -> T {
        horner(&self.coeffs, x, v)
    }

    pub fn estrin_eval(&self, x: T, v: Variant) -> T {
        let mut buf = self.padded(|c| c);
        estrin(&mut buf, x, v)
    }

    /// Estrin at `W` points at once; lane `l` equals `estrin_eval` at lane
    /// `l` of `xs` bit for bit.
    pub fn estrin_eval_batched<const W: usize>(&self, xs: T::Batch<W>, v: Variant) -> T::Batch<W>
    where
        T: Batchable,
    {
        let mut buf = self.padded(T::splat_batch::<W>);
        estrin(&mut buf, xs, v)
    }

    pub fn eval(&self, x: T, method: EvalMethod, v: Variant) -> T {
        match method {
            EvalMethod::Horner => self.horner_eval(x, v),
            EvalMethod::Estrin | EvalMethod::EstrinBatched => self.estrin_eval(x, v),
        }
    }

    /// Evaluates at every point. The batched method packs `width` points
    /// per call; a short tail is padded with zeros.
    pub fn eval_many(&self, xs: &[T], method: EvalMethod, v: Variant, width: usize) -> Vec<T>
    where
        T: Batchable,
    {
        match method {
            EvalMethod::EstrinBatched => {
                let mut out = vec![T::zero(); xs.len()];
                crate::with_width!(width, W => {
                    let mut buf = self.padded(T::splat_batch::<W>);
                    let coeffs = buf.clone();
                    for (chunk, o) in xs.chunks(W).zip(out.chunks_mut(W)) {
                        buf.copy_from_slice(&coeffs);
                        let r = estrin(&mut buf, T::gather_batch::<W>(chunk), v);
                        T::scatter_batch::<W>(&r, o);
                    }
                });
                out
            }
            EvalMethod::Estrin => {
                let coeffs = self.padded(|c| c);
                let mut buf = coeffs.clone();
                xs.iter()
                    .map(|&x| {
                        buf.copy_from_slice(&coeffs);
                        estrin(&mut buf, x, v)
                    })
                    .collect()
            }
            EvalMethod::Horner => xs.iter().map(|&x| self.horner_eval(x, v)).collect(),
        }
    }

    pub fn eval_complex(&self, z: ComplexMW<T>, method: EvalMethod, v: Variant) -> ComplexMW<T> {
        match method {
            EvalMethod::Horner => {
                let c: Vec<ComplexMW<T>> = self.coeffs.iter().map(|&a| ComplexMW::from_real(a)).collect();
                horner(&c, z, v)
            }
            EvalMethod::Estrin | EvalMethod::EstrinBatched => {
                let mut buf = self.padded(ComplexMW::from_real);
                estrin(&mut buf, z, v)
            }
        }
    }

    /// Complex points evaluated `width` at a time with the batched method.
    pub fn eval_complex_many(
        &self,
        zs: &[ComplexMW<T>],
        method: EvalMethod,
        v: Variant,
        width: usize,
    ) -> Vec<ComplexMW<T>>
    where
        T: Batchable,
    {
        if method != EvalMethod::EstrinBatched {
            return zs.iter().map(|&z| self.eval_complex(z, method, v)).collect();
        }
        let mut out = vec![ComplexMW::zero(); zs.len()];
        crate::with_width!(width, W => {
            let coeffs = self.padded(|c| ComplexMW::from_real(T::splat_batch::<W>(c)));
            let mut buf = coeffs.clone();
            let mut re = vec![T::zero(); W];
            let mut im = vec![T::zero(); W];
            for (chunk, o) in zs.chunks(W).zip(out.chunks_mut(W)) {
                let re_in: Vec<T> = chunk.iter().map(|z| z.re).collect();
                let im_in: Vec<T> = chunk.iter().map(|z| z.im).collect();
                let z = ComplexMW::new(T::gather_batch::<W>(&re_in), T::gather_batch::<W>(&im_in));
                buf.copy_from_slice(&coeffs);
                let r = estrin(&mut buf, z, v);
                T::scatter_batch::<W>(&r.re, &mut re);
                T::scatter_batch::<W>(&r.im, &mut im);
                for (l, slot) in o.iter_mut().enumerate() {
                    *slot = ComplexMW::new(re[l], im[l]);
                }
            }
        });
        out
    }

    fn padded<R: Ring>(&self, f: impl Fn(T) -> R) -> Vec<R> {
        let m = self.coeffs.len().next_power_of_two();
        let zero = f(T::zero());
        let mut buf: Vec<R> = self.coeffs.iter().map(|&c| f(c)).collect();
        buf.resize(m, zero);
        buf
    }

    /// `sum |a[i]| |x|^i` in binary64, the natural scale of rounding errors.
    pub fn abs_scale(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |b, c| b * ax + c.words()[0].abs())
    }

    pub fn to_bigfloats(&self) -> Vec<BigFloat> {
        self.coeffs
            .iter()
            .map(|c| oracle::words_to_bigfloat(c.words()))
            .collect()
    }

    /// Reference value in 300-bit arithmetic.
    pub fn oracle_eval(&self, x: &T) -> BigFloat {
        oracle::oracle_horner(&self.to_bigfloats(), &oracle::words_to_bigfloat(x.words()))
    }

    pub fn oracle_eval_complex(&self, z: &ComplexMW<T>) -> BigComplex {
        let c: Vec<BigComplex> = self.to_bigfloats().into_iter().map(BigComplex::from_real).collect();
        oracle::oracle_horner_complex(&c, &to_big_complex(z))
    }

    /// Writes `POLY K n` and the coefficients from low to high degree.
    pub fn write_to(&self, out: &mut impl Write) -> Result<(), MwError> {
        let io = |e: std::io::Error| MwError::Format(e.to_string());
        writeln!(out, "POLY {} {}", T::WORDS, self.degree()).map_err(io)?;
        let digits = (53 * T::WORDS) * 30103 / 100000 + 6;
        for c in &self.coeffs {
            writeln!(out, "{}", oracle::words_to_rational(c.words()).to_scientific(digits)).map_err(io)?;
        }
        Ok(())
    }

    pub fn read_from(input: impl BufRead) -> Result<Self, MwError> {
        Self::parse(input, true)
    }

    /// Like [`read_from`](Self::read_from) but accepts any word count in
    /// the header, rounding each decimal coefficient to `K` words.
    pub fn read_rounded(input: impl BufRead) -> Result<Self, MwError> {
        Self::parse(input, false)
    }

    fn parse(input: impl BufRead, strict: bool) -> Result<Self, MwError> {
        let mut tokens = Vec::new();
        for line in input.lines() {
            let line = line.map_err(|e| MwError::Format(e.to_string()))?;
            tokens.extend(line.split_whitespace().map(str::to_owned));
        }
        if tokens.len() < 3 || tokens[0] != "POLY" {
            return Err(MwError::Format("missing POLY header".into()));
        }
        let field = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| MwError::Format(format!("bad header field {s:?}")))
        };
        let (k, n) = (field(&tokens[1])?, field(&tokens[2])?);
        if strict && k != T::WORDS {
            return Err(MwError::Format(format!("file holds {k}-word values, expected {}", T::WORDS)));
        }
        let body = &tokens[3..];
        if body.len() != n + 1 {
            return Err(MwError::Format(format!("expected {} coefficients, found {}", n + 1, body.len())));
        }
        let coeffs = body
            .iter()
            .map(|s| {
                let r = Rational::parse_decimal(s)?;
                Ok(T::from_words(&oracle::rational_to_words(&r, T::WORDS)))
            })
            .collect::<Result<_, MwError>>()?;
        Self::new(coeffs)
    }
}

pub fn to_big_complex<T: Scalar>(z: &ComplexMW<T>) -> BigComplex {
    BigComplex::new(
        oracle::words_to_bigfloat(z.re.words()),
        oracle::words_to_bigfloat(z.im.words()),
    )
}

/// Degree-`n` polynomial with coefficients `2 u - 1`, `u` uniform, as
/// binary64 values promoted to `K` words. A zero leading coefficient is
/// redrawn.
pub fn random_polynomial<T: Scalar>(n: usize, seed: u64) -> MWPolynomial<T> {
    let mut rng = rng_from_seed(seed);
    let mut coeffs: Vec<T> = (0..=n)
        .map(|_| T::from_base(2.0 * uniform01(&mut rng) - 1.0))
        .collect();
    while coeffs[n].words()[0] == 0.0 {
        coeffs[n] = T::from_base(2.0 * uniform01(&mut rng) - 1.0);
    }
    MWPolynomial { coeffs }
}

/// `count` evaluation points uniform in `[-1, 1)`.
pub fn random_points<T: Scalar>(count: usize, seed: u64) -> Vec<T> {
    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|_| T::from_base(2.0 * uniform01(&mut rng) - 1.0))
        .collect()
}

/// `count` complex points with both parts uniform in `[-1, 1)`.
pub fn random_complex_points<T: Scalar>(count: usize, seed: u64) -> Vec<ComplexMW<T>> {
    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|_| {
            let re = T::from_base(2.0 * uniform01(&mut rng) - 1.0);
            let im = T::from_base(2.0 * uniform01(&mut rng) - 1.0);
            ComplexMW::new(re, im)
        })
        .collect()
}
