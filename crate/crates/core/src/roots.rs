//! Durand–Kerner simultaneous root finding with Aberth starting points.

use std::fmt;

use rayon::prelude::*;

use crate::error::MwError;
use crate::multiword::{ComplexMW, Scalar, Variant};
use crate::oracle::{self, transcendental as tr, BigComplex, BigFloat, Rational, ORACLE_BITS};
use crate::poly::{horner, to_big_complex, MWPolynomial};

/// `q(x) = x^n + sum c[i] x^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonicPoly<T> {
    c: Vec<T>,
}

impl<T: Scalar> MonicPoly<T> {
    /// `c` holds `c[0..n]`; the leading 1 is implicit.
    pub fn new(c: Vec<T>) -> Result<Self, MwError> {
        if c.is_empty() {
            return Err(MwError::Empty("monic polynomial of degree zero"));
        }
        Ok(MonicPoly { c })
    }

    /// `p / a[n]`.
    pub fn from_poly(p: &MWPolynomial<T>, v: Variant) -> Result<Self, MwError> {
        let (lead, rest) = p.coeffs().split_last().expect("nonempty");
        if lead.words()[0] == 0.0 {
            return Err(MwError::DivisionByZero);
        }
        Self::new(rest.iter().map(|a| a.div(*lead, v)).collect())
    }

    /// Nearest `K`-word coefficients to exact rationals.
    pub fn from_rationals(c: &[Rational]) -> Result<Self, MwError> {
        Self::new(
            c.iter()
                .map(|r| T::from_words(&oracle::rational_to_words(r, T::WORDS)))
                .collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.c.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    /// All coefficients including the leading 1, low to high.
    pub fn full_coeffs(&self) -> Vec<T> {
        let mut all = self.c.clone();
        all.push(T::one());
        all
    }

    pub fn eval(&self, z: ComplexMW<T>, v: Variant) -> ComplexMW<T> {
        let mut all: Vec<ComplexMW<T>> = self.c.iter().map(|&x| ComplexMW::from_real(x)).collect();
        all.push(ComplexMW::one());
        horner(&all, z, v)
    }

    pub fn to_bigfloats(&self) -> Vec<BigFloat> {
        self.c.iter().map(|x| oracle::words_to_bigfloat(x.words())).collect()
    }
}

/// Approximations after `iteration` sweeps.
#[derive(Clone, Debug, PartialEq)]
pub struct RootState<T> {
    pub z: Vec<ComplexMW<T>>,
    pub iteration: usize,
    pub converged: bool,
    /// `max |dz| / max |z|` of the last sweep, in binary64.
    pub last_update: f64,
}

/// `r = max |n_nz c[i]|^(1/(n-i))` over nonzero `c[i]`, where `n_nz`
/// counts the nonzero coefficients including the leading 1. The roots are
/// taken in the oracle and rounded. All-zero `c` gives `r = 1`.
pub fn radius_estimate<T: Scalar>(q: &MonicPoly<T>) -> T {
    let n = q.degree();
    let nnz = q.c.iter().filter(|x| x.words()[0] != 0.0).count() as i64 + 1;
    let mut r = BigFloat::zero();
    for (i, ci) in q.to_bigfloats().iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        let v = ci.abs().mul_i64(nnz, ORACLE_BITS);
        let root = tr::pow_ratio(&v, 1, (n - i) as i64, ORACLE_BITS).expect("positive base");
        if root > r {
            r = root;
        }
    }
    if r.is_zero() {
        return T::one();
    }
    T::from_words(&oracle::bigfloat_to_words(&r, T::WORDS))
}

/// `z_i = -c[n-1]/n + r exp(((2 (i-1) pi)/n + 3/(2n)) i)` for
/// `i = 1..n`. The unit-circle points come from the oracle; the shift and
/// scaling run in `K`-word arithmetic.
pub fn aberth_init<T: Scalar>(q: &MonicPoly<T>) -> Result<RootState<T>, MwError> {
    let n = q.degree();
    let v = Variant::Standard;
    let r = radius_estimate(q);
    let center = q.c[n - 1].neg().div(T::from_base(n as f64), v);
    let wp = ORACLE_BITS + 16;
    let two_pi = tr::pi(wp).scale2(1);
    let offset = BigFloat::from_u64(3).div_i64(2 * n as i64, wp);
    let round = |x: &BigFloat| T::from_words(&oracle::bigfloat_to_words(x, T::WORDS));
    let z: Vec<ComplexMW<T>> = (0..n)
        .map(|i| {
            let theta = two_pi.mul_i64(i as i64, wp).div_i64(n as i64, wp).add(&offset, wp);
            let (cos, sin) = tr::cos_sin(&theta, ORACLE_BITS);
            let unit = ComplexMW::new(round(&cos), round(&sin));
            ComplexMW::from_real(center).add(unit.scale(r, v), v)
        })
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            if z[i] == z[j] {
                return Err(MwError::Collision(i, j));
            }
        }
    }
    Ok(RootState {
        z,
        iteration: 0,
        converged: false,
        last_update: f64::INFINITY,
    })
}

fn modulus<T: Scalar>(z: &ComplexMW<T>) -> f64 {
    z.re.words()[0].hypot(z.im.words()[0])
}

/// One simultaneous sweep `z_i <- z_i - q(z_i) / prod_{j != i} (z_i - z_j)`.
/// Every update reads only the previous iterate, so the result does not
/// depend on how the sweep is split across threads.
pub fn dk_iterate<T: Scalar>(
    q: &MonicPoly<T>,
    state: &RootState<T>,
    v: Variant,
) -> Result<RootState<T>, MwError> {
    let z = &state.z;
    let n = z.len();
    let coeffs: Vec<ComplexMW<T>> = q.full_coeffs().into_iter().map(ComplexMW::from_real).collect();
    let updates: Vec<Result<(ComplexMW<T>, f64), MwError>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let num = horner(&coeffs, z[i], v);
            let mut den = ComplexMW::one();
            for j in 0..n {
                if j == i {
                    continue;
                }
                let d = z[i].sub(z[j], v);
                if modulus(&d) == 0.0 {
                    return Err(MwError::Collision(i, j));
                }
                den = den.mul(d, v);
            }
            let dz = num.div(den, v);
            Ok((z[i].sub(dz, v), modulus(&dz)))
        })
        .collect();
    let mut next = Vec::with_capacity(n);
    let mut max_dz = 0.0f64;
    for u in updates {
        let (zi, dz) = u?;
        max_dz = max_dz.max(dz);
        next.push(zi);
    }
    let max_z = next.iter().map(modulus).fold(0.0, f64::max);
    let last_update = if max_z > 0.0 { max_dz / max_z } else { max_dz };
    Ok(RootState {
        z: next,
        iteration: state.iteration + 1,
        converged: false,
        last_update,
    })
}

/// Default relative tolerance `2^(-b+10)`.
pub fn default_tolerance<T: Scalar>() -> f64 {
    2f64.powi(-(T::BITS as i32) + 10)
}

pub const DEFAULT_MAX_ITER: usize = 200;

/// Failure of [`dk_solve`], with the iterate whose update was smallest.
#[derive(Debug)]
pub struct DkFailure<T> {
    pub error: MwError,
    pub best: Option<RootState<T>>,
}

impl<T> fmt::Display for DkFailure<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.error.fmt(f)
    }
}

impl<T: fmt::Debug> std::error::Error for DkFailure<T> {}

impl<T> From<DkFailure<T>> for MwError {
    fn from(f: DkFailure<T>) -> MwError {
        f.error
    }
}

/// Iterates from the Aberth points until `max |dz| <= tol max |z|`.
/// `tol = None` uses [`default_tolerance`].
pub fn dk_solve<T: Scalar>(
    q: &MonicPoly<T>,
    v: Variant,
    tol: Option<f64>,
    max_iter: usize,
) -> Result<RootState<T>, DkFailure<T>> {
    let tol = tol.unwrap_or_else(default_tolerance::<T>);
    if !(tol > 0.0) {
        return Err(DkFailure {
            error: MwError::InvalidArgument(format!("tolerance {tol} must be positive")),
            best: None,
        });
    }
    let fail = |error| DkFailure { error, best: None };
    let mut state = aberth_init(q).map_err(fail)?;
    let mut best: Option<RootState<T>> = None;
    for _ in 0..max_iter {
        state = match dk_iterate(q, &state, v) {
            Ok(s) => s,
            Err(error) => return Err(DkFailure { error, best }),
        };
        if state.last_update <= tol {
            state.converged = true;
            return Ok(state);
        }
        if best.as_ref().is_none_or(|b| state.last_update < b.last_update) {
            best = Some(state.clone());
        }
    }
    Err(DkFailure {
        error: MwError::NoConvergence {
            iterations: max_iter,
            last_update: state.last_update,
        },
        best,
    })
}

/// `max |q(z_i)|` evaluated in the oracle.
pub fn residual_check<T: Scalar>(q: &MonicPoly<T>, roots: &[ComplexMW<T>]) -> f64 {
    let mut c: Vec<BigComplex> = q.to_bigfloats().into_iter().map(BigComplex::from_real).collect();
    c.push(BigComplex::from_real(BigFloat::one()));
    roots
        .iter()
        .map(|z| oracle::oracle_horner_complex(&c, &to_big_complex(z)).abs(64).to_f64())
        .fold(0.0, f64::max)
}

/// Largest distance between two root sets after greedily pairing each
/// root of `a` with its nearest unused root of `b`, evaluated in the
/// oracle.
pub fn max_root_distance<T: Scalar>(a: &[ComplexMW<T>], b: &[BigComplex]) -> f64 {
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for z in a {
        let zb = to_big_complex(z);
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, w)| (j, zb.sub(w, ORACLE_BITS).abs(64).to_f64()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("equal sizes");
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

/// Coefficient rule for the Chebyshev integration test problem. Returns
/// `a[0..=n]` with `a[n] = 1` as exact rationals.
pub trait ChebyshevRule {
    fn name(&self) -> &'static str;
    /// `a[n-2k]` given the already computed `a[n-2(k-j)]` for `j = 1..k`,
    /// passed as `prev[j - 1]`.
    fn step(&self, n: usize, k: usize, prev: &[Rational]) -> Rational;
}

/// `a[n-2k] = -sum_{j=1..k} a[n-2(k-j)] / (2j+1)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct WeightedSum;

impl ChebyshevRule for WeightedSum {
    fn name(&self) -> &'static str {
        "weighted-sum"
    }

    fn step(&self, _n: usize, k: usize, prev: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for j in 1..=k {
            s = s.add(&prev[j - 1].mul(&Rational::from_ratio(1, 2 * j as i64 + 1)));
        }
        s.neg()
    }
}

/// Newton's identities for power sums `s_{2j} = n / (2j+1)`:
/// `a[n-2k] = -(n / 2k) sum_{j=1..k} a[n-2(k-j)] / (2j+1)`. Its roots are
/// the classical equal-weight quadrature nodes.
#[derive(Clone, Copy, Debug, Default)]
pub struct NewtonIdentities;

impl ChebyshevRule for NewtonIdentities {
    fn name(&self) -> &'static str {
        "newton"
    }

    fn step(&self, n: usize, k: usize, prev: &[Rational]) -> Rational {
        WeightedSum
            .step(n, k, prev)
            .mul(&Rational::from_ratio(n as i64, 2 * k as i64))
    }
}

/// Exact coefficients `a[0..=n]` under `rule`; odd offsets from the top
/// are zero.
pub fn chebyshev_rationals(n: usize, rule: &dyn ChebyshevRule) -> Vec<Rational> {
    let mut a = vec![Rational::zero(); n + 1];
    a[n] = Rational::one();
    for k in 1..=n / 2 {
        let prev: Vec<Rational> = (1..=k).map(|j| a[n - 2 * (k - j)].clone()).collect();
        a[n - 2 * k] = rule.step(n, k, &prev);
    }
    a
}

/// The Chebyshev integration problem of degree `n` under the default rule.
pub fn chebyshev_coeffs<T: Scalar>(n: usize) -> Result<MonicPoly<T>, MwError> {
    chebyshev_coeffs_with(n, &WeightedSum)
}

pub fn chebyshev_coeffs_with<T: Scalar>(n: usize, rule: &dyn ChebyshevRule) -> Result<MonicPoly<T>, MwError> {
    if n < 2 {
        return Err(MwError::InvalidArgument("Chebyshev problem needs n >= 2".into()));
    }
    let a = chebyshev_rationals(n, rule);
    MonicPoly::from_rationals(&a[..n])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiword::{MultiFloat, DD, QD, TD};

    fn monic<T: Scalar>(c: &[f64]) -> MonicPoly<T> {
        MonicPoly::new(c.iter().map(|&x| T::from_base(x)).collect()).unwrap()
    }

    #[test]
    fn radius_examples() {
        let q = monic::<DD>(&[-2.0, 0.0]);
        assert_eq!(radius_estimate(&q).to_f64(), 2.0);
        let q = monic::<TD>(&[0.0, 0.0, 0.0]);
        assert_eq!(radius_estimate(&q).to_f64(), 1.0);
        // scaling c[i] by 2^(n-i) doubles r
        let c = [0.3, -1.7, 0.0, 2.2];
        let scaled: Vec<f64> = c.iter().enumerate().map(|(i, x)| x * 2f64.powi(4 - i as i32)).collect();
        let r1 = radius_estimate(&monic::<QD>(&c));
        let r2 = radius_estimate(&monic::<QD>(&scaled));
        let ratio = r2.div(r1, Variant::Standard).sub(QD::from_base(2.0), Variant::Standard);
        assert!(ratio.to_f64().abs() < 1e-60);
    }

    #[test]
    fn aberth_points_on_unit_circle() {
        let q = monic::<QD>(&[1.0, 0.0, 0.0, 0.0]);
        let s = aberth_init(&q).unwrap();
        // r = |2 * 1|^(1/4)
        let r = 2f64.powf(0.25);
        for (k, z) in s.z.iter().enumerate() {
            let theta = 3.0 / 8.0 + k as f64 * std::f64::consts::FRAC_PI_2;
            assert!((z.re.to_f64() - r * theta.cos()).abs() < 1e-15);
            assert!((z.im.to_f64() - r * theta.sin()).abs() < 1e-15);
        }
        let one = aberth_init(&monic::<DD>(&[-3.0])).unwrap();
        let expect_re = 3.0 + 6.0 * 1.5f64.cos();
        assert!((one.z[0].re.to_f64() - expect_re).abs() < 1e-14);
    }

    #[test]
    fn quadratic_converges() {
        let q = monic::<TD>(&[-1.0, 0.0]);
        for v in Variant::ALL {
            let s = dk_solve(&q, v, None, DEFAULT_MAX_ITER).unwrap();
            assert!(s.iteration <= 10, "{}", s.iteration);
            let mut re: Vec<f64> = s.z.iter().map(|z| z.re.to_f64()).collect();
            re.sort_by(f64::total_cmp);
            assert_eq!(re, vec![-1.0, 1.0]);
            for z in &s.z {
                let target = if z.re.to_f64() > 0.0 { 1.0 } else { -1.0 };
                let d = z.re.sub(TD::from_base(target), v).to_f64().abs() + z.im.to_f64().abs();
                assert!(d <= 10.0 * 2f64.powi(-159));
            }
        }
    }

    #[test]
    fn triple_root_residual() {
        // (z - 1)^3
        let q = monic::<DD>(&[-1.0, 3.0, -3.0]);
        let s = match dk_solve(&q, Variant::Standard, None, DEFAULT_MAX_ITER) {
            Ok(s) => s,
            Err(f) => f.best.expect("some iterate"),
        };
        assert!(residual_check(&q, &s.z) < 1e-28);
        for z in &s.z {
            assert!((z.re.to_f64() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn chebyshev_structure() {
        let a = chebyshev_rationals(10, &WeightedSum);
        for k in 1..=5 {
            assert!(a[10 - (2 * k - 1)].is_zero());
        }
        let a2 = chebyshev_rationals(2, &WeightedSum);
        assert_eq!(a2[0], Rational::from_ratio(-1, 3));
        let n3 = chebyshev_rationals(3, &NewtonIdentities);
        assert_eq!(n3[1], Rational::from_ratio(-1, 2));
        assert!(chebyshev_coeffs::<DD>(1).is_err());
    }

    fn against_oracle<T: Scalar>(n: usize) {
        let q = chebyshev_coeffs::<T>(n).unwrap();
        let exact = oracle::oracle_dk(&q.to_bigfloats(), 500).unwrap();
        let digits = (T::BITS as f64 * std::f64::consts::LOG10_2).floor() - 5.0;
        for v in Variant::ALL {
            let s = dk_solve(&q, v, None, DEFAULT_MAX_ITER).unwrap();
            let d = max_root_distance(&s.z, &exact);
            assert!(d <= 10f64.powf(-digits), "K={} n={n} {v:?}: {d:e}", T::WORDS);
        }
    }

    #[test]
    fn chebyshev_roots_match_oracle() {
        against_oracle::<DD>(8);
        against_oracle::<TD>(8);
        against_oracle::<QD>(8);
    }

    #[test]
    fn thread_count_does_not_matter() {
        let q = chebyshev_coeffs::<TD>(16).unwrap();
        let run = |t| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .unwrap()
                .install(|| dk_solve(&q, Variant::BranchFree, None, DEFAULT_MAX_ITER).unwrap())
        };
        let one = run(1);
        assert_eq!(one, run(2));
        assert_eq!(one, run(8));
    }

    #[test]
    fn collision_is_reported() {
        let q = monic::<DD>(&[0.0, 0.0]);
        let z = ComplexMW::from_real(DD::from_base(0.5));
        let s = RootState {
            z: vec![z, z],
            iteration: 0,
            converged: false,
            last_update: 1.0,
        };
        assert!(matches!(dk_iterate(&q, &s, Variant::Standard), Err(MwError::Collision(0, 1))));
    }

    #[test]
    fn no_convergence_keeps_best_state() {
        let q = chebyshev_coeffs::<DD>(12).unwrap();
        let err = dk_solve(&q, Variant::Standard, None, 2).unwrap_err();
        assert!(matches!(err.error, MwError::NoConvergence { iterations: 2, .. }));
        assert_eq!(err.best.unwrap().z.len(), 12);
        assert!(dk_solve(&q, Variant::Standard, Some(0.0), 5).is_err());
    }

    #[test]
    fn residual_of_exact_roots() {
        let q = monic::<DD>(&[2.0, -3.0]);
        let roots = [ComplexMW::from_real(DD::from_base(1.0)), ComplexMW::from_real(DD::from_base(2.0))];
        assert_eq!(residual_check(&q, &roots), 0.0);
        // q'(1) = -1
        let eps = 2f64.powi(-40);
        let r = residual_check(&q, &[ComplexMW::from_real(DD::from_base(1.0 + eps))]);
        assert!((r / eps - 1.0).abs() < 1e-6);
    }
}
