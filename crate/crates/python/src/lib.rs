//! Python bindings: multiword scalars, the Chebyshev root-finding problem
//! and matrix product accuracy.

use mwfloat::linalg::{gen_test_matrices, matmul, min_digits, reference_matmul, MatMulPlan, Scheme};
use mwfloat::multiword::default_digits;
use mwfloat::roots::{chebyshev_coeffs, dk_solve, residual_check, DEFAULT_MAX_ITER};
use mwfloat::{MultiFloat, MwError, Scalar, Variant, DD, QD, TD};
use pyo3::exceptions::{PyArithmeticError, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

#[derive(Clone, Copy, Debug, PartialEq)]
enum Value {
    Dd(DD),
    Td(TD),
    Qd(QD),
}

macro_rules! each {
    ($v:expr, $x:ident => $body:expr) => {
        match $v {
            Value::Dd($x) => Value::Dd($body),
            Value::Td($x) => Value::Td($body),
            Value::Qd($x) => Value::Qd($body),
        }
    };
}

fn err(e: MwError) -> PyErr {
    match e {
        MwError::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        MwError::NoConvergence { .. } | MwError::Collision(..) => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_variant(s: &str) -> PyResult<Variant> {
    s.parse().map_err(err)
}

impl Value {
    fn parse(text: &str, precision: &str) -> PyResult<Value> {
        Ok(match precision {
            "dd" => Value::Dd(DD::from_decimal_str(text).map_err(err)?),
            "td" => Value::Td(TD::from_decimal_str(text).map_err(err)?),
            "qd" => Value::Qd(QD::from_decimal_str(text).map_err(err)?),
            _ => return Err(PyValueError::new_err(format!("unknown precision `{precision}`"))),
        })
    }

    fn precision(&self) -> &'static str {
        match self {
            Value::Dd(_) => "dd",
            Value::Td(_) => "td",
            Value::Qd(_) => "qd",
        }
    }

    fn words(&self) -> Vec<f64> {
        match self {
            Value::Dd(x) => x.words().to_vec(),
            Value::Td(x) => x.words().to_vec(),
            Value::Qd(x) => x.words().to_vec(),
        }
    }

    fn binary(self, o: Value, v: Variant, op: char) -> PyResult<Value> {
        macro_rules! apply {
            ($a:expr, $b:expr) => {
                match op {
                    '+' => $a.add($b, v),
                    '-' => $a.sub($b, v),
                    '*' => $a.mul($b, v),
                    _ => {
                        if $b.words()[0] == 0.0 {
                            return Err(PyZeroDivisionError::new_err("division by zero"));
                        }
                        $a.div($b, v)
                    }
                }
            };
        }
        Ok(match (self, o) {
            (Value::Dd(a), Value::Dd(b)) => Value::Dd(apply!(a, b)),
            (Value::Td(a), Value::Td(b)) => Value::Td(apply!(a, b)),
            (Value::Qd(a), Value::Qd(b)) => Value::Qd(apply!(a, b)),
            _ => {
                return Err(PyValueError::new_err(format!(
                    "precision mismatch: {} and {}",
                    self.precision(),
                    o.precision()
                )))
            }
        })
    }

    fn to_string(&self, digits: Option<usize>) -> String {
        match self {
            Value::Dd(x) => x.to_decimal_string(digits.unwrap_or(default_digits(2))),
            Value::Td(x) => x.to_decimal_string(digits.unwrap_or(default_digits(3))),
            Value::Qd(x) => x.to_decimal_string(digits.unwrap_or(default_digits(4))),
        }
    }
}

/// A double-, triple- or quad-word number.
#[pyclass(frozen, skip_from_py_object, name = "MultiWord", module = "mwfloat_py")]
#[derive(Clone)]
struct PyMultiWord {
    value: Value,
    variant: Variant,
}

#[pymethods]
impl PyMultiWord {
    /// `value` is a decimal string or a float; `precision` is dd, td or qd;
    /// `variant` selects the std or bf algorithms for later arithmetic.
    #[new]
    #[pyo3(signature = (value, precision = "dd", variant = "std"))]
    fn new(value: &Bound<'_, PyAny>, precision: &str, variant: &str) -> PyResult<Self> {
        let text = if let Ok(s) = value.extract::<String>() {
            s
        } else {
            let f: f64 = value.extract()?;
            if !f.is_finite() {
                return Err(PyValueError::new_err("value must be finite"));
            }
            format!("{f:e}")
        };
        Ok(PyMultiWord {
            value: Value::parse(&text, precision)?,
            variant: parse_variant(variant)?,
        })
    }

    #[getter]
    fn precision(&self) -> &'static str {
        self.value.precision()
    }

    #[getter]
    fn variant(&self) -> &'static str {
        self.variant.short_name()
    }

    /// The binary64 components, leading word first.
    fn words(&self) -> Vec<f64> {
        self.value.words()
    }

    #[pyo3(signature = (digits = None))]
    fn to_string(&self, digits: Option<usize>) -> String {
        self.value.to_string(digits)
    }

    fn __float__(&self) -> f64 {
        self.value.words()[0]
    }

    fn __str__(&self) -> String {
        self.value.to_string(None)
    }

    fn __repr__(&self) -> String {
        format!("MultiWord('{}', '{}')", self.value.to_string(None), self.value.precision())
    }

    fn __eq__(&self, o: &Self) -> bool {
        self.value == o.value
    }

    fn __neg__(&self) -> Self {
        PyMultiWord {
            value: each!(self.value, x => x.neg()),
            variant: self.variant,
        }
    }

    fn __add__(&self, o: &Self) -> PyResult<Self> {
        self.op(o, '+')
    }

    fn __sub__(&self, o: &Self) -> PyResult<Self> {
        self.op(o, '-')
    }

    fn __mul__(&self, o: &Self) -> PyResult<Self> {
        self.op(o, '*')
    }

    fn __truediv__(&self, o: &Self) -> PyResult<Self> {
        self.op(o, '/')
    }
}

impl PyMultiWord {
    fn op(&self, o: &Self, c: char) -> PyResult<Self> {
        Ok(PyMultiWord {
            value: self.value.binary(o.value, self.variant, c)?,
            variant: self.variant,
        })
    }
}

fn chebyshev<T: Scalar>(n: usize, v: Variant, max_iter: usize) -> Result<(usize, bool, f64, Vec<(String, String)>), MwError> {
    let q = chebyshev_coeffs::<T>(n)?;
    let s = dk_solve(&q, v, None, max_iter)?;
    let digits = default_digits(T::WORDS);
    let dec = |x: &T| mwfloat::oracle::words_to_rational(x.words()).to_scientific(digits);
    let roots = s.z.iter().map(|z| (dec(&z.re), dec(&z.im))).collect();
    Ok((s.iteration, s.converged, residual_check(&q, &s.z), roots))
}

/// Solves the Chebyshev integration problem of degree `n` by
/// Durand-Kerner iteration. Returns a dict with `iterations`,
/// `converged`, `residual` and `roots` as `(re, im)` decimal strings.
#[pyfunction]
#[pyo3(signature = (n, precision = "dd", variant = "std", max_iter = DEFAULT_MAX_ITER))]
fn solve_chebyshev<'py>(
    py: Python<'py>,
    n: usize,
    precision: &str,
    variant: &str,
    max_iter: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let v = parse_variant(variant)?;
    let (iterations, converged, residual, roots) = py
        .detach(|| match precision {
            "dd" => Ok(chebyshev::<DD>(n, v, max_iter)),
            "td" => Ok(chebyshev::<TD>(n, v, max_iter)),
            "qd" => Ok(chebyshev::<QD>(n, v, max_iter)),
            _ => Err(format!("unknown precision `{precision}`")),
        })
        .map_err(PyValueError::new_err)?
        .map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("iterations", iterations)?;
    d.set_item("converged", converged)?;
    d.set_item("residual", residual)?;
    d.set_item("roots", roots)?;
    Ok(d)
}

fn digits_of<T: mwfloat::batch::Batchable>(n: usize, plan: &MatMulPlan) -> Result<f64, MwError> {
    let (a, b) = gen_test_matrices::<T>(n);
    let c = matmul(&a, &b, plan)?;
    Ok(min_digits(&c, &reference_matmul(&a, &b)))
}

/// Minimum correct decimal digits of the product of the order-`n`
/// sqrt(5)/sqrt(3) test matrices against the exact product.
#[pyfunction]
#[pyo3(signature = (n, precision = "dd", variant = "std", scheme = "strassen", simd = false, threads = 1))]
fn matmul_digits(
    py: Python<'_>,
    n: usize,
    precision: &str,
    variant: &str,
    scheme: &str,
    simd: bool,
    threads: usize,
) -> PyResult<f64> {
    if n == 0 {
        return Err(PyValueError::new_err("n must be positive"));
    }
    let plan = MatMulPlan::new(scheme.parse::<Scheme>().map_err(err)?, parse_variant(variant)?)
        .with_simd(simd)
        .with_threads(threads);
    let r = py.detach(|| match precision {
        "dd" => Some(digits_of::<DD>(n, &plan)),
        "td" => Some(digits_of::<TD>(n, &plan)),
        "qd" => Some(digits_of::<QD>(n, &plan)),
        _ => None,
    });
    r.ok_or_else(|| PyValueError::new_err(format!("unknown precision `{precision}`")))?
        .map_err(err)
}

#[pymodule]
fn mwfloat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMultiWord>()?;
    m.add_function(wrap_pyfunction!(solve_chebyshev, m)?)?;
    m.add_function(wrap_pyfunction!(matmul_digits, m)?)?;
    Ok(())
}
