//! Python bindings. Rational functions cross the boundary as `RatFunc`
//! objects; rational numbers come back as `fractions.Fraction`.

use std::sync::Arc;

use carlitz_core::carlitz_numbers::{CarlitzKind, CarlitzNumbers as CoreNumbers, OrderMethod, StirlingKind};
use carlitz_core::classical::{CauchyMethod, CauchyOrderMethod, ClassicalNumbers};
use carlitz_core::exact_arith::{make_field, render_rational, BigRational, FieldParams, RatFunc as CoreRatFunc, RatOp};
use carlitz_core::identities::{run_all, SuiteConfig};
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyList;

fn py_err(e: carlitz_core::Error) -> PyErr {
    match e {
        carlitz_core::Error::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, q: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((render_rational(q),))
}

fn stirling_kind(first: bool) -> StirlingKind {
    if first {
        StirlingKind::First
    } else {
        StirlingKind::Second
    }
}

/// The coefficient field F_r, r = p^e.
#[pyclass(frozen, skip_from_py_object, module = "carlitz")]
#[derive(Clone)]
struct Field {
    inner: Arc<FieldParams>,
}

#[pymethods]
impl Field {
    #[new]
    #[pyo3(signature = (p, e = 1, modulus = None))]
    fn new(p: u64, e: u32, modulus: Option<Vec<u64>>) -> PyResult<Self> {
        let inner = make_field(p, e, modulus.as_deref()).map_err(py_err)?;
        Ok(Field { inner })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn e(&self) -> u32 {
        self.inner.e()
    }

    #[getter]
    fn r(&self) -> u64 {
        self.inner.r()
    }

    /// Parse a rational function such as `"(T + 1) / (T^2 + 2)"`.
    fn ratfunc(&self, s: &str) -> PyResult<RatFunc> {
        Ok(RatFunc(CoreRatFunc::parse(&self.inner, s).map_err(py_err)?))
    }

    fn __repr__(&self) -> String {
        format!("Field(p={}, e={})", self.inner.p(), self.inner.e())
    }
}

/// An element of F_r(T) in canonical form.
#[pyclass(frozen, eq, skip_from_py_object, module = "carlitz")]
#[derive(Clone, PartialEq)]
struct RatFunc(CoreRatFunc);

impl RatFunc {
    fn op(&self, other: &RatFunc, op: RatOp) -> PyResult<RatFunc> {
        Ok(RatFunc(self.0.arith(&other.0, op).map_err(py_err)?))
    }
}

#[pymethods]
impl RatFunc {
    #[getter]
    fn num(&self) -> String {
        self.0.num().to_string()
    }

    #[getter]
    fn den(&self) -> String {
        self.0.den().to_string()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __add__(&self, other: &RatFunc) -> PyResult<RatFunc> {
        self.op(other, RatOp::Add)
    }

    fn __sub__(&self, other: &RatFunc) -> PyResult<RatFunc> {
        self.op(other, RatOp::Sub)
    }

    fn __mul__(&self, other: &RatFunc) -> PyResult<RatFunc> {
        self.op(other, RatOp::Mul)
    }

    fn __truediv__(&self, other: &RatFunc) -> PyResult<RatFunc> {
        self.op(other, RatOp::Div)
    }

    fn __neg__(&self) -> RatFunc {
        RatFunc(-&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RatFunc('{}')", self.0)
    }
}

/// Carlitz analogues over one field, sharing a cache between calls.
#[pyclass(frozen, module = "carlitz")]
struct CarlitzNumbers {
    inner: CoreNumbers,
}

#[pymethods]
impl CarlitzNumbers {
    #[new]
    fn new(field: &Field) -> Self {
        CarlitzNumbers {
            inner: CoreNumbers::for_field(field.inner.clone()),
        }
    }

    #[getter]
    fn field(&self) -> Field {
        Field {
            inner: self.inner.field().clone(),
        }
    }

    fn factorial(&self, n: u64) -> PyResult<RatFunc> {
        Ok(RatFunc(self.inner.cache().factorial_rat(n).map_err(py_err)?))
    }

    #[pyo3(signature = (n, k, first = true))]
    fn stirling(&self, py: Python<'_>, n: u64, k: u64, first: bool) -> PyResult<RatFunc> {
        py.detach(|| self.inner.stirling_carlitz(stirling_kind(first), n, k))
            .map(RatFunc)
            .map_err(py_err)
    }

    fn cauchy(&self, py: Python<'_>, n: u64) -> PyResult<RatFunc> {
        py.detach(|| self.inner.cauchy_carlitz(n)).map(RatFunc).map_err(py_err)
    }

    fn bernoulli(&self, py: Python<'_>, n: u64) -> PyResult<RatFunc> {
        py.detach(|| self.inner.bernoulli_carlitz(n))
            .map(RatFunc)
            .map_err(py_err)
    }

    fn cauchy_order(&self, py: Python<'_>, n: u64, m: u64) -> PyResult<RatFunc> {
        py.detach(|| self.inner.cauchy_carlitz_order(n, m, OrderMethod::Direct))
            .map(RatFunc)
            .map_err(py_err)
    }

    /// Rows `(n, k, value)` of a table; `k` is `None` for one-index kinds.
    #[pyo3(signature = (kind, max_n, order = 1))]
    fn table(&self, py: Python<'_>, kind: &str, max_n: u64, order: u64) -> PyResult<Vec<(u64, Option<u64>, RatFunc)>> {
        let kind = match kind {
            "CC" => CarlitzKind::Cauchy,
            "BC" => CarlitzKind::Bernoulli,
            "CCm" => CarlitzKind::CauchyOrder,
            "stf_C" => CarlitzKind::StirlingFirst,
            "sts_C" => CarlitzKind::StirlingSecond,
            other => return Err(PyValueError::new_err(format!("unknown kind `{other}`"))),
        };
        let t = py.detach(|| self.inner.table(kind, max_n, order)).map_err(py_err)?;
        Ok(t.values.into_iter().map(|((n, k), v)| (n, k, RatFunc(v))).collect())
    }
}

#[pyfunction]
fn cauchy_classical<'py>(py: Python<'py>, n: u64) -> PyResult<Bound<'py, PyAny>> {
    let q = ClassicalNumbers::new()
        .cauchy_classical(n, CauchyMethod::Series)
        .map_err(py_err)?;
    fraction(py, &q)
}

#[pyfunction]
fn cauchy_order_classical<'py>(py: Python<'py>, n: u64, m: u64) -> PyResult<Bound<'py, PyAny>> {
    let q = ClassicalNumbers::new()
        .cauchy_order_classical(n, m, CauchyOrderMethod::Series)
        .map_err(py_err)?;
    fraction(py, &q)
}

#[pyfunction]
fn poly_cauchy<'py>(py: Python<'py>, n: u64, k: u64) -> PyResult<Bound<'py, PyAny>> {
    let q = ClassicalNumbers::new().poly_cauchy(n, k).map_err(py_err)?;
    fraction(py, &q)
}

/// Signed (first kind) or ordinary (second kind) Stirling number.
#[pyfunction]
#[pyo3(signature = (n, k, first = true))]
fn stirling_classical<'py>(py: Python<'py>, n: u64, k: u64, first: bool) -> PyResult<Bound<'py, PyAny>> {
    fraction(
        py,
        &ClassicalNumbers::new().stirling_classical(stirling_kind(first), n, k),
    )
}

/// Run the identity suite; returns one dict per report.
#[pyfunction]
#[pyo3(signature = (fields = None, max_n = 16, prec = 33, identity = None, classical = true))]
fn verify<'py>(
    py: Python<'py>,
    fields: Option<Vec<(u64, u32)>>,
    max_n: u64,
    prec: usize,
    identity: Option<String>,
    classical: bool,
) -> PyResult<Bound<'py, PyList>> {
    let mut cfg = SuiteConfig {
        max_n,
        prec,
        only: identity,
        include_classical: classical,
        ..SuiteConfig::default()
    };
    if let Some(f) = fields {
        cfg.fields = f;
    }
    let reports = py.detach(|| run_all(&cfg)).map_err(py_err)?;
    let loads = py.import("json")?.getattr("loads")?;
    let out = PyList::empty(py);
    for r in &reports {
        let s = serde_json::to_string(r).map_err(|e| PyValueError::new_err(e.to_string()))?;
        out.append(loads.call1((s,))?)?;
    }
    Ok(out)
}

#[pymodule]
pub fn carlitz(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<RatFunc>()?;
    m.add_class::<CarlitzNumbers>()?;
    m.add_function(wrap_pyfunction!(cauchy_classical, m)?)?;
    m.add_function(wrap_pyfunction!(cauchy_order_classical, m)?)?;
    m.add_function(wrap_pyfunction!(poly_cauchy, m)?)?;
    m.add_function(wrap_pyfunction!(stirling_classical, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
