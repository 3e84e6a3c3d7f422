//! Python bindings: coefficient sets, metrics, evaluation, condition checks
//! and the verification blocks. Structured results come back as plain dicts.

use std::sync::Arc;

use curvclass::btensor::{
    build_tensor, class_identity_residual, classify, contraction_profile, gct_canonical_form, is_gct, is_proper_gct,
    is_skew_endomorphism, parse_named, BCoefficients,
};
use curvclass::catalog::{self, SampleBox};
use curvclass::metric::{MetricField, MetricSpec};
use curvclass::scalar::{parse_rational, rational_to_string};
use curvclass::structure::{run_condition, sample_packages, Condition, ConditionArgs, TensorField};
use curvclass::verify::{run as run_blocks, VerifyConfig};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// The eleven rational coefficients `a0..a10` at dimension `n`.
#[pyclass(name = "Coefficients", frozen, skip_from_py_object)]
struct PyCoefficients {
    inner: BCoefficients,
}

#[pymethods]
impl PyCoefficients {
    /// `a` holds eleven rationals as strings (`"1/3"`) or numbers.
    #[new]
    fn new(n: usize, a: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let a = a
            .iter()
            .map(|v| parse_rational(&v.str()?.to_string()).map_err(err))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyCoefficients {
            inner: BCoefficients::new(n, a).map_err(err)?,
        })
    }

    /// Named row such as `"W"` or `"C*:a0=1,a2=1/3"`.
    #[staticmethod]
    fn named(spec: &str, n: usize) -> PyResult<Self> {
        Ok(PyCoefficients {
            inner: parse_named(spec, n).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn a(&self) -> Vec<String> {
        self.inner.as_slice().iter().map(rational_to_string).collect()
    }

    /// Class number 1..4.
    fn class_id(&self) -> u8 {
        classify(&self.inner).class.number()
    }

    fn profile<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &contraction_profile(&self.inner))
    }

    fn is_gct(&self) -> bool {
        is_gct(&self.inner)
    }

    fn is_proper_gct(&self) -> bool {
        is_proper_gct(&self.inner)
    }

    fn is_skew(&self) -> bool {
        is_skew_endomorphism(&self.inner)
    }

    /// `(b0, b1, b2)` with `B = b0 R + b1 g∧S + b2 r g∧g`, or `None`.
    fn canonical_form(&self) -> Option<(String, String, String)> {
        gct_canonical_form(&self.inner).ok().map(|f| {
            (
                rational_to_string(&f.b0),
                rational_to_string(&f.b1),
                rational_to_string(&f.b2),
            )
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyCoefficients {
            inner: serde_json::from_str(text).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("Coefficients(n={}, a=[{}])", self.inner.n(), self.a().join(", "))
    }
}

/// A metric field: a catalog entry or a JSON description.
#[pyclass(name = "Metric", frozen, skip_from_py_object)]
struct PyMetric {
    name: String,
    field: Arc<dyn MetricField>,
    sample_box: Option<SampleBox>,
}

#[pymethods]
impl PyMetric {
    #[staticmethod]
    fn catalog(spec: &str) -> PyResult<Self> {
        let m = catalog::get(spec).map_err(err)?;
        Ok(PyMetric {
            name: m.spec,
            field: m.field,
            sample_box: Some(m.sample_box),
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let spec: MetricSpec = serde_json::from_str(text).map_err(err)?;
        Ok(PyMetric {
            name: spec.name.clone(),
            field: spec.build().map_err(err)?,
            sample_box: None,
        })
    }

    #[staticmethod]
    fn list() -> Vec<&'static str> {
        catalog::list()
    }

    #[getter]
    fn name(&self) -> String {
        self.name.clone()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.field.dim()
    }

    /// Metric components `g_ij` at `point`, row-major.
    fn values(&self, point: Vec<f64>) -> PyResult<Vec<f64>> {
        self.field.values_at(&point).map_err(err)
    }

    /// Admissible sample points (catalog metrics only).
    #[pyo3(signature = (count, seed=0))]
    fn sample_points(&self, count: usize, seed: u64) -> PyResult<Vec<Vec<f64>>> {
        if self.sample_box.is_none() {
            return Err(PyValueError::new_err(
                "sample points need a catalog metric; pass points explicitly",
            ));
        }
        Ok(catalog::get(&self.name).map_err(err)?.sample_points(count, seed))
    }

    fn __repr__(&self) -> String {
        format!("Metric({:?}, dim={})", self.name, self.field.dim())
    }
}

fn resolve_points(
    metric: &PyMetric,
    points: Option<Vec<Vec<f64>>>,
    count: usize,
    seed: u64,
) -> PyResult<Vec<Vec<f64>>> {
    match points {
        Some(p) => Ok(p),
        None => metric.sample_points(count, seed),
    }
}

/// Components of `B` at each point (flat row-major `n^4` lists) plus the
/// class-identity residual.
#[pyfunction]
#[pyo3(signature = (coefficients, metric, points=None, count=4, seed=0))]
fn evaluate<'py>(
    py: Python<'py>,
    coefficients: &PyCoefficients,
    metric: &PyMetric,
    points: Option<Vec<Vec<f64>>>,
    count: usize,
    seed: u64,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    if coefficients.inner.n() != metric.field.dim() {
        return Err(err(format!(
            "dimension mismatch: coefficients n = {}, metric dim = {}",
            coefficients.inner.n(),
            metric.field.dim()
        )));
    }
    let pts = resolve_points(metric, points, count, seed)?;
    let pkgs = sample_packages(metric.field.as_ref(), &pts, 0).map_err(err)?;
    let mut out = Vec::new();
    for pkg in &pkgs {
        let b = build_tensor(&coefficients.inner, pkg).map_err(err)?;
        let residual = class_identity_residual(&coefficients.inner, pkg)
            .map_err(err)?
            .map(|(_, r)| r);
        let v = serde_json::json!({
            "coords": pkg.point(),
            "components": b.data(),
            "norm": b.max_norm(),
            "identity_residual": residual,
        });
        out.push(to_py(py, &v)?);
    }
    Ok(out)
}

/// Runs a named condition; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (condition, metric, tensor="R", points=None, count=8, seed=0, d=None, a=None, psi=None, tol=None))]
#[allow(clippy::too_many_arguments)]
fn check<'py>(
    py: Python<'py>,
    condition: &str,
    metric: &PyMetric,
    tensor: &str,
    points: Option<Vec<Vec<f64>>>,
    count: usize,
    seed: u64,
    d: Option<&str>,
    a: Option<&str>,
    psi: Option<Vec<f64>>,
    tol: Option<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let cond: Condition = condition.parse().map_err(err)?;
    let n = metric.field.dim();
    let t = TensorField::parse(tensor, n).map_err(err)?;
    let args = ConditionArgs {
        d: d.map(|s| TensorField::parse(s, n)).transpose().map_err(err)?,
        a: a.map(|s| TensorField::parse(s, n)).transpose().map_err(err)?,
        psi,
    };
    let pts = resolve_points(metric, points, count, seed)?;
    let pkgs = sample_packages(metric.field.as_ref(), &pts, cond.depth()).map_err(err)?;
    let tol = tol.unwrap_or(cond.default_tolerance());
    let report = run_condition(&cond, &pkgs, &t, &args, tol)
        .map_err(err)?
        .with_metric(metric.name.clone());
    to_py(py, &report)
}

/// Verification blocks; `blocks` empty means all.
#[pyfunction]
#[pyo3(signature = (dims=vec![3, 4], seeds=vec![0], points=8, scale=1.0, blocks=vec![]))]
fn verify<'py>(
    py: Python<'py>,
    dims: Vec<usize>,
    seeds: Vec<u64>,
    points: usize,
    scale: f64,
    blocks: Vec<String>,
) -> PyResult<Bound<'py, PyAny>> {
    let cfg = VerifyConfig {
        algebra_dims: dims.clone(),
        metric_dims: dims,
        seeds,
        points,
        scale,
    };
    let results = py.detach(|| run_blocks(&cfg, &blocks));
    to_py(py, &results)
}

#[pymodule]
fn curvclass_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCoefficients>()?;
    m.add_class::<PyMetric>()?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
