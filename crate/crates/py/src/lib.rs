//! Python module `triharm`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use triharm_core::algebra::{self, Base, DerivedSymbol, Frame, PointAssignment, Rational};
use triharm_core::derivation::RewriteSystem;
use triharm_core::expr::parse_equation;
use triharm_core::geometry;
use triharm_core::proof::{self, Report};
use triharm_core::verify;

create_exception!(triharm, EngineError, PyValueError);

fn err(e: triharm_core::Error) -> PyErr {
    EngineError::new_err(e.to_string())
}

fn rules(omega: bool) -> RewriteSystem {
    if omega {
        RewriteSystem::omega()
    } else {
        RewriteSystem::generic()
    }
}

fn frame(i: u8) -> PyResult<Frame> {
    Frame::from_number(i).ok_or_else(|| PyValueError::new_err(format!("no frame field e{i}")))
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((q.to_string(),))
}

fn rational(v: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let text = v.str()?.to_string();
    parse_equation(&text)
        .ok()
        .and_then(|e| e.to_poly(&RewriteSystem::generic()).as_constant())
        .ok_or_else(|| PyValueError::new_err(format!("not a rational number: {text}")))
}

/// Exact polynomial over k1, k2, f1, f2, sigma, c and their frame derivatives.
#[pyclass(name = "Poly", module = "triharm", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyPoly {
    inner: algebra::Poly,
}

impl From<algebra::Poly> for PyPoly {
    fn from(inner: algebra::Poly) -> Self {
        PyPoly { inner }
    }
}

fn coerce(other: &Bound<'_, PyAny>) -> PyResult<algebra::Poly> {
    if let Ok(p) = other.extract::<PyRef<'_, PyPoly>>() {
        return Ok(p.inner.clone());
    }
    if let Ok(n) = other.extract::<i64>() {
        return Ok(algebra::Poly::int(n));
    }
    Ok(algebra::Poly::constant(rational(other)?))
}

#[pymethods]
impl PyPoly {
    /// Parses an expression or equation; an equation gives `lhs - rhs`.
    #[new]
    #[pyo3(signature = (src, omega = false))]
    fn new(src: &str, omega: bool) -> PyResult<Self> {
        let e = parse_equation(src).map_err(err)?;
        Ok(e.to_poly(&rules(omega)).into())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.inner)
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        coerce(other).is_ok_and(|p| p == self.inner)
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.inner.to_string().hash(&mut h);
        h.finish()
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok((&self.inner + &coerce(other)?).into())
    }

    fn __radd__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok((&coerce(other)? + &self.inner).into())
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok((&self.inner - &coerce(other)?).into())
    }

    fn __rsub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok((&coerce(other)? - &self.inner).into())
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok((&self.inner * &coerce(other)?).into())
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok((&coerce(other)? * &self.inner).into())
    }

    fn __neg__(&self) -> Self {
        (-&self.inner).into()
    }

    fn __pow__(&self, n: u32, _modulo: Option<u32>) -> Self {
        self.inner.pow(n).into()
    }

    fn __bool__(&self) -> bool {
        !self.inner.is_zero()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Applies the frame derivation `e_i`.
    #[pyo3(signature = (i, omega = false))]
    fn derive(&self, i: u8, omega: bool) -> PyResult<Self> {
        Ok(rules(omega).derive(&self.inner, frame(i)?).into())
    }

    #[pyo3(signature = (omega = false))]
    fn laplacian(&self, omega: bool) -> Self {
        rules(omega).laplacian(&self.inner).into()
    }

    #[pyo3(signature = (omega = false))]
    fn normalize(&self, omega: bool) -> Self {
        rules(omega).normalize(&self.inner).into()
    }

    /// Replaces a base symbol by a polynomial.
    fn substitute(&self, name: &str, replacement: &Bound<'_, PyAny>) -> PyResult<Self> {
        let b = Base::from_name(name).ok_or_else(|| PyValueError::new_err(format!("unknown symbol {name}")))?;
        Ok(self.inner.substitute(&DerivedSymbol::base(b), &coerce(replacement)?).into())
    }

    /// Divides by `name^power`; raises if some term lacks the factor.
    #[pyo3(signature = (name, power = 1))]
    fn factor_out_power(&self, name: &str, power: u32) -> PyResult<Self> {
        let b = Base::from_name(name).ok_or_else(|| PyValueError::new_err(format!("unknown symbol {name}")))?;
        self.inner.factor_out_power(&DerivedSymbol::base(b), power).map(Into::into).map_err(err)
    }

    /// Exact value as a `fractions.Fraction`, at a point given as a dict of base values.
    #[pyo3(signature = (at, omega = false))]
    fn evaluate<'py>(&self, py: Python<'py>, at: &Bound<'py, PyDict>, omega: bool) -> PyResult<Bound<'py, PyAny>> {
        let mut point = PointAssignment::new();
        for (k, v) in at.iter() {
            let name: String = k.extract()?;
            let b = Base::from_name(&name).ok_or_else(|| PyValueError::new_err(format!("unknown symbol {name}")))?;
            point.set(DerivedSymbol::base(b), rational(&v)?);
        }
        let value = algebra::evaluate(&self.inner, &point, &rules(omega)).map_err(err)?;
        fraction(py, &value)
    }
}

/// Outcome of replaying a proof script.
#[pyclass(name = "Report", module = "triharm", frozen)]
pub struct PyReport {
    inner: Report,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn script_id(&self) -> &str {
        &self.inner.script_id
    }

    #[getter]
    fn verdict(&self) -> &'static str {
        if self.inner.is_complete() {
            "ProofComplete"
        } else {
            "Failed"
        }
    }

    #[getter]
    fn conclusions(&self) -> Vec<String> {
        self.inner.conclusions.iter().map(|c| c.statement.clone()).collect()
    }

    #[getter]
    fn flags(&self) -> Vec<String> {
        self.inner.flags.clone()
    }

    /// `(index, kind, display id, polynomial, comparison)` per step.
    #[getter]
    fn steps(&self) -> Vec<(usize, String, Option<String>, String, String)> {
        self.inner
            .steps
            .iter()
            .map(|s| (s.index, s.kind.clone(), s.paper_eq.clone(), s.polynomial.clone(), s.comparison.clone()))
            .collect()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __len__(&self) -> usize {
        self.inner.steps.len()
    }

    fn __repr__(&self) -> String {
        format!("Report('{}', {} steps, {})", self.inner.script_id, self.inner.steps.len(), self.verdict())
    }
}

fn pair(p: (algebra::Poly, algebra::Poly)) -> (PyPoly, PyPoly) {
    (p.0.into(), p.1.into())
}

#[pyfunction]
fn tension() -> (PyPoly, PyPoly) {
    pair(geometry::tension_field(&RewriteSystem::generic()).into_pair())
}

#[pyfunction]
#[pyo3(signature = (omega = false, k2_zero = false))]
fn tritension_components(omega: bool, k2_zero: bool) -> (PyPoly, PyPoly) {
    let rs = rules(omega);
    let rs = if k2_zero { rs.with_vanishing([Base::K2]) } else { rs };
    pair(geometry::tritension_components(&rs))
}

#[pyfunction]
#[pyo3(signature = (omega = false))]
fn bitension_components(omega: bool) -> (PyPoly, PyPoly) {
    pair(geometry::bitension_components(&rules(omega)))
}

#[pyfunction]
#[pyo3(signature = (omega = false))]
fn gaussian_curvature(omega: bool) -> PyPoly {
    geometry::gaussian_curvature(&rules(omega)).into()
}

/// Replays `"tri"` or `"bi"`.
#[pyfunction]
fn replay(script: &str) -> PyResult<PyReport> {
    let s = match script {
        "tri" | "triharmonic" => proof::builtin_triharmonic_script(),
        "bi" | "biharmonic" => proof::builtin_biharmonic_script(),
        other => return Err(PyValueError::new_err(format!("unknown script {other}"))),
    };
    Ok(PyReport { inner: proof::replay_script(&s, &RewriteSystem::omega()) })
}

/// `(label, computed, ok)` for the nine connection entries.
#[pyfunction]
fn verify_connection() -> Vec<(String, String, bool)> {
    verify::verify_connection().into_iter().map(|c| (c.label, c.computed, c.ok)).collect()
}

/// `(indices, computed, comparison, ok)` for the seven curvature components.
#[pyfunction]
fn verify_curvature() -> Vec<(String, String, String, bool)> {
    verify::verify_curvature()
        .into_iter()
        .map(|c| {
            let idx: String = c.indices.iter().map(|i| i.to_string()).collect();
            (idx, c.computed.to_string(), c.comparison.to_string(), c.ok)
        })
        .collect()
}

/// Exact evaluation at random rational points with `k1 != 0`; returns `(passed, samples)`.
#[pyfunction]
#[pyo3(signature = (p, omega = false, samples = 100))]
fn numeric_cross_check(p: &PyPoly, omega: bool, samples: usize) -> (bool, usize) {
    let r = proof::numeric_cross_check(&p.inner, &rules(omega), samples);
    (r.passed, r.samples)
}

#[pymodule]
fn triharm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyReport>()?;
    m.add("EngineError", m.py().get_type::<EngineError>())?;
    m.add_function(wrap_pyfunction!(tension, m)?)?;
    m.add_function(wrap_pyfunction!(tritension_components, m)?)?;
    m.add_function(wrap_pyfunction!(bitension_components, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_curvature, m)?)?;
    m.add_function(wrap_pyfunction!(replay, m)?)?;
    m.add_function(wrap_pyfunction!(verify_connection, m)?)?;
    m.add_function(wrap_pyfunction!(verify_curvature, m)?)?;
    m.add_function(wrap_pyfunction!(numeric_cross_check, m)?)?;
    Ok(())
}
