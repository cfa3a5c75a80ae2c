//! Python bindings. Entries cross the boundary as exact strings (`"3/4"`),
//! or anything whose `str()` is one, such as `int` and `fractions.Fraction`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;

use ssr_core::construct::{extend_border, extend_border_ssr_p};
use ssr_core::insert::{insert_line, insert_line_ssr_p};
use ssr_core::{Axis, ConstructionTrace, Mat, Scalar, Side, Sign, SignPattern};

create_exception!(ssr_matrices, SsrError, PyValueError);

/// `(rows, cols, value, required_sign)`
type WitnessTuple = (Vec<usize>, Vec<usize>, String, Option<String>);

fn err(e: ssr_core::SsrError) -> PyErr {
    SsrError::new_err(e.to_string())
}

#[pyclass(
    module = "ssr_matrices",
    name = "Matrix",
    frozen,
    eq,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
struct PyMatrix {
    inner: Mat,
}

#[pymethods]
impl PyMatrix {
    #[new]
    fn new(rows: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(to_scalar).collect::<PyResult<Vec<_>>>())
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyMatrix {
            inner: Mat::from_rows(rows).map_err(err)?,
        })
    }

    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.inner.cols()
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        self.inner.shape()
    }

    /// Entries as canonical strings.
    fn entries(&self) -> Vec<Vec<String>> {
        self.inner
            .to_rows()
            .iter()
            .map(|r| r.iter().map(Scalar::to_string).collect())
            .collect()
    }

    /// Entries as `fractions.Fraction`.
    fn to_fractions<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let fraction = py.import("fractions")?.getattr("Fraction")?;
        let rows = self
            .inner
            .to_rows()
            .iter()
            .map(|r| {
                let cells = r
                    .iter()
                    .map(|x| fraction.call1((x.to_string(),)))
                    .collect::<PyResult<Vec<_>>>()?;
                PyList::new(py, cells)
            })
            .collect::<PyResult<Vec<_>>>()?;
        PyList::new(py, rows)
    }

    fn transpose(&self) -> Self {
        PyMatrix {
            inner: self.inner.transpose(),
        }
    }

    /// Minor on 1-based row and column index sets, as a string.
    fn minor(&self, rows: Vec<usize>, cols: Vec<usize>) -> PyResult<String> {
        Ok(self.inner.minor(&rows, &cols).map_err(err)?.to_string())
    }

    fn __repr__(&self) -> String {
        let rows: Vec<String> = self
            .entries()
            .iter()
            .map(|r| format!("[{}]", r.join(", ")))
            .collect();
        format!("Matrix([{}])", rows.join(", "))
    }
}

fn to_scalar(obj: &Bound<'_, PyAny>) -> PyResult<Scalar> {
    if obj.is_instance_of::<pyo3::types::PyFloat>() {
        return Err(SsrError::new_err(
            "floats are not exact; pass str, int or Fraction",
        ));
    }
    obj.str()?.to_str()?.parse::<Scalar>().map_err(err)
}

fn pattern(signs: &str, expected: usize) -> PyResult<SignPattern> {
    let parsed = signs
        .chars()
        .map(|c| Sign::from_char(c).ok_or_else(|| ssr_core::SsrError::InvalidSign(c.to_string())))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    if parsed.len() != expected {
        return Err(err(ssr_core::SsrError::PatternLength {
            expected,
            found: parsed.len(),
        }));
    }
    SignPattern::new(parsed).map_err(err)
}

fn sign(s: Option<&str>) -> PyResult<Option<Sign>> {
    s.map(|s| {
        let mut chars = s.chars();
        match (chars.next().and_then(Sign::from_char), chars.next()) {
            (Some(sign), None) => Ok(sign),
            _ => Err(SsrError::new_err(format!("expected '+' or '-', got {s:?}"))),
        }
    })
    .transpose()
}

fn trace_object(py: Python<'_>, trace: &ConstructionTrace) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(trace).expect("serializable trace");
    Ok(py
        .import("json")?
        .getattr("loads")?
        .call1((text,))?
        .unbind())
}

/// An `m x n` strictly sign regular matrix with the given signs
/// (one per minor size). With `trace=True` returns `(matrix, trace)`.
#[pyfunction]
#[pyo3(signature = (m, n, signs, trace = false))]
fn ssr_construction(
    py: Python<'_>,
    m: usize,
    n: usize,
    signs: &str,
    trace: bool,
) -> PyResult<Py<PyAny>> {
    let eps = pattern(signs, m.min(n))?;
    let (a, t) = ssr_core::ssr_construction(m, n, &eps).map_err(err)?;
    wrap(py, a, trace.then_some(t))
}

/// An `m x n` matrix whose minors up to size `p` follow `signs`.
#[pyfunction]
#[pyo3(signature = (m, n, p, signs, trace = false))]
fn ssr_p_construction(
    py: Python<'_>,
    m: usize,
    n: usize,
    p: usize,
    signs: &str,
    trace: bool,
) -> PyResult<Py<PyAny>> {
    let eps = pattern(signs, p)?;
    let (a, t) = ssr_core::ssr_p_construction(m, n, p, &eps).map_err(err)?;
    wrap(py, a, trace.then_some(t))
}

fn wrap(py: Python<'_>, a: Mat, trace: Option<ConstructionTrace>) -> PyResult<Py<PyAny>> {
    let matrix = Py::new(py, PyMatrix { inner: a })?;
    match trace {
        None => Ok(matrix.into_any()),
        Some(t) => Ok((matrix, trace_object(py, &t)?)
            .into_pyobject(py)?
            .into_any()
            .unbind()),
    }
}

#[pyclass(module = "ssr_matrices", frozen, get_all)]
struct Report {
    accepted: bool,
    order: usize,
    pattern: Option<String>,
    /// `(rows, cols, value, required_sign)` of the first offending minor.
    witness: Option<WitnessTuple>,
}

#[pymethods]
impl Report {
    fn __repr__(&self) -> String {
        format!(
            "Report(accepted={}, order={}, pattern={:?})",
            if self.accepted { "True" } else { "False" },
            self.order,
            self.pattern
        )
    }

    fn __bool__(&self) -> bool {
        self.accepted
    }
}

/// Checks the sign condition on minors up to size `order` (default
/// `min(m, n)`). `oracle=True` enumerates every minor.
#[pyfunction]
#[pyo3(signature = (matrix, order = None, oracle = false))]
fn verify(matrix: &PyMatrix, order: Option<usize>, oracle: bool) -> PyResult<Report> {
    let a = &matrix.inner;
    let p = order.unwrap_or(a.min_dim());
    let r = if oracle {
        ssr_core::verify_full(a, p)
    } else {
        ssr_core::verify_contiguous(a, p, None)
    }
    .map_err(err)?;
    Ok(Report {
        accepted: r.accepted(),
        order: r.order_checked,
        pattern: r.inferred_pattern.map(|p| p.to_string()),
        witness: r.witness.map(|w| {
            (
                w.rows,
                w.cols,
                w.value.to_string(),
                w.required.map(|s| s.to_string()),
            )
        }),
    })
}

/// Adds a line at `side` ("left", "right", "top", "bottom"). `new_sign`
/// ("+" or "-") is required exactly when a larger minor size appears.
#[pyfunction]
#[pyo3(signature = (matrix, side, new_sign = None, order = None))]
fn extend(
    matrix: &PyMatrix,
    side: &str,
    new_sign: Option<&str>,
    order: Option<usize>,
) -> PyResult<PyMatrix> {
    let side: Side = side.parse().map_err(err)?;
    let new_sign = sign(new_sign)?;
    let out = match order {
        Some(p) if p < matrix.inner.min_dim() => {
            if new_sign.is_some() {
                return Err(err(ssr_core::SsrError::NewSignNotAllowed));
            }
            extend_border_ssr_p(&matrix.inner, p, side)
        }
        _ => extend_border(&matrix.inner, side, new_sign),
    }
    .map_err(err)?;
    Ok(PyMatrix { inner: out })
}

/// Inserts a line after line `at` (1-based) of `axis` ("row" or "col").
#[pyfunction]
#[pyo3(signature = (matrix, axis, at, new_sign = None, order = None))]
fn insert(
    matrix: &PyMatrix,
    axis: &str,
    at: usize,
    new_sign: Option<&str>,
    order: Option<usize>,
) -> PyResult<PyMatrix> {
    let axis: Axis = axis.parse().map_err(err)?;
    let new_sign = sign(new_sign)?;
    let out = match order {
        Some(p) if p < matrix.inner.min_dim() => {
            if new_sign.is_some() {
                return Err(err(ssr_core::SsrError::NewSignNotAllowed));
            }
            insert_line_ssr_p(&matrix.inner, p, axis, at)
        }
        _ => insert_line(&matrix.inner, axis, at, new_sign),
    }
    .map_err(err)?;
    Ok(PyMatrix { inner: out })
}

/// Coefficients expressing column `k` through the others, as strings.
#[pyfunction]
fn column_relation(matrix: &PyMatrix, k: usize) -> PyResult<Vec<String>> {
    Ok(ssr_core::column_relation(&matrix.inner, k)
        .map_err(err)?
        .iter()
        .map(Scalar::to_string)
        .collect())
}

#[pymodule]
fn ssr_matrices(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_class::<Report>()?;
    m.add("SsrError", m.py().get_type::<SsrError>())?;
    m.add_function(wrap_pyfunction!(ssr_construction, m)?)?;
    m.add_function(wrap_pyfunction!(ssr_p_construction, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(extend, m)?)?;
    m.add_function(wrap_pyfunction!(insert, m)?)?;
    m.add_function(wrap_pyfunction!(column_relation, m)?)?;
    Ok(())
}
