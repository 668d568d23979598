//! Python bindings: model elements, products, locality tables, reduction and
//! the verification suites.

use std::collections::HashMap;

use cak_core::cend::{apply_d_pow, brace, bracket, locality, nproduct};
use cak_core::free::{reduce, s2_rules, GeneratorOrder, RuleSet};
use cak_core::grassmann::{members, set_of, subset_label};
use cak_core::scalar::render;
use cak_core::syntax::{parse_element, parse_polynomial, parse_rules, parse_symbol, print_polynomial};
use cak_core::verify::{self, Report, Status};
use cak_core::wk::{g_element, k_locality_table, locality_table, phi};
use cak_core::{CendElement, Embedding, EmbeddingKind, Scalar};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn embedding(map: &str, rank: usize) -> PyResult<Embedding> {
    let kind = EmbeddingKind::from_name(map).ok_or_else(|| value_error(format!("unknown map {map:?}, use phi1 or phi2")))?;
    Ok(Embedding::new(kind, rank))
}

fn fraction<'py>(py: Python<'py>, x: &Scalar) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((render(x),))
}

/// An element of k[D] (x) A_n[v].
#[pyclass(name = "Element", module = "cak", eq, frozen, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyElement {
    inner: CendElement,
}

impl From<CendElement> for PyElement {
    fn from(inner: CendElement) -> Self {
        PyElement { inner }
    }
}

#[pymethods]
impl PyElement {
    /// Parse text such as "2 D xi1 del2 v^2 - v".
    #[new]
    #[pyo3(signature = (text, rank = 0))]
    fn new(text: &str, rank: usize) -> PyResult<Self> {
        parse_element(text, rank).map(Into::into).map_err(value_error)
    }

    /// Image of a generator name ("v", "xi1", "del2") under phi1 or phi2.
    #[staticmethod]
    #[pyo3(signature = (name, rank, map = "phi2"))]
    fn generator(name: &str, rank: usize, map: &str) -> PyResult<Self> {
        let g = parse_symbol(name).ok_or_else(|| value_error(format!("unknown generator {name:?}")))?;
        phi(embedding(map, rank)?, g).map(Into::into).map_err(value_error)
    }

    /// The K_n generator g_I for a list of indices I.
    #[staticmethod]
    #[pyo3(signature = (indices, rank, map = "phi1"))]
    fn g(indices: Vec<usize>, rank: usize, map: &str) -> PyResult<Self> {
        if let Some(&i) = indices.iter().find(|&&i| i == 0 || i > rank) {
            return Err(value_error(format!("index {i} out of range for rank {rank}")));
        }
        g_element(embedding(map, rank)?, set_of(&indices)).map(Into::into).map_err(value_error)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// D^s applied to the element.
    #[pyo3(signature = (s = 1))]
    fn d(&self, s: u32) -> Self {
        apply_d_pow(&self.inner, s).into()
    }

    /// Terms as (D power, xi indices, del indices, v power, Fraction).
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let out = PyList::empty(py);
        for (k, c) in self.inner.terms() {
            out.append((k.d, members(k.mono.xi), members(k.mono.del), k.k, fraction(py, c)?))?;
        }
        Ok(out)
    }

    fn __add__(&self, other: &PyElement) -> PyResult<Self> {
        check_rank(self, other)?;
        Ok(self.inner.add(&other.inner).into())
    }

    fn __sub__(&self, other: &PyElement) -> PyResult<Self> {
        check_rank(self, other)?;
        Ok(self.inner.sub(&other.inner).into())
    }

    fn __neg__(&self) -> Self {
        self.inner.neg().into()
    }

    fn __mul__(&self, c: i64) -> Self {
        self.inner.scale(&cak_core::scalar::int(c)).into()
    }

    fn __rmul__(&self, c: i64) -> Self {
        self.__mul__(c)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element({:?}, rank={})", self.inner.to_string(), self.inner.rank())
    }
}

fn check_rank(a: &PyElement, b: &PyElement) -> PyResult<()> {
    if a.inner.rank() != b.inner.rank() {
        return Err(value_error(format!("rank mismatch: {} vs {}", a.inner.rank(), b.inner.rank())));
    }
    Ok(())
}

/// x o_n y
#[pyfunction]
fn nprod(x: &PyElement, n: u32, y: &PyElement) -> PyResult<PyElement> {
    nproduct(&x.inner, n, &y.inner).map(Into::into).map_err(value_error)
}

/// {x o_n y}
#[pyfunction(name = "brace")]
fn py_brace(x: &PyElement, n: u32, y: &PyElement) -> PyResult<PyElement> {
    brace(&x.inner, n, &y.inner).map(Into::into).map_err(value_error)
}

/// [x _n y]
#[pyfunction(name = "bracket")]
fn py_bracket(x: &PyElement, n: u32, y: &PyElement) -> PyResult<PyElement> {
    bracket(&x.inner, n, &y.inner).map(Into::into).map_err(value_error)
}

/// Minimal N with x o_m y = 0 for all m >= N.
#[pyfunction(name = "locality")]
fn py_locality(x: &PyElement, y: &PyElement) -> PyResult<u32> {
    locality(&x.inner, &y.inner).map_err(value_error)
}

/// Locality of the W_n generators as {(a, b): N}.
#[pyfunction]
#[pyo3(signature = (n, map = "phi2"))]
fn w_table(n: usize, map: &str) -> PyResult<HashMap<(String, String), u32>> {
    let t = locality_table(embedding(map, n)?).map_err(value_error)?;
    Ok(t.entries.iter().map(|((a, b), v)| ((a.to_string(), b.to_string()), *v)).collect())
}

/// Locality of the K_n generators as {(I, J): N} with I, J written like "g{1,2}".
#[pyfunction]
#[pyo3(signature = (n, map = "phi1"))]
fn k_table(n: usize, map: &str) -> PyResult<HashMap<(String, String), u32>> {
    if n == 0 {
        return Err(value_error("K_n needs n >= 1"));
    }
    let t = k_locality_table(embedding(map, n)?).map_err(value_error)?;
    let label = |s: &u32| format!("g{}", subset_label(*s));
    Ok(t.entries.iter().map(|((a, b), v)| ((label(a), label(b)), *v)).collect())
}

/// Rank of a list of elements and a dependency (list of Fractions) if any.
#[pyfunction]
fn independence<'py>(py: Python<'py>, elements: Vec<PyElement>) -> PyResult<(usize, Option<Vec<Bound<'py, PyAny>>>)> {
    let xs: Vec<CendElement> = elements.into_iter().map(|e| e.inner).collect();
    let ind = verify::independence(&xs).map_err(value_error)?;
    let witness = match ind.witness {
        Some(w) => Some(w.iter().map(|c| fraction(py, c)).collect::<PyResult<_>>()?),
        None => None,
    };
    Ok((ind.rank, witness))
}

/// Reduce a conformal polynomial. Without `rules` the built-in N_2 rules of
/// rank n are used; `rules` is rule-file text, one relation per line.
#[pyfunction(name = "reduce")]
#[pyo3(signature = (polynomial, n = 1, rules = None, order = None, bound = 2))]
fn py_reduce(polynomial: &str, n: usize, rules: Option<&str>, order: Option<&str>, bound: u32) -> PyResult<String> {
    let ord = match order {
        None => GeneratorOrder::s2(n),
        Some(text) => {
            let mut list = Vec::new();
            for name in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                list.push(parse_symbol(name).ok_or_else(|| value_error(format!("unknown generator {name:?}")))?);
            }
            GeneratorOrder::from_list(list)
        }
    };
    let set = match rules {
        None if order.is_none() && bound == 2 => s2_rules(n).map_err(value_error)?,
        None => {
            let polys: Vec<_> = s2_rules(n).map_err(value_error)?.rules.into_iter().map(|r| r.polynomial).collect();
            RuleSet::from_polynomials(&polys, ord, bound).map_err(value_error)?
        }
        Some(text) => RuleSet::from_polynomials(&parse_rules(text).map_err(value_error)?, ord, bound).map_err(value_error)?,
    };
    let p = parse_polynomial(polynomial).map_err(value_error)?;
    Ok(print_polynomial(&reduce(&p, &set).map_err(value_error)?))
}

fn report_dict<'py>(py: Python<'py>, r: &Report) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("suite", &r.suite)?;
    d.set_item("n", r.n)?;
    d.set_item("map", &r.map)?;
    let checks = PyList::empty(py);
    for c in &r.checks {
        let cd = PyDict::new(py);
        cd.set_item("name", &c.name)?;
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        };
        cd.set_item("status", status)?;
        cd.set_item("detail", &c.detail)?;
        checks.append(cd)?;
    }
    d.set_item("checks", checks)?;
    d.set_item("passed", r.passed)?;
    Ok(d)
}

/// Run a verification suite ("w", "k", "vir", "axioms", "closure") and return
/// its report as a dict.
#[pyfunction(name = "verify")]
#[pyo3(signature = (suite, n = 1, map = "phi2", tmax = 2, length = 4, samples = 200, seed = 0))]
#[allow(clippy::too_many_arguments)]
fn py_verify<'py>(
    py: Python<'py>,
    suite: &str,
    n: usize,
    map: &str,
    tmax: u32,
    length: usize,
    samples: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let kind = embedding(map, n)?.kind;
    let report = match suite {
        "w" => verify::verify_w_suite(n, kind, tmax, length),
        "k" => verify::verify_k_suite(n),
        "vir" => verify::virasoro_suite(tmax, length.saturating_sub(1) as u32),
        "axioms" => verify::axiom_suite(samples, samples.div_ceil(4), seed),
        "closure" => verify::closure_check(n, kind, &s2_rules(n).map_err(value_error)?, samples, seed),
        other => return Err(value_error(format!("unknown suite {other:?}"))),
    };
    report_dict(py, &report)
}

#[pymodule]
fn cak(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyElement>()?;
    m.add_function(wrap_pyfunction!(nprod, m)?)?;
    m.add_function(wrap_pyfunction!(py_brace, m)?)?;
    m.add_function(wrap_pyfunction!(py_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(py_locality, m)?)?;
    m.add_function(wrap_pyfunction!(w_table, m)?)?;
    m.add_function(wrap_pyfunction!(k_table, m)?)?;
    m.add_function(wrap_pyfunction!(independence, m)?)?;
    m.add_function(wrap_pyfunction!(py_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(py_verify, m)?)?;
    Ok(())
}
