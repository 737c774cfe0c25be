//! Python bindings: Cartan matrices, flag series, ranks, Hilbert series,
//! relation certificates and the table verifier.

use kmps::anick::{certify_strongly_free, parse_relations, quotient_hilbert_oracle};
use kmps::cartan::{self, classify, coxeter_of, is_symmetrizable, overall_class, validate};
use kmps::corpus::{self, Graph, VerifyOptions};
use kmps::exact_poly::{self, IntPoly, Series};
use kmps::graded_algebra::{self, GradedPresentation, HilbertSeries};
use kmps::homotopy_ranks;
use kmps::weyl_series::{self, DEFAULT_BUDGET};
use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Hand a serializable value to Python as plain dicts and lists.
fn to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

fn coeffs(p: &IntPoly) -> Vec<BigInt> {
    p.coeffs().to_vec()
}

fn series_coeffs(s: &Series) -> Vec<BigInt> {
    s.coeffs().to_vec()
}

/// Reduced rational function in `t` with `den(0) = 1`.
#[pyclass(name = "RatFunc", module = "kmps_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyRatFunc(exact_poly::RatFunc);

#[pymethods]
impl PyRatFunc {
    #[new]
    fn new(num: Vec<BigInt>, den: Vec<BigInt>) -> PyResult<Self> {
        exact_poly::RatFunc::new(IntPoly::new(num), IntPoly::new(den))
            .map(PyRatFunc)
            .map_err(value_err)
    }

    #[getter]
    fn num(&self) -> Vec<BigInt> {
        coeffs(self.0.num())
    }

    #[getter]
    fn den(&self) -> Vec<BigInt> {
        coeffs(self.0.den())
    }

    /// Coefficients through `t^order`.
    fn expand(&self, order: usize) -> Vec<BigInt> {
        series_coeffs(&self.0.expand(order))
    }

    fn __add__(&self, other: &PyRatFunc) -> PyResult<Self> {
        self.0.add(&other.0).map(PyRatFunc).map_err(value_err)
    }

    fn __sub__(&self, other: &PyRatFunc) -> PyResult<Self> {
        self.0.sub(&other.0).map(PyRatFunc).map_err(value_err)
    }

    fn __mul__(&self, other: &PyRatFunc) -> PyResult<Self> {
        self.0.mul(&other.0).map(PyRatFunc).map_err(value_err)
    }

    fn __truediv__(&self, other: &PyRatFunc) -> PyResult<Self> {
        self.0.div(&other.0).map(PyRatFunc).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("RatFunc({})", self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// Generalized Cartan matrix.
#[pyclass(name = "CartanMatrix", module = "kmps_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyCartanMatrix(cartan::CartanMatrix);

#[pymethods]
impl PyCartanMatrix {
    #[new]
    fn new(rows: Vec<Vec<i64>>) -> PyResult<Self> {
        validate(&rows).map(PyCartanMatrix).map_err(value_err)
    }

    /// Canonical Cartan matrix of a table graph with the given labels.
    #[staticmethod]
    fn from_graph(graph: &str, labels: Vec<u8>) -> PyResult<Self> {
        let g: Graph = graph.parse().map_err(value_err)?;
        let x = g.coxeter(&labels).map_err(value_err)?;
        Ok(PyCartanMatrix(cartan::canonical_cartan(&x)))
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn rows(&self) -> Vec<Vec<i64>> {
        self.0.rows()
    }

    fn determinant(&self) -> BigInt {
        self.0.determinant()
    }

    fn is_symmetrizable(&self) -> bool {
        is_symmetrizable(&self.0)
    }

    /// `"finite"`, `"affine"` or `"indefinite"`.
    fn type_class(&self) -> &'static str {
        overall_class(&classify(&self.0)).label()
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &classify(&self.0))
    }

    /// Coxeter matrix entries, with 0 for infinity.
    fn coxeter(&self) -> Vec<Vec<u32>> {
        coxeter_of(&self.0).rows()
    }

    fn flag_series(&self) -> PyResult<PyRatFunc> {
        weyl_series::poincare_flag(&coxeter_of(&self.0))
            .map(PyRatFunc)
            .map_err(value_err)
    }

    #[pyo3(signature = (order = 40))]
    fn ranks<'py>(&self, py: Python<'py>, order: usize) -> PyResult<Bound<'py, PyAny>> {
        let rep = homotopy_ranks::ranks(&self.0, order).map_err(value_err)?;
        to_py(py, &rep)
    }

    /// Weyl group elements counted by length.
    #[pyo3(signature = (max_length = 10, budget = DEFAULT_BUDGET))]
    fn growth(&self, py: Python<'_>, max_length: usize, budget: usize) -> PyResult<Vec<u64>> {
        let c = self.0.clone();
        py.detach(move || weyl_series::bfs_growth(&c, max_length, budget))
            .map(|g| g.counts)
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!("CartanMatrix({:?})", self.0.rows())
    }
}

/// Hilbert series of the tensor algebra on generators of these degrees.
#[pyfunction]
#[pyo3(signature = (degrees, order = 40))]
fn tensor_algebra(degrees: Vec<usize>, order: usize) -> PyResult<Vec<BigInt>> {
    let h = graded_algebra::tensor_algebra(&degrees, order).map_err(value_err)?;
    Ok(series_coeffs(h.series()))
}

/// Free product of two connected graded algebras given by coefficients.
#[pyfunction]
fn free_product(left: Vec<BigInt>, right: Vec<BigInt>) -> PyResult<Vec<BigInt>> {
    let order = left.len().min(right.len()).saturating_sub(1);
    let a = HilbertSeries::new(Series::new(left, order)).map_err(value_err)?;
    let b = HilbertSeries::new(Series::new(right, order)).map_err(value_err)?;
    Ok(series_coeffs(graded_algebra::free_product(&a, &b).series()))
}

/// Hilbert series of a tensor algebra modulo a strongly free set.
#[pyfunction]
#[pyo3(signature = (gens, rels, order = 40))]
fn presented_hilbert(gens: Vec<usize>, rels: Vec<usize>, order: usize) -> PyResult<Vec<BigInt>> {
    let p = GradedPresentation::new(gens, rels).map_err(value_err)?;
    Ok(series_coeffs(graded_algebra::presented_hilbert(&p, order).series()))
}

/// `{k: j_k}` for the Lie algebra of a presentation.
#[pyfunction]
#[pyo3(signature = (gens, rels, order = 40))]
fn lie_dims(gens: Vec<usize>, rels: Vec<usize>, order: usize) -> PyResult<Vec<(usize, BigInt)>> {
    let p = GradedPresentation::new(gens, rels).map_err(value_err)?;
    let l = graded_algebra::lie_dims(&p, order);
    Ok(l.j.iter().map(|(k, v)| (k, v.clone())).collect())
}

/// Generator and relation degrees read off a denominator `Q`.
#[pyfunction]
fn parse_q(q: Vec<BigInt>) -> PyResult<(Vec<usize>, Vec<usize>)> {
    let p = graded_algebra::parse_q(&IntPoly::new(q)).map_err(value_err)?;
    Ok((p.gens().to_vec(), p.rels().to_vec()))
}

/// Certificate for a relations file given as text.
#[pyfunction]
fn certify<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    let sys = parse_relations(text).map_err(value_err)?;
    let cert = certify_strongly_free(&sys.alphabet, &sys.relations).map_err(value_err)?;
    to_py(py, &cert)
}

/// Quotient dimensions through `max_degree` by exact elimination.
#[pyfunction]
#[pyo3(signature = (text, max_degree, budget = DEFAULT_BUDGET))]
fn quotient_dims(py: Python<'_>, text: &str, max_degree: usize, budget: usize) -> PyResult<Vec<u64>> {
    let sys = parse_relations(text).map_err(value_err)?;
    py.detach(move || quotient_hilbert_oracle(&sys.alphabet, &sys.relations, max_degree, budget))
        .map_err(value_err)
}

/// Verify the shipped table; returns the summary counts.
#[pyfunction]
#[pyo3(signature = (graph = None))]
fn verify_table<'py>(py: Python<'py>, graph: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let mut entries = corpus::shipped();
    if let Some(g) = graph {
        let g: Graph = g.parse().map_err(value_err)?;
        entries.retain(|e| e.graph == g);
    }
    let report = py
        .detach(move || corpus::verify(&entries, &VerifyOptions::default()))
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let summary = serde_json::json!({
        "total": report.total,
        "matched": report.matched,
        "reciprocal": report.reciprocal,
        "mismatched": report.mismatched,
        "unresolved": report.unresolved,
    });
    to_py(py, &summary)
}

#[pymodule]
fn kmps_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRatFunc>()?;
    m.add_class::<PyCartanMatrix>()?;
    m.add_function(wrap_pyfunction!(tensor_algebra, m)?)?;
    m.add_function(wrap_pyfunction!(free_product, m)?)?;
    m.add_function(wrap_pyfunction!(presented_hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(lie_dims, m)?)?;
    m.add_function(wrap_pyfunction!(parse_q, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(quotient_dims, m)?)?;
    m.add_function(wrap_pyfunction!(verify_table, m)?)?;
    Ok(())
}
