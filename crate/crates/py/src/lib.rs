//! Python bindings for `coinvariant`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use coinvariant::basis::{self, BasisVariant, WeylType};
use coinvariant::combinat::Partition;
use coinvariant::oracle::{self, OracleConfig};
use coinvariant::qpoly::QuvPolynomial;
use coinvariant::smirnov::{self, SegmentedWord};
use coinvariant::symfun;
use coinvariant::verify::{run_suite, VerifyOptions};

fn py_err(e: coinvariant::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn variant(name: &str) -> PyResult<BasisVariant> {
    name.parse().map_err(py_err)
}

type Term<'py> = (u32, u32, u32, Bound<'py, PyAny>);

fn big_to_py<'py>(py: Python<'py>, s: String) -> PyResult<Bound<'py, PyAny>> {
    py.import("builtins")?.getattr("int")?.call1((s,))
}

/// Polynomial in `q, u, v` with integer coefficients.
#[pyclass(name = "QuvPolynomial", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyQuv {
    inner: QuvPolynomial,
}

impl From<QuvPolynomial> for PyQuv {
    fn from(inner: QuvPolynomial) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyQuv {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse::<QuvPolynomial>().map(Self::from).map_err(py_err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("QuvPolynomial('{}')", self.inner)
    }

    fn __add__(&self, other: &PyQuv) -> PyQuv {
        (&self.inner + &other.inner).into()
    }

    fn __mul__(&self, other: &PyQuv) -> PyQuv {
        (&self.inner * &other.inner).into()
    }

    /// `(q, u, v, coeff)` tuples in lexicographic exponent order.
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Vec<Term<'py>>> {
        self.inner
            .terms()
            .map(|(&(a, b, c), k)| Ok((a, b, c, big_to_py(py, k.to_string())?)))
            .collect()
    }

    fn coefficient<'py>(&self, py: Python<'py>, q: u32, u: u32, v: u32) -> PyResult<Bound<'py, PyAny>> {
        big_to_py(py, self.inner.coefficient(q, u, v).to_string())
    }

    fn eval_at_one<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        big_to_py(py, self.inner.eval_at_one().to_string())
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }
}

#[pyclass(name = "BasisElement", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyBasisElement {
    inner: basis::BasisElement,
}

#[pymethods]
impl PyBasisElement {
    #[staticmethod]
    #[pyo3(signature = (monomial, n, variant = "a12"))]
    fn from_monomial(monomial: &str, n: usize, variant: &str) -> PyResult<Self> {
        basis::BasisElement::parse_monomial(monomial, n, self::variant(variant)?)
            .map(|inner| Self { inner })
            .map_err(py_err)
    }

    #[getter]
    fn alpha(&self) -> Vec<u32> {
        self.inner.alpha().to_vec()
    }

    #[getter]
    fn theta(&self) -> Vec<u8> {
        self.inner.theta().to_vec()
    }

    #[getter]
    fn xi(&self) -> Vec<u8> {
        self.inner.xi().to_vec()
    }

    /// `(deg_x, deg_θ, deg_ξ)`.
    #[getter]
    fn degree(&self) -> (u32, u32, u32) {
        (self.inner.deg_x(), self.inner.deg_theta(), self.inner.deg_xi())
    }

    fn ascent_set(&self) -> Vec<u32> {
        self.inner.ascent_set().elements()
    }

    fn monomial(&self) -> String {
        self.inner.monomial_string()
    }

    fn __str__(&self) -> String {
        self.inner.monomial_string()
    }

    fn __repr__(&self) -> String {
        format!("BasisElement('{}')", self.inner.monomial_string())
    }
}

#[pyclass(name = "SegmentedWord", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyWord {
    inner: SegmentedWord,
}

#[pymethods]
impl PyWord {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(|inner| Self { inner }).map_err(py_err)
    }

    #[getter]
    fn letters(&self) -> Vec<u32> {
        self.inner.letters().to_vec()
    }

    fn blocks(&self) -> Vec<Vec<u32>> {
        self.inner.blocks()
    }

    fn ascents(&self) -> usize {
        self.inner.ascents()
    }

    fn descents(&self) -> usize {
        self.inner.descents()
    }

    fn sminv(&self) -> u32 {
        smirnov::sminv(&self.inner)
    }

    fn split_set(&self) -> PyResult<Vec<u32>> {
        smirnov::split_set(&self.inner).map(|s| s.elements()).map_err(py_err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SegmentedWord('{}')", self.inner)
    }
}

#[pyfunction]
#[pyo3(signature = (n, variant = "a12"))]
fn hilbert_series(n: usize, variant: &str) -> PyResult<PyQuv> {
    basis::hilbert_series(n, self::variant(variant)?).map(PyQuv::from).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n, variant = "a12"))]
fn count_basis(n: usize, variant: &str) -> PyResult<u64> {
    basis::count_basis(n, self::variant(variant)?).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n, variant = "a12"))]
fn enumerate_basis(n: usize, variant: &str) -> PyResult<Vec<PyBasisElement>> {
    let elems = basis::enumerate_basis(n, self::variant(variant)?).map_err(py_err)?;
    Ok(elems.into_iter().map(|inner| PyBasisElement { inner }).collect())
}

#[pyfunction]
fn psi(b: &PyBasisElement) -> PyResult<PyWord> {
    smirnov::psi(&b.inner).map(|inner| PyWord { inner }).map_err(py_err)
}

#[pyfunction]
fn psi_inverse(sigma: &PyWord) -> PyResult<PyBasisElement> {
    smirnov::psi_inverse(&sigma.inner)
        .map(|inner| PyBasisElement { inner })
        .map_err(py_err)
}

#[pyfunction]
fn segmented_permutations(n: usize) -> Vec<PyWord> {
    smirnov::enumerate_segmented_permutations(n)
        .into_iter()
        .map(|inner| PyWord { inner })
        .collect()
}

#[pyfunction]
fn sw_q(n: u32, k: i64, l: i64) -> PyQuv {
    smirnov::sw_q_recursion(n, k, l).into()
}

fn tuple_keyed<'py>(py: Python<'py>, entries: impl Iterator<Item = (Vec<u32>, QuvPolynomial)>) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for (key, c) in entries {
        d.set_item(PyTuple::new(py, key)?, PyQuv::from(c))?;
    }
    Ok(d)
}

/// `{subset: coefficient}` with subsets as sorted tuples.
#[pyfunction]
fn frobenius_qsym(py: Python<'_>, n: u32) -> PyResult<Bound<'_, PyDict>> {
    let f = symfun::frobenius_qsym(n).map_err(py_err)?;
    tuple_keyed(py, f.iter().map(|(s, c)| (s.elements(), c.clone())))
}

/// `{partition: coefficient}` with partitions as tuples.
#[pyfunction]
fn frobenius_schur(py: Python<'_>, n: u32) -> PyResult<Bound<'_, PyDict>> {
    let f = symfun::frobenius_qsym(n).map_err(py_err)?;
    let s = symfun::schur_expansion(&f).map_err(py_err)?;
    tuple_keyed(py, s.iter().map(|(p, c)| (p.parts().to_vec(), c.clone())))
}

#[pyfunction]
fn h_mu_coefficient(n: u32, k: u32, l: u32, mu: Vec<u32>) -> PyResult<PyQuv> {
    let mu = Partition::new(mu).map_err(py_err)?;
    symfun::h_mu_coefficient(n, k, l, &mu).map(PyQuv::from).map_err(py_err)
}

#[pyfunction]
fn hook_schur_coefficient(n: u32, k: u32, l: u32, d: u32) -> PyResult<PyQuv> {
    symfun::hook_schur_coefficient(n, k, l, d).map(PyQuv::from).map_err(py_err)
}

#[pyfunction]
fn hook_qbinomial_formula(n: u32, k: u32, l: u32, d: u32) -> PyResult<PyQuv> {
    symfun::hook_qbinomial_formula(n, k, l, d).map(PyQuv::from).map_err(py_err)
}

/// Quotient Hilbert series by exact linear algebra: `(series, complete, pieces)`.
#[pyfunction]
#[pyo3(signature = (n, variant = "a12", max_x_degree = None))]
fn oracle_hilbert<'py>(
    py: Python<'py>,
    n: usize,
    variant: &str,
    max_x_degree: Option<u32>,
) -> PyResult<(PyQuv, bool, Vec<Bound<'py, PyDict>>)> {
    let kind = match self::variant(variant)? {
        BasisVariant::A12 => WeylType::A,
        BasisVariant::B12 => WeylType::B,
        _ => return Err(PyValueError::new_err("the oracle handles a12 and b12")),
    };
    let top = match kind {
        WeylType::A => n * n.saturating_sub(1) / 2,
        WeylType::B => n * n,
    } as u32;
    let config = OracleConfig::new(max_x_degree.unwrap_or(top + 2));
    let report = py.detach(|| oracle::hilbert_via_oracle(n, kind, &config)).map_err(py_err)?;
    let pieces = report
        .pieces
        .iter()
        .map(|p| {
            let d = PyDict::new(py);
            d.set_item("degree", (p.degree[0], p.degree[1], p.degree[2]))?;
            d.set_item("ambient", p.ambient)?;
            d.set_item("ideal_rank", p.ideal_rank)?;
            d.set_item("quotient", p.quotient)?;
            Ok(d)
        })
        .collect::<PyResult<_>>()?;
    Ok((report.series.into(), report.complete, pieces))
}

/// Runs the property suite: `[(name, passed, witness_json_or_None)]`.
#[pyfunction]
fn verify(py: Python<'_>, n: u32) -> PyResult<Vec<(String, bool, Option<String>)>> {
    let outcomes = py.detach(|| run_suite(&VerifyOptions::new(n))).map_err(py_err)?;
    Ok(outcomes
        .into_iter()
        .map(|o| (o.name.to_string(), o.passed, o.witness.map(|w| w.to_string())))
        .collect())
}

#[pymodule]
pub fn pycoinvariant(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQuv>()?;
    m.add_class::<PyBasisElement>()?;
    m.add_class::<PyWord>()?;
    m.add_function(wrap_pyfunction!(hilbert_series, m)?)?;
    m.add_function(wrap_pyfunction!(count_basis, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_basis, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(psi_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(segmented_permutations, m)?)?;
    m.add_function(wrap_pyfunction!(sw_q, m)?)?;
    m.add_function(wrap_pyfunction!(frobenius_qsym, m)?)?;
    m.add_function(wrap_pyfunction!(frobenius_schur, m)?)?;
    m.add_function(wrap_pyfunction!(h_mu_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(hook_schur_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(hook_qbinomial_formula, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
