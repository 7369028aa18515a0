//! Python bindings. Structures and trees are classes; forests and labelled
//! trees travel as JSON strings; counts come back as `int` and exact ratios
//! as `fractions.Fraction`.

use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;

use rnacount_core::bijection::{LabelledTree, SmallForest};
use rnacount_core::counting::{self, SizeDistribution};
use rnacount_core::verify::{self, Suite};
use rnacount_core::{self as core};

fn value_error<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py_json<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "SecondaryStructure", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyStructure(core::SecondaryStructure);

#[pymethods]
impl PyStructure {
    /// Parses dot-bracket text.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyStructure).map_err(value_error)
    }

    /// Builds from a length and a list of `(i, j)` arcs, 1-based.
    #[staticmethod]
    fn from_arcs(n: usize, arcs: Vec<(usize, usize)>) -> PyResult<Self> {
        core::SecondaryStructure::new(n, arcs).map(PyStructure).map_err(value_error)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.len()
    }

    #[getter]
    fn arcs(&self) -> Vec<(usize, usize)> {
        self.0.arcs().to_vec()
    }

    #[getter]
    fn b(&self) -> usize {
        self.0.num_arcs()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.num_isolated()
    }

    fn dot_bracket(&self) -> String {
        self.0.to_dot_bracket()
    }

    /// Partial stacks, helices and loops as a dict.
    fn stats(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py_json(py, &self.0.stats())
    }

    fn __str__(&self) -> String {
        self.0.to_dot_bracket()
    }

    fn __repr__(&self) -> String {
        format!("SecondaryStructure('{}')", self.0)
    }
}

#[pyclass(name = "PlaneTree", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyTree(core::PlaneTree);

#[pymethods]
impl PyTree {
    /// Parses the parenthesized form of the root's children, e.g. `"()(())"`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyTree).map_err(value_error)
    }

    #[getter]
    fn edges(&self) -> usize {
        self.0.edge_count()
    }

    /// Level and E-block statistics as a dict.
    fn stats(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py_json(py, &self.0.stats())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("PlaneTree('{}')", self.0)
    }
}

#[pyfunction]
fn enumerate_structures(b: usize, k: usize) -> Vec<PyStructure> {
    core::enumerate_structures(b, k).map(PyStructure).collect()
}

#[pyfunction]
fn enumerate_plane_trees(edges: usize) -> Vec<PyTree> {
    core::enumerate_plane_trees(edges).map(PyTree).collect()
}

#[pyfunction]
fn sw_forward(s: &PyStructure) -> PyTree {
    PyTree(core::sw_forward(&s.0))
}

#[pyfunction]
fn sw_inverse(t: &PyTree) -> PyResult<PyStructure> {
    core::sw_inverse(&t.0).map(PyStructure).map_err(value_error)
}

#[pyfunction]
fn chen_forward(s: &PyStructure) -> PyResult<PyTree> {
    core::chen_forward(&s.0).map(PyTree).map_err(value_error)
}

#[pyfunction]
fn chen_inverse(t: &PyTree) -> PyResult<PyStructure> {
    core::chen_inverse(&t.0).map(PyStructure).map_err(value_error)
}

/// Labelled-tree JSON in, forest JSON out.
#[pyfunction]
fn forest_encode(tree_json: &str) -> PyResult<String> {
    let t: LabelledTree = serde_json::from_str(tree_json).map_err(value_error)?;
    let f = core::forest_encode(&t).map_err(value_error)?;
    serde_json::to_string(&f).map_err(value_error)
}

/// Forest JSON in, labelled-tree JSON out.
#[pyfunction]
fn forest_decode(forest_json: &str) -> PyResult<String> {
    let f: SmallForest = serde_json::from_str(forest_json).map_err(value_error)?;
    let t = core::forest_decode(&f).map_err(value_error)?;
    serde_json::to_string(&t).map_err(value_error)
}

fn dist(text: &str) -> PyResult<SizeDistribution> {
    text.parse().map_err(value_error)
}

#[pyfunction]
fn narayana(b: usize, k: usize) -> PyResult<BigInt> {
    counting::narayana(b, k).map_err(value_error)
}

#[pyfunction]
fn count_by_partial_stacks(b: usize, k: usize, l: usize) -> PyResult<BigInt> {
    counting::count_by_partial_stacks(b, k, l).map_err(value_error)
}

#[pyfunction]
fn count_max_partial_stack(b: usize, k: usize, h: usize) -> PyResult<BigInt> {
    counting::count_max_partial_stack(b, k, h).map_err(value_error)
}

#[pyfunction]
fn count_max_loop_size(b: usize, k: usize, l: usize) -> PyResult<BigInt> {
    counting::count_max_loop_size(b, k, l).map_err(value_error)
}

#[pyfunction]
fn count_max_both(b: usize, k: usize, h: usize, l: usize) -> PyResult<BigInt> {
    counting::count_max_both(b, k, h, l).map_err(value_error)
}

/// Distributions are strings such as `"1:1,2:2"`.
#[pyfunction]
fn count_joint(b: usize, k: usize, helix_dist: &str, loop_dist: &str, l_e: usize) -> PyResult<BigInt> {
    counting::count_joint(b, k, &dist(helix_dist)?, &dist(loop_dist)?, l_e).map_err(value_error)
}

#[pyfunction]
fn count_joint_marginal(b: usize, k: usize, helix_dist: &str, loop_dist: &str) -> PyResult<BigInt> {
    counting::count_joint_marginal(b, k, &dist(helix_dist)?, &dist(loop_dist)?).map_err(value_error)
}

#[pyfunction]
fn count_by_helix_distribution(b: usize, k: usize, helix_dist: &str) -> PyResult<BigInt> {
    counting::count_by_helix_distribution(b, k, &dist(helix_dist)?).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (b, k, s, sigma = 1))]
fn count_by_num_helices(b: usize, k: usize, s: usize, sigma: usize) -> PyResult<BigInt> {
    counting::count_by_num_helices(b, k, s, sigma).map_err(value_error)
}

#[pyfunction]
fn helix_distribution_probability(
    b: usize,
    k: usize,
    s: usize,
    sigma: usize,
    helix_dist: &str,
) -> PyResult<BigRational> {
    counting::helix_distribution_probability(b, k, s, sigma, &dist(helix_dist)?).map_err(value_error)
}

#[pyfunction]
fn expected_partial_stacks(b: usize, k: usize) -> PyResult<BigRational> {
    counting::expected_partial_stacks(b, k).map_err(value_error)
}

#[pyfunction]
fn narayana_sum_identity_check(b: usize, k: usize) -> PyResult<bool> {
    counting::narayana_sum_identity_check(b, k).map_err(value_error)
}

/// Rows `(s, b, k, count)` of helix table 1 or 2.
#[pyfunction]
fn helix_table(id: usize) -> PyResult<Vec<(usize, usize, usize, BigInt)>> {
    let rows = counting::helix_table(id).map_err(value_error)?;
    Ok(rows.into_iter().map(|r| (r.s, r.b, r.k, r.count)).collect())
}

/// Runs verification suites; returns `(suite, passed, failed, counterexample)`.
#[pyfunction]
#[pyo3(signature = (suites = None, max_size = 12))]
fn run_verify<'py>(py: Python<'py>, suites: Option<Vec<String>>, max_size: usize) -> PyResult<Bound<'py, PyList>> {
    let suites: Vec<Suite> = match suites {
        None => Suite::ALL.to_vec(),
        Some(names) => names.iter().map(|s| s.parse()).collect::<Result<_, _>>().map_err(PyValueError::new_err)?,
    };
    let reports = py.detach(|| verify::run(&suites, max_size)).map_err(PyValueError::new_err)?;
    let rows: Vec<(String, u64, u64, Option<String>)> =
        reports.into_iter().map(|r| (r.suite.to_string(), r.passed, r.failed, r.counterexample)).collect();
    PyList::new(py, rows)
}

#[pymodule]
fn rnacount(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyStructure>()?;
    m.add_class::<PyTree>()?;
    m.add_function(wrap_pyfunction!(enumerate_structures, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_plane_trees, m)?)?;
    m.add_function(wrap_pyfunction!(sw_forward, m)?)?;
    m.add_function(wrap_pyfunction!(sw_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(chen_forward, m)?)?;
    m.add_function(wrap_pyfunction!(chen_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(forest_encode, m)?)?;
    m.add_function(wrap_pyfunction!(forest_decode, m)?)?;
    m.add_function(wrap_pyfunction!(narayana, m)?)?;
    m.add_function(wrap_pyfunction!(count_by_partial_stacks, m)?)?;
    m.add_function(wrap_pyfunction!(count_max_partial_stack, m)?)?;
    m.add_function(wrap_pyfunction!(count_max_loop_size, m)?)?;
    m.add_function(wrap_pyfunction!(count_max_both, m)?)?;
    m.add_function(wrap_pyfunction!(count_joint, m)?)?;
    m.add_function(wrap_pyfunction!(count_joint_marginal, m)?)?;
    m.add_function(wrap_pyfunction!(count_by_helix_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(count_by_num_helices, m)?)?;
    m.add_function(wrap_pyfunction!(helix_distribution_probability, m)?)?;
    m.add_function(wrap_pyfunction!(expected_partial_stacks, m)?)?;
    m.add_function(wrap_pyfunction!(narayana_sum_identity_check, m)?)?;
    m.add_function(wrap_pyfunction!(helix_table, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
