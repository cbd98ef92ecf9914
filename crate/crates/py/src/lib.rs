use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ramsey_core::campaign::{self, CampaignResult, Engine};
use ramsey_core::constructions;
use ramsey_core::extract::Extractor;
use ramsey_core::formulas::{self, CliqueUnion, ForestSpec};
use ramsey_core::graph::{Color, TwoColoring};
use ramsey_core::notation;
use ramsey_core::search;
use ramsey_core::tree::{self, OpKind, OpStep, Plan};
use ramsey_core::witness::Witness;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Tree", frozen, from_py_object)]
#[derive(Clone)]
struct PyTree(tree::Tree);

#[pymethods]
impl PyTree {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        tree::Tree::from_edges(n, edges).map(PyTree).map_err(err)
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        PyTree(tree::Tree::path(n))
    }

    #[staticmethod]
    fn star(n: usize) -> Self {
        PyTree(tree::Tree::star(n))
    }

    /// Edge-list text: the order on the first line, then one `a b` per line.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        tree::Tree::parse(text).map(PyTree).map_err(err)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges()
    }

    fn leaves(&self) -> Vec<usize> {
        self.0.leaves()
    }

    fn canonical_form(&self) -> String {
        tree::canonical_form(&self.0)
    }

    fn is_isomorphic(&self, other: &PyTree) -> bool {
        tree::is_isomorphic(&self.0, &other.0)
    }

    fn __repr__(&self) -> String {
        format!("Tree({}, {:?})", self.0.order(), self.0.edges())
    }
}

#[pyclass(name = "CliqueUnion", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCliqueUnion(CliqueUnion);

#[pymethods]
impl PyCliqueUnion {
    #[new]
    fn new(sizes: Vec<usize>) -> PyResult<Self> {
        CliqueUnion::new(sizes).map(PyCliqueUnion).map_err(err)
    }

    /// Parses `K5`, `2K4`, `K3+K2`.
    #[staticmethod]
    fn parse(spec: &str) -> PyResult<Self> {
        notation::parse_target(spec).map(PyCliqueUnion).map_err(err)
    }

    #[getter]
    fn sizes(&self) -> Vec<usize> {
        self.0.sizes().to_vec()
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    /// `(chi, s)`.
    fn chromatic(&self) -> (usize, usize) {
        let cd = self.0.chromatic();
        (cd.chi, cd.s)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("CliqueUnion({})", self.0)
    }
}

#[pyclass(name = "Forest", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyForest(ForestSpec);

#[pymethods]
impl PyForest {
    #[new]
    fn new(trees: Vec<PyTree>) -> PyResult<Self> {
        ForestSpec::new(trees.into_iter().map(|t| t.0).collect())
            .map(PyForest)
            .map_err(err)
    }

    /// Parses `P4`, `2P3`, `P3+P4`, `K1,3`, `star:5`, `tree:<file>`.
    #[staticmethod]
    fn parse(spec: &str) -> PyResult<Self> {
        notation::parse_forest(spec).map(PyForest).map_err(err)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    fn components(&self) -> Vec<PyTree> {
        self.0.components().iter().cloned().map(PyTree).collect()
    }

    fn __repr__(&self) -> String {
        let orders: Vec<usize> = self.0.components().iter().map(tree::Tree::order).collect();
        format!("Forest(orders={orders:?})")
    }
}

#[pyclass(name = "Coloring", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyColoring(TwoColoring);

#[pymethods]
impl PyColoring {
    /// Bit `k` of `index` colors pair `k` red.
    #[staticmethod]
    fn from_index(n: usize, index: u64) -> PyResult<Self> {
        if n > 11 {
            return Err(err("from_index supports at most 11 vertices"));
        }
        Ok(PyColoring(TwoColoring::from_index(n, index)))
    }

    /// Coloring file text: the order, then one `R`/`B` per pair.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        notation::read_coloring(text).map(PyColoring).map_err(err)
    }

    #[staticmethod]
    fn sample(n: usize, seed: u64, trial: u64) -> Self {
        PyColoring(campaign::sample_coloring(n, seed, trial))
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    /// `True` when the pair is red.
    fn is_red(&self, i: usize, j: usize) -> PyResult<bool> {
        let n = self.0.order();
        if i == j || i >= n || j >= n {
            return Err(err(format!("no pair ({i}, {j}) on {n} vertices")));
        }
        Ok(self.0.color(i, j) == Color::Red)
    }

    fn rb(&self) -> String {
        self.0.to_rb_string()
    }

    fn to_text(&self) -> String {
        notation::write_coloring(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Coloring({}, {:?})", self.0.order(), self.0.to_rb_string())
    }
}

#[pyclass(name = "Witness", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyWitness(Witness);

#[pymethods]
impl PyWitness {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Witness::parse(text).map(PyWitness).map_err(err)
    }

    /// `"RED"` or `"BLUE"`.
    #[getter]
    fn side(&self) -> String {
        self.0.side.to_string()
    }

    #[getter]
    fn mapping(&self) -> Vec<usize> {
        self.0.embedding.map.clone()
    }

    #[getter]
    fn trace(&self) -> Vec<String> {
        self.0.trace.clone()
    }

    fn verify(&self, c: &PyColoring, f: &PyForest, h: &PyCliqueUnion) -> bool {
        self.0.verify(&c.0, &f.0, &h.0)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Witness({}, {:?})", self.0.side, self.0.embedding.map)
    }
}

#[pyfunction]
fn tree_value(n: usize, h: &PyCliqueUnion) -> PyResult<usize> {
    formulas::tree_value(n, &h.0).map_err(err)
}

#[pyfunction]
fn ramsey_value(f: &PyForest, h: &PyCliqueUnion) -> PyResult<usize> {
    formulas::ramsey_value(&f.0, &h.0).map_err(err)
}

/// `(p, j0)`.
#[pyfunction]
fn gj_lower_p(f: &PyForest, h: &PyCliqueUnion) -> (usize, usize) {
    formulas::gj_lower_p(&f.0, &h.0)
}

#[pyfunction]
fn union_upper(f: &PyForest, h: &PyCliqueUnion) -> PyResult<usize> {
    formulas::union_upper(&f.0, |j| formulas::tree_value(j, &h.0).ok()).map_err(err)
}

#[pyfunction]
fn burr_lower(v_g: usize, h: &PyCliqueUnion) -> PyResult<usize> {
    formulas::burr_lower(v_g, &h.0).map_err(err)
}

#[pyfunction]
fn beta(value: usize, v_f: usize, h: &PyCliqueUnion) -> i64 {
    formulas::beta(value, v_f, &h.0)
}

fn step_tuple(s: &OpStep) -> (String, usize, usize) {
    let kind = match s.kind {
        OpKind::Stretch => "stretch",
        OpKind::Expand => "expand",
    };
    (kind.to_string(), s.anchor, s.deleted)
}

fn step_from_tuple((kind, anchor, deleted): (String, usize, usize)) -> PyResult<OpStep> {
    match kind.as_str() {
        "stretch" => Ok(OpStep::stretch(anchor, deleted)),
        "expand" => Ok(OpStep::expand(anchor, deleted)),
        _ => Err(err(format!("unknown step kind {kind:?}"))),
    }
}

/// Steps as `(kind, anchor, deleted)` with kind `"stretch"` or `"expand"`.
#[pyfunction]
fn plan_between(a: &PyTree, b: &PyTree) -> PyResult<Vec<(String, usize, usize)>> {
    let plan = tree::plan_between(&a.0, &b.0).map_err(err)?;
    Ok(plan.steps.iter().map(step_tuple).collect())
}

#[pyfunction]
fn apply_plan(t: &PyTree, steps: Vec<(String, usize, usize)>) -> PyResult<PyTree> {
    let steps = steps.into_iter().map(step_from_tuple).collect::<PyResult<_>>()?;
    tree::apply_plan(&t.0, &Plan::new(steps)).map(PyTree).map_err(err)
}

#[pyfunction]
fn canonical_tree_representatives(n: usize) -> Vec<PyTree> {
    tree::canonical_tree_representatives(n).into_iter().map(PyTree).collect()
}

#[pyfunction]
fn search_witness(py: Python<'_>, c: &PyColoring, f: &PyForest, h: &PyCliqueUnion) -> Option<PyWitness> {
    py.detach(|| search::search_witness(&c.0, &f.0, &h.0)).map(PyWitness)
}

/// Proof-guided extraction. `mode` is `"strict"` or `"best_effort"`.
#[pyfunction]
#[pyo3(signature = (c, f, h, mode = "strict"))]
fn extract(py: Python<'_>, c: &PyColoring, f: &PyForest, h: &PyCliqueUnion, mode: &str) -> PyResult<PyWitness> {
    let ex = match mode {
        "strict" => Extractor::strict(),
        "best_effort" => Extractor::best_effort(),
        _ => return Err(err(format!("unknown mode {mode:?}"))),
    };
    py.detach(|| ex.forest(&c.0, &f.0, &h.0)).map(PyWitness).map_err(err)
}

#[pyfunction]
fn forest_threshold(f: &PyForest, h: &PyCliqueUnion) -> PyResult<usize> {
    ramsey_core::extract::forest_threshold(&f.0, &h.0).map_err(err)
}

#[pyfunction]
fn gj_coloring(f: &PyForest, h: &PyCliqueUnion) -> PyResult<PyColoring> {
    constructions::gj_coloring(&f.0, &h.0).map(PyColoring).map_err(err)
}

#[pyfunction]
fn burr_coloring(v_g: usize, h: &PyCliqueUnion) -> PyResult<PyColoring> {
    constructions::burr_coloring(v_g, &h.0).map(PyColoring).map_err(err)
}

/// `True` when the coloring has neither a red `f` nor a blue `h`.
#[pyfunction]
fn certify_extremal(py: Python<'_>, c: &PyColoring, f: &PyForest, h: &PyCliqueUnion) -> bool {
    py.detach(|| constructions::verify_extremal(&c.0, &f.0, &h.0).certified)
}

#[pyclass(name = "CampaignResult", frozen, get_all)]
struct PyCampaignResult {
    trials: u64,
    failures: u64,
    first_failure: Option<PyColoring>,
    elapsed: f64,
    seed: Option<u64>,
    report: String,
}

#[pymethods]
impl PyCampaignResult {
    fn passed(&self) -> bool {
        self.failures == 0
    }

    fn __repr__(&self) -> String {
        format!("CampaignResult(trials={}, failures={})", self.trials, self.failures)
    }
}

impl From<CampaignResult> for PyCampaignResult {
    fn from(r: CampaignResult) -> Self {
        PyCampaignResult {
            trials: r.trials,
            failures: r.failures,
            report: r.report(),
            first_failure: r.first_failure.map(PyColoring),
            elapsed: r.elapsed.as_secs_f64(),
            seed: r.seed,
        }
    }
}

fn engine(name: &str) -> PyResult<Engine> {
    name.parse().map_err(err)
}

#[pyfunction]
#[pyo3(signature = (f, h, n, engine_name = "oracle"))]
fn exhaustive_verify(py: Python<'_>, f: &PyForest, h: &PyCliqueUnion, n: usize, engine_name: &str) -> PyResult<PyCampaignResult> {
    let e = engine(engine_name)?;
    py.detach(|| campaign::exhaustive_verify(&f.0, &h.0, n, e))
        .map(Into::into)
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (f, h, n, trials, seed, engine_name = "oracle"))]
fn sampled_verify(
    py: Python<'_>,
    f: &PyForest,
    h: &PyCliqueUnion,
    n: usize,
    trials: u64,
    seed: u64,
    engine_name: &str,
) -> PyResult<PyCampaignResult> {
    let e = engine(engine_name)?;
    py.detach(|| campaign::sampled_verify(&f.0, &h.0, n, e, trials, seed))
        .map(Into::into)
        .map_err(err)
}

#[pymodule]
fn ramsey(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTree>()?;
    m.add_class::<PyCliqueUnion>()?;
    m.add_class::<PyForest>()?;
    m.add_class::<PyColoring>()?;
    m.add_class::<PyWitness>()?;
    m.add_class::<PyCampaignResult>()?;
    m.add_function(wrap_pyfunction!(tree_value, m)?)?;
    m.add_function(wrap_pyfunction!(ramsey_value, m)?)?;
    m.add_function(wrap_pyfunction!(gj_lower_p, m)?)?;
    m.add_function(wrap_pyfunction!(union_upper, m)?)?;
    m.add_function(wrap_pyfunction!(burr_lower, m)?)?;
    m.add_function(wrap_pyfunction!(beta, m)?)?;
    m.add_function(wrap_pyfunction!(plan_between, m)?)?;
    m.add_function(wrap_pyfunction!(apply_plan, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_tree_representatives, m)?)?;
    m.add_function(wrap_pyfunction!(search_witness, m)?)?;
    m.add_function(wrap_pyfunction!(extract, m)?)?;
    m.add_function(wrap_pyfunction!(forest_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(gj_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(burr_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(certify_extremal, m)?)?;
    m.add_function(wrap_pyfunction!(exhaustive_verify, m)?)?;
    m.add_function(wrap_pyfunction!(sampled_verify, m)?)?;
    Ok(())
}
