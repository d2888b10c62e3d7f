//! Python bindings for the `zzprop` crate.

#![allow(clippy::useless_conversion)]

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use zzprop::graphcore as gc;
use zzprop::gsf as gs;
use zzprop::structures as st;
use zzprop::testing as ts;
use zzprop::zzmodel as zm;

fn err(e: zzprop::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Graph", module = "zzprop")]
#[derive(Clone)]
struct PyGraph {
    inner: zzprop::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: zzprop::Graph::from_edges(n, &edges).map_err(err)? })
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        PyGraph { inner: zzprop::Graph::cycle(n) }
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        PyGraph { inner: zzprop::Graph::path(n) }
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        PyGraph { inner: zzprop::Graph::complete(n) }
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: zzprop::Graph::parse(text).map_err(err)? })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.n() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.degree(v))
    }

    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn disjoint_union(&self, other: &PyGraph) -> Self {
        PyGraph { inner: self.inner.disjoint_union(&other.inner) }
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={})", self.inner.n(), self.inner.edge_count())
    }
}

#[pyclass(name = "RotMap", module = "zzprop")]
#[derive(Clone)]
struct PyRotMap {
    inner: gc::RotMapGraph,
}

#[pymethods]
impl PyRotMap {
    /// Builds a rotation map from `table[v][i] = (w, j)`.
    #[new]
    fn new(table: Vec<Vec<(usize, usize)>>) -> PyResult<Self> {
        let n = table.len();
        let degree = table.first().map_or(0, Vec::len);
        if table.iter().any(|row| row.len() != degree) {
            return Err(PyValueError::new_err("rows of different length"));
        }
        let rot = table.into_iter().flatten().collect();
        let inner = gc::RotMapGraph::from_table(n, degree, rot).map_err(err)?;
        Ok(PyRotMap { inner })
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        PyRotMap { inner: gc::RotMapGraph::cycle(n) }
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyRotMap { inner: gc::RotMapGraph::parse(text).map_err(err)? })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn rot(&self, v: usize, i: usize) -> PyResult<(usize, usize)> {
        if v >= self.inner.n() || i >= self.inner.degree() {
            return Err(PyValueError::new_err(format!("key ({v},{i}) out of range")));
        }
        Ok(self.inner.rot(v, i))
    }

    fn is_valid(&self) -> bool {
        gc::validate_rotmap(&self.inner).is_ok()
    }

    /// Eigenvalues of the normalized adjacency matrix, largest first.
    fn eigenvalues(&self) -> PyResult<Vec<f64>> {
        Ok(gc::spectrum(&self.inner).map_err(err)?.eigenvalues)
    }

    fn spectral_lambda(&self) -> PyResult<f64> {
        Ok(gc::spectrum(&self.inner).map_err(err)?.lambda)
    }

    fn square(&self) -> PyResult<Self> {
        Ok(PyRotMap { inner: gc::square(&self.inner).map_err(err)? })
    }

    fn zigzag(&self, other: &PyRotMap) -> PyResult<Self> {
        Ok(PyRotMap { inner: gc::zigzag(&self.inner, &other.inner).map_err(err)? })
    }

    fn expansion_ratio(&self) -> PyResult<Option<f64>> {
        gc::expansion_ratio_bruteforce(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("RotMap(n={}, degree={})", self.inner.n(), self.inner.degree())
    }
}

#[pyfunction]
fn iterated_family(h: &PyRotMap, depth: usize) -> PyResult<Vec<PyRotMap>> {
    let fam = gc::iterated_family(&h.inner, depth).map_err(err)?;
    Ok(fam.into_iter().map(|inner| PyRotMap { inner }).collect())
}

#[pyclass(name = "Structure", module = "zzprop")]
#[derive(Clone)]
struct PyStructure {
    inner: st::Structure,
}

#[pymethods]
impl PyStructure {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyStructure { inner: st::Structure::parse(text).map_err(err)? })
    }

    #[staticmethod]
    fn from_graph(g: &PyGraph) -> Self {
        PyStructure { inner: st::Structure::from_graph(&g.inner) }
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn relations(&self) -> Vec<(String, usize)> {
        self.inner.sig().relations().map(|(s, a)| (s.to_string(), a)).collect()
    }

    fn tuples(&self, rel: &str) -> PyResult<Vec<Vec<usize>>> {
        let k = self
            .inner
            .sig()
            .index_of(rel)
            .ok_or_else(|| PyValueError::new_err(format!("unknown relation {rel}")))?;
        Ok(self.inner.tuples(k).to_vec())
    }

    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn __eq__(&self, other: &PyStructure) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Structure(n={}, relations={})", self.inner.n(), self.inner.sig().len())
    }
}

#[pyclass(name = "Ball", module = "zzprop")]
#[derive(Clone)]
struct PyBall {
    inner: st::Ball,
}

#[pymethods]
impl PyBall {
    /// The `radius`-ball around `center` in a graph.
    #[staticmethod]
    fn around(g: &PyGraph, center: usize, radius: usize) -> PyResult<Self> {
        if center >= g.inner.n() {
            return Err(PyValueError::new_err(format!("center {center} out of range")));
        }
        Ok(PyBall { inner: st::r_ball(&st::Structure::from_graph(&g.inner), center, radius) })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyBall { inner: st::Ball::parse(text).map_err(err)? })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn radius(&self) -> usize {
        self.inner.radius()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn isomorphic(&self, other: &PyBall) -> PyResult<bool> {
        st::ball_isomorphic(&self.inner, &other.inner).map_err(err)
    }
}

#[pyfunction]
fn sampling_distance(a: &PyStructure, b: &PyStructure, r: usize) -> PyResult<f64> {
    st::sampling_distance_r(&a.inner, &b.inner, &mut st::TypeRegistry::new(r)).map_err(err)
}

#[pyclass(name = "ZigzagModel", module = "zzprop")]
struct PyModel {
    inner: zm::ZigzagModel,
}

#[pymethods]
impl PyModel {
    /// Builds the model of the given depth over `h` (the 16-cycle when omitted).
    #[new]
    #[pyo3(signature = (depth, h=None))]
    fn new(depth: usize, h: Option<&PyRotMap>) -> PyResult<Self> {
        let h = h.map_or_else(|| gc::RotMapGraph::cycle(16), |h| h.inner.clone());
        Ok(PyModel { inner: zm::build_model(&h, depth).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn structure(&self) -> PyStructure {
        PyStructure { inner: self.inner.structure.clone() }
    }

    fn levels(&self) -> Vec<PyRotMap> {
        self.inner.levels.iter().map(|g| PyRotMap { inner: g.clone() }).collect()
    }

    /// `(clause, ok, message)` for each validator, run on `a` (the model itself by default).
    #[pyo3(signature = (a=None))]
    fn validate(&self, a: Option<&PyStructure>) -> PyResult<Vec<(String, bool, String)>> {
        let s = a.map_or(&self.inner.structure, |a| &a.inner);
        let h2 = gc::square(&self.inner.h).map_err(err)?;
        let reports = zm::validate_all(s, self.inner.d_base, &self.inner.h, &h2).map_err(err)?;
        Ok(reports
            .into_iter()
            .map(|r| {
                let msg = r.violation.as_ref().map_or(String::new(), |v| v.to_string());
                (r.clause.to_string(), r.is_ok(), msg)
            })
            .collect())
    }

    fn underlying_graph(&self) -> PyResult<PyRotMap> {
        Ok(PyRotMap { inner: zm::underlying_graph(&self.inner).map_err(err)? })
    }

    fn counterexample(&self, pattern: &PyStructure) -> PyResult<PyStructure> {
        Ok(PyStructure { inner: zm::build_counterexample(&self.inner, &pattern.inner).map_err(err)? })
    }
}

#[pyfunction]
fn reduce(a: &PyStructure, d: usize) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: zzprop::reduction::reduce(&a.inner, d).map_err(err)?.graph })
}

/// Decodes a reduced graph over the signature of `like`.
#[pyfunction]
fn decode(g: &PyGraph, like: &PyStructure, d: usize) -> PyResult<PyStructure> {
    let dec = zzprop::reduction::decode(&g.inner, like.inner.sig().clone(), d).map_err(err)?;
    Ok(PyStructure { inner: dec.structure })
}

fn verdict_tuple(v: ts::TesterVerdict) -> (bool, usize, usize) {
    (v.accept, v.queries, v.samples)
}

/// `(accept, queries, samples)` of one run of the τ-freeness tester.
#[pyfunction]
#[pyo3(signature = (g, tau, eps, seed=0, d=None))]
fn test_freeness(g: &PyGraph, tau: &PyBall, eps: f64, seed: u64, d: Option<usize>) -> PyResult<(bool, usize, usize)> {
    let o = ts::GraphOracle::new(&g.inner, d.unwrap_or(g.inner.max_degree().max(1)));
    ts::freeness_tester(&o, &tau.inner, eps, seed).map(verdict_tuple).map_err(err)
}

/// `(accept, queries, samples)` of one run of the τ-regularity tester.
#[pyfunction]
#[pyo3(signature = (g, tau, eps, seed=0, d=None))]
fn test_regularity(
    g: &PyGraph,
    tau: &PyBall,
    eps: f64,
    seed: u64,
    d: Option<usize>,
) -> PyResult<(bool, usize, usize)> {
    let o = ts::GraphOracle::new(&g.inner, d.unwrap_or(g.inner.max_degree().max(1)));
    ts::regularity_tester(&o, &tau.inner, eps, seed).map(verdict_tuple).map_err(err)
}

#[pyclass(name = "MarkedGraph", module = "zzprop")]
#[derive(Clone)]
struct PyMarkedGraph {
    inner: gs::MarkedGraph,
}

#[pymethods]
impl PyMarkedGraph {
    /// `marks` holds one of "full", "semifull" or "partial" per vertex.
    #[new]
    fn new(g: &PyGraph, marks: Vec<String>) -> PyResult<Self> {
        let marks = marks
            .iter()
            .map(|m| m.parse::<gs::Mark>().map_err(PyValueError::new_err))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyMarkedGraph { inner: gs::MarkedGraph::new(g.inner.clone(), marks).map_err(err)? })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyMarkedGraph { inner: gs::MarkedGraph::parse(text).map_err(err)? })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn embed(&self, g: &PyGraph) -> Option<Vec<usize>> {
        gs::embed(&self.inner, &g.inner)
    }

    fn all_embeddings(&self, g: &PyGraph) -> PyResult<Vec<Vec<usize>>> {
        gs::all_embeddings(&self.inner, &g.inner).map_err(err)
    }
}

#[pyclass(name = "MarkedFamily", module = "zzprop")]
#[derive(Clone)]
struct PyMarkedFamily {
    inner: gs::MarkedFamily,
}

#[pymethods]
impl PyMarkedFamily {
    #[new]
    #[pyo3(signature = (members=Vec::new()))]
    fn new(members: Vec<PyMarkedGraph>) -> Self {
        PyMarkedFamily { inner: members.into_iter().map(|m| m.inner).collect() }
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyMarkedFamily { inner: gs::MarkedFamily::parse(text).map_err(err)? })
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn members(&self) -> Vec<PyMarkedGraph> {
        self.inner.members().iter().map(|m| PyMarkedGraph { inner: m.clone() }).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn is_free(&self, g: &PyGraph) -> bool {
        gs::is_family_free(&self.inner, &g.inner)
    }

    fn covers(&self, b: Vec<usize>, g: &PyGraph) -> bool {
        gs::covers(&b, &self.inner, &g.inner)
    }
}

#[pyfunction]
#[pyo3(signature = (tau, k, d, size_cap=gs::DEFAULT_SIZE_CAP))]
fn k_realisations(tau: &PyBall, k: usize, d: usize, size_cap: usize) -> PyResult<PyMarkedFamily> {
    Ok(PyMarkedFamily { inner: gs::k_realisations(&tau.inner, k, d, size_cap).map_err(err)? })
}

/// The augmented family and the descriptions of the members that were added.
#[pyfunction]
fn deg2_augment(fam: &PyMarkedFamily, k: usize, n: usize) -> PyResult<(PyMarkedFamily, Vec<String>)> {
    let aug = gs::deg2_augment(&fam.inner, k, n).map_err(err)?;
    Ok((PyMarkedFamily { inner: aug.family }, aug.added.iter().map(ToString::to_string).collect()))
}

#[pymodule]
#[pyo3(name = "zzprop")]
fn zzprop_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyRotMap>()?;
    m.add_class::<PyStructure>()?;
    m.add_class::<PyBall>()?;
    m.add_class::<PyModel>()?;
    m.add_class::<PyMarkedGraph>()?;
    m.add_class::<PyMarkedFamily>()?;
    m.add_function(wrap_pyfunction!(iterated_family, m)?)?;
    m.add_function(wrap_pyfunction!(sampling_distance, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(decode, m)?)?;
    m.add_function(wrap_pyfunction!(test_freeness, m)?)?;
    m.add_function(wrap_pyfunction!(test_regularity, m)?)?;
    m.add_function(wrap_pyfunction!(k_realisations, m)?)?;
    m.add_function(wrap_pyfunction!(deg2_augment, m)?)?;
    Ok(())
}
