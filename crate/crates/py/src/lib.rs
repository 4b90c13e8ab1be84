//! Python bindings: graphs, tree-set construction and verification, the
//! oracles, sweeps and the acceptance suite.

use godan::export::{graph_dot, graph_json, tree_set_dot, tree_set_json};
use godan::idst::godan_graph;
use godan::oracle::{kappa_k_exact, kappa_s_exact, OracleOptions, Policy};
use godan::sweep::{run_sweep, Subsets, SweepOptions};
use godan::verify::structural_suite;
use godan::{build_idsts_with, verify_idst, AltNetwork, BuildOptions, Error, GodanGraph, Graph, SteinerTreeSet, Vertex};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Construction(_) | Error::BudgetExhausted(_) | Error::Io(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

type Pair = (String, String);

/// `(overall, [(check, pass, detail), ...])`.
type Report = (bool, Vec<(String, bool, String)>);

/// `EA_n`, held by dimension; the graph itself is built once per process.
#[pyclass(name = "GodanGraph", module = "godan_py", frozen)]
struct PyGodanGraph {
    g: &'static GodanGraph,
}

impl PyGodanGraph {
    fn vertices_of(&self, labels: &[String]) -> PyResult<Vec<Vertex>> {
        labels.iter().map(|l| self.g.parse_vertex(l).map_err(py_err)).collect()
    }

    fn label_edges(&self, edges: &[(Vertex, Vertex)]) -> Vec<Pair> {
        edges.iter().map(|&(a, b)| (self.g.label(a), self.g.label(b))).collect()
    }
}

#[pymethods]
impl PyGodanGraph {
    #[new]
    fn new(n: usize) -> PyResult<Self> {
        Ok(PyGodanGraph { g: godan_graph(n).map_err(py_err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.g.n()
    }

    #[getter]
    fn order(&self) -> usize {
        self.g.order()
    }

    fn vertices(&self) -> Vec<String> {
        (0..self.g.order() as Vertex).map(|v| self.g.label(v)).collect()
    }

    fn edges(&self) -> Vec<Pair> {
        self.label_edges(&self.g.edges())
    }

    fn neighbors(&self, v: &str) -> PyResult<Vec<String>> {
        let v = self.g.parse_vertex(v).map_err(py_err)?;
        Ok(self.g.neighbors(v).iter().map(|&u| self.g.label(u)).collect())
    }

    fn has_edge(&self, a: &str, b: &str) -> PyResult<bool> {
        let (a, b) = (self.g.parse_vertex(a).map_err(py_err)?, self.g.parse_vertex(b).map_err(py_err)?);
        Ok(self.g.has_edge(a, b))
    }

    fn is_even(&self, v: &str) -> PyResult<bool> {
        Ok(self.g.is_even(self.g.parse_vertex(v).map_err(py_err)?))
    }

    fn to_json(&self) -> PyResult<String> {
        graph_json(self.g).map_err(py_err)
    }

    #[pyo3(signature = (m = None))]
    fn to_dot(&self, m: Option<usize>) -> PyResult<String> {
        graph_dot(self.g, m.unwrap_or(self.g.n())).map_err(py_err)
    }

    /// `n - 1` verified trees for four distinct vertices.
    #[pyo3(signature = (s, fallback_search = false, m = None))]
    fn build_idsts(&self, s: Vec<String>, fallback_search: bool, m: Option<usize>) -> PyResult<PySteinerTreeSet> {
        let terms = self.vertices_of(&s)?;
        let opts = BuildOptions { fallback_search, m };
        let set = build_idsts_with(self.g, &terms, &opts).map_err(py_err)?;
        Ok(PySteinerTreeSet { g: self.g, set })
    }

    fn verify_idst(&self, trees: Vec<Vec<Pair>>, s: Vec<String>) -> PyResult<Report> {
        let terms = self.vertices_of(&s)?;
        let mut edges = Vec::with_capacity(trees.len());
        for t in &trees {
            let mut es = Vec::with_capacity(t.len());
            for (a, b) in t {
                es.push((self.g.parse_vertex(a).map_err(py_err)?, self.g.parse_vertex(b).map_err(py_err)?));
            }
            edges.push(es);
        }
        let r = verify_idst(self.g, &edges, &terms);
        Ok((r.overall, r.checks.into_iter().map(|c| (c.name, c.pass, c.detail)).collect()))
    }

    /// `(max_t, exact)` for the given terminals.
    fn kappa_s_exact(&self, s: Vec<String>) -> PyResult<(usize, bool)> {
        let terms = self.vertices_of(&s)?;
        let r = kappa_s_exact(self.g, &terms, OracleOptions::default()).map_err(py_err)?;
        Ok((r.max_t, r.exact))
    }

    fn __repr__(&self) -> String {
        format!("GodanGraph(n={})", self.g.n())
    }
}

#[pyclass(name = "SteinerTreeSet", module = "godan_py", frozen)]
struct PySteinerTreeSet {
    g: &'static GodanGraph,
    set: SteinerTreeSet,
}

#[pymethods]
impl PySteinerTreeSet {
    #[getter]
    fn terminals(&self) -> Vec<String> {
        self.set.terminals.iter().map(|&v| self.g.label(v)).collect()
    }

    /// Case path, e.g. `S211/Case1`.
    #[getter]
    fn case(&self) -> String {
        self.set.case.path()
    }

    #[getter]
    fn case_tag(&self) -> String {
        self.set.case.to_string()
    }

    #[getter]
    fn trees(&self) -> Vec<Vec<Pair>> {
        self.set.trees.iter().map(|t| t.iter().map(|&(a, b)| (self.g.label(a), self.g.label(b))).collect()).collect()
    }

    fn is_valid(&self) -> bool {
        self.set.is_valid_in(self.g)
    }

    fn to_json(&self) -> PyResult<String> {
        tree_set_json(self.g, &self.set).map_err(py_err)
    }

    fn to_dot(&self) -> String {
        tree_set_dot(self.g, &self.set)
    }

    fn __len__(&self) -> usize {
        self.set.trees.len()
    }

    fn __repr__(&self) -> String {
        format!("SteinerTreeSet({} trees, {})", self.set.trees.len(), self.set.case.path())
    }
}

/// `κ_k` of `EA_n` (or `AN_n` with `graph="an"`): `(value, exact, minimizer)`.
#[pyfunction]
#[pyo3(signature = (n, k, sample = None, seed = 0, graph = "ea"))]
fn kappa_k(n: usize, k: usize, sample: Option<usize>, seed: u64, graph: &str) -> PyResult<(usize, bool, Vec<String>)> {
    let policy = match sample {
        Some(count) => Policy::Sample { count, seed },
        None => Policy::Exhaustive,
    };
    let ea = godan_graph(n).map_err(py_err)?;
    let an;
    let g: &dyn Graph = match graph {
        "ea" => ea,
        "an" => {
            an = AltNetwork::new(n).map_err(py_err)?;
            &an
        }
        other => return Err(PyValueError::new_err(format!("unknown graph {other:?} (ea, an)"))),
    };
    let r = kappa_k_exact(g, k, policy, OracleOptions::default()).map_err(py_err)?;
    Ok((r.value, r.exact, r.minimizer.iter().map(|&v| g.label(v)).collect()))
}

/// The structural checks of `EA_n`.
#[pyfunction]
fn structural(n: usize) -> PyResult<Report> {
    let r = structural_suite(n).map_err(py_err)?;
    Ok((r.overall, r.checks.into_iter().map(|c| (c.name, c.pass, c.detail)).collect()))
}

/// Runs a sweep and returns `(csv, summary_json)`; exhaustive unless `sample` is given.
#[pyfunction]
#[pyo3(signature = (n, sample = None, seed = 0))]
fn sweep(n: usize, sample: Option<usize>, seed: u64) -> PyResult<(String, String)> {
    let subsets = match sample {
        Some(count) => Subsets::Sample { count, seed },
        None => Subsets::Exhaustive,
    };
    let r = run_sweep(n, subsets, &SweepOptions::default()).map_err(py_err)?;
    Ok((r.to_csv().map_err(py_err)?, r.summary_json().map_err(py_err)?))
}

/// `[(id, title, pass, detail), ...]` for the requested acceptance criteria.
#[pyfunction]
#[pyo3(signature = (ids = None))]
fn acceptance(py: Python<'_>, ids: Option<Vec<u8>>) -> PyResult<Vec<(u8, String, bool, String)>> {
    let ids = ids.unwrap_or_else(|| (1..=10).collect());
    if let Some(bad) = ids.iter().find(|id| !(1..=10).contains(*id)) {
        return Err(PyValueError::new_err(format!("no criterion {bad}")));
    }
    let verdicts = py.allow_threads(|| ids.iter().map(|&id| godan::acceptance::run_criterion(id)).collect::<Vec<_>>());
    Ok(verdicts.into_iter().map(|v| (v.id, v.title, v.pass, v.detail)).collect())
}

#[pymodule]
fn godan_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGodanGraph>()?;
    m.add_class::<PySteinerTreeSet>()?;
    m.add_function(wrap_pyfunction!(kappa_k, m)?)?;
    m.add_function(wrap_pyfunction!(structural, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(acceptance, m)?)?;
    Ok(())
}
