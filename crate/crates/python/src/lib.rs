// SPDX-License-Identifier: Apache-2.0

//! Python bindings. Build with `--features extension-module` and install
//! the resulting shared library as `eqrank.so` (or `eqrank.pyd`).

use std::path::PathBuf;

use eqrank::io::{self as graph_io, GmlLabels, InputFormat};
use eqrank::pipeline::{Algorithm, Benchmark, BenchmarkOptions, LinkAnalysisOptions};
use eqrank::{Indicator, IndicatorOptions, Strategy};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(
    eqrank,
    PreconditionError,
    PyRuntimeError,
    "The graph violates a precondition, such as connectivity."
);

fn to_py(e: eqrank::Error) -> PyErr {
    if e.is_precondition() {
        PreconditionError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

/// Undirected simple graph with string node labels.
#[pyclass(name = "Graph", module = "eqrank", frozen)]
struct PyGraph {
    inner: eqrank::Graph,
}

#[pymethods]
impl PyGraph {
    /// Builds a graph from `(label, label)` pairs. Self-loops and repeated
    /// edges are dropped.
    #[new]
    #[pyo3(signature = (edges, nodes = None))]
    fn new(edges: Vec<(String, String)>, nodes: Option<Vec<String>>) -> Self {
        let mut b = eqrank::GraphBuilder::new();
        for n in nodes.into_iter().flatten() {
            b.add_node(n);
        }
        for (u, v) in &edges {
            b.add_edge(u, v);
        }
        PyGraph { inner: b.build() }
    }

    #[getter]
    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn edges(&self) -> Vec<(String, String)> {
        let g = &self.inner;
        g.edges()
            .map(|(u, v)| (g.label(u).to_string(), g.label(v).to_string()))
            .collect()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn largest_component(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.largest_component(),
        }
    }

    /// Edge-list (`"edgelist"`) or DOT (`"dot"`) text.
    #[pyo3(signature = (format = "edgelist"))]
    fn to_string(&self, format: &str) -> PyResult<String> {
        let format = match format {
            "edgelist" => graph_io::OutputFormat::EdgeList,
            "dot" => graph_io::OutputFormat::Dot,
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown graph format {other:?}"
                )))
            }
        };
        Ok(graph_io::write_graph(&self.inner, format))
    }

    fn __len__(&self) -> usize {
        self.inner.node_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(nodes={}, edges={})",
            self.inner.node_count(),
            self.inner.edge_count()
        )
    }
}

/// Zachary's karate club, labels "1" to "34".
#[pyfunction]
fn zachary() -> PyGraph {
    PyGraph {
        inner: eqrank::datasets::zachary(),
    }
}

#[pyfunction]
fn parse_edge_list(text: &str) -> PyResult<PyGraph> {
    let parsed =
        graph_io::parse_edge_list(text, &graph_io::EdgeListOptions::default()).map_err(to_py)?;
    Ok(PyGraph {
        inner: parsed.graph,
    })
}

fn gml_labels(name: &str) -> PyResult<GmlLabels> {
    match name {
        "label" => Ok(GmlLabels::Label),
        "id" => Ok(GmlLabels::Id),
        "ordinal" => Ok(GmlLabels::Ordinal),
        other => Err(PyValueError::new_err(format!(
            "unknown gml_labels policy {other:?}"
        ))),
    }
}

/// Reads an edge list or GML file; `format` is `"edgelist"`, `"gml"` or
/// `None` to decide by extension.
#[pyfunction]
#[pyo3(signature = (path, format = None, gml_labels = "label"))]
fn read_graph(path: PathBuf, format: Option<&str>, gml_labels: &str) -> PyResult<PyGraph> {
    let format = match format {
        None => None,
        Some("edgelist") => Some(InputFormat::EdgeList),
        Some("gml") => Some(InputFormat::Gml),
        Some(other) => {
            return Err(PyValueError::new_err(format!(
                "unknown input format {other:?}"
            )))
        }
    };
    let parsed =
        graph_io::read_graph(&path, format, self::gml_labels(gml_labels)?).map_err(to_py)?;
    Ok(PyGraph {
        inner: parsed.graph,
    })
}

/// Indicator columns keyed by name, each aligned with `graph.labels()`.
#[pyfunction]
#[pyo3(signature = (graph, nk = 1.0, threads = 1))]
fn indicators<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    nk: f64,
    threads: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let g = &graph.inner;
    let table = py
        .detach(|| eqrank::ScoreTable::indicators(g, IndicatorOptions { nk, threads }))
        .map_err(to_py)?;
    let out = PyDict::new(py);
    for (name, column) in table.names().iter().zip(table.columns()) {
        out.set_item(name, column.clone())?;
    }
    Ok(out)
}

fn benchmark(
    py: Python<'_>,
    g: &eqrank::Graph,
    nk: f64,
    tol: f64,
    fast: bool,
    threads: usize,
) -> PyResult<Benchmark> {
    let options = BenchmarkOptions {
        indicators: IndicatorOptions { nk, threads },
        score_tol: tol,
        strategy: if fast {
            Strategy::Fast
        } else {
            Strategy::Reference
        },
    };
    py.detach(|| Benchmark::compute(g, &options)).map_err(to_py)
}

/// Equivalence classes as lists of labels, most important first.
#[pyfunction]
#[pyo3(signature = (graph, nk = 1.0, tol = eqrank::pareto::DEFAULT_SCORE_TOLERANCE, fast = false, threads = 1))]
fn equivalence_classes(
    py: Python<'_>,
    graph: &PyGraph,
    nk: f64,
    tol: f64,
    fast: bool,
    threads: usize,
) -> PyResult<Vec<Vec<String>>> {
    let g = &graph.inner;
    let b = benchmark(py, g, nk, tol, fast, threads)?;
    Ok(b.classes
        .classes()
        .iter()
        .map(|c| c.iter().map(|&u| g.label(u).to_string()).collect())
        .collect())
}

fn score_dict<'py>(
    py: Python<'py>,
    g: &eqrank::Graph,
    scores: &[f64],
) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    for (label, s) in g.labels().iter().zip(scores) {
        out.set_item(label, *s)?;
    }
    Ok(out)
}

#[pyfunction]
#[pyo3(signature = (graph, jump = eqrank::link_analysis::DEFAULT_JUMP, iterations = eqrank::link_analysis::DEFAULT_PAGERANK_ITERATIONS))]
fn pagerank<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    jump: f64,
    iterations: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let scores = eqrank::pagerank(&graph.inner, jump, iterations).map_err(to_py)?;
    score_dict(py, &graph.inner, &scores)
}

/// Authority scores (equal to hub scores on an undirected graph).
#[pyfunction]
#[pyo3(signature = (graph, max_iterations = eqrank::link_analysis::DEFAULT_HITS_MAX_ITERATIONS, tol = eqrank::link_analysis::DEFAULT_HITS_TOLERANCE))]
fn hits<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    max_iterations: usize,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let scores = eqrank::hits(&graph.inner, max_iterations, tol).map_err(to_py)?;
    score_dict(py, &graph.inner, &scores)
}

/// Coverage of `against` (an algorithm name or a `{label: score}` dict)
/// relative to the graph's equivalence classes.
#[pyfunction]
#[pyo3(signature = (
    graph,
    against,
    nk = 1.0,
    tol = eqrank::pareto::DEFAULT_SCORE_TOLERANCE,
    tie_tol = eqrank::link_analysis::DEFAULT_TIE_TOLERANCE,
    threads = 1,
))]
fn compare<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    against: &Bound<'py, PyAny>,
    nk: f64,
    tol: f64,
    tie_tol: f64,
    threads: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let g = &graph.inner;
    let algorithm = if let Ok(name) = against.extract::<String>() {
        name.parse::<Algorithm>().map_err(to_py)?
    } else {
        let dict = against.cast::<PyDict>()?;
        let mut scores = vec![None; g.node_count()];
        for (k, v) in dict.iter() {
            let label: String = k.extract()?;
            let u = g
                .index_of(&label)
                .ok_or_else(|| PyValueError::new_err(format!("unknown node label {label:?}")))?;
            scores[u] = Some(v.extract::<f64>()?);
        }
        let scores = scores
            .into_iter()
            .enumerate()
            .map(|(u, s)| {
                s.ok_or_else(|| {
                    PyValueError::new_err(format!("no score for node {:?}", g.label(u)))
                })
            })
            .collect::<PyResult<Vec<f64>>>()?;
        Algorithm::External {
            name: "external".into(),
            scores,
        }
    };
    let b = benchmark(py, g, nk, tol, false, threads)?;
    let options = LinkAnalysisOptions {
        tie_tol,
        ..LinkAnalysisOptions::default()
    };
    let c = eqrank::compare(g, &b, &algorithm, &options).map_err(to_py)?;
    let r = &c.report;
    let out = PyDict::new(py);
    out.set_item("algorithm", c.algorithm)?;
    out.set_item("groups", c.groups)?;
    out.set_item("best_coverage", r.best_coverage)?;
    out.set_item("worst_coverage", r.worst_coverage)?;
    out.set_item("certratio", r.certratio)?;
    out.set_item("distance_best", r.distance_best)?;
    out.set_item("distance_worst", r.distance_worst)?;
    out.set_item("max_distance", r.max_distance)?;
    out.set_item("degenerate", r.degenerate)?;
    Ok(out)
}

/// Induced subgraph on the top `top` classes plus its statistics.
#[pyfunction]
#[pyo3(signature = (graph, top, nk = 1.0, tol = eqrank::pareto::DEFAULT_SCORE_TOLERANCE, threads = 1))]
fn kernel<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    top: usize,
    nk: f64,
    tol: f64,
    threads: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let g = &graph.inner;
    let b = benchmark(py, g, nk, tol, true, threads)?;
    let report = eqrank::extract_kernel(g, &b.classes, top).map_err(to_py)?;
    let s = &report.stats;
    let out = PyDict::new(py);
    out.set_item("classes_included", report.classes_included)?;
    out.set_item("node_count", s.node_count)?;
    out.set_item("edge_count", s.edge_count)?;
    out.set_item("avg_degree_kernel", s.avg_degree_kernel)?;
    out.set_item("edges_per_node_full", s.edges_per_node_full)?;
    out.set_item("avg_degree_full", s.avg_degree_full)?;
    out.set_item(
        "graph",
        Py::new(
            py,
            PyGraph {
                inner: report.kernel,
            },
        )?,
    )?;
    Ok(out)
}

/// True iff the named nodes induce a complete subgraph.
#[pyfunction]
fn is_complete(graph: &PyGraph, labels: Vec<String>) -> PyResult<bool> {
    eqrank::completeness_check(&graph.inner, labels.iter().map(String::as_str)).map_err(to_py)
}

#[pymodule]
#[pyo3(name = "eqrank")]
fn eqrank_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add("PreconditionError", m.py().get_type::<PreconditionError>())?;
    m.add(
        "INDICATORS",
        Indicator::ALL.iter().map(|i| i.name()).collect::<Vec<_>>(),
    )?;
    m.add_function(wrap_pyfunction!(zachary, m)?)?;
    m.add_function(wrap_pyfunction!(parse_edge_list, m)?)?;
    m.add_function(wrap_pyfunction!(read_graph, m)?)?;
    m.add_function(wrap_pyfunction!(indicators, m)?)?;
    m.add_function(wrap_pyfunction!(equivalence_classes, m)?)?;
    m.add_function(wrap_pyfunction!(pagerank, m)?)?;
    m.add_function(wrap_pyfunction!(hits, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(kernel, m)?)?;
    m.add_function(wrap_pyfunction!(is_complete, m)?)?;
    Ok(())
}
