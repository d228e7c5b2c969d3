//! Python bindings: graphs, certificates, validation, solvers and bounds.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use polydom::bounds::theorem_bounds as core_theorem_bounds;
use polydom::certificate::certificate as core_certificate;
use polydom::labeling::validate as core_validate;
use polydom::solver::{solve_bruteforce, solve_profile_dp, Outcome, DEFAULT_NODE_BUDGET};
use polydom::{FamilyKind, Label, LabelFunction, PolytopeGraph, Variant, VertexId};

fn err(e: polydom::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_family(s: &str) -> PyResult<FamilyKind> {
    s.parse().map_err(PyValueError::new_err)
}

fn parse_variant(s: &str) -> PyResult<Variant> {
    s.parse().map_err(PyValueError::new_err)
}

#[pyclass(name = "Graph", frozen)]
struct Graph {
    inner: PolytopeGraph,
}

#[pymethods]
impl Graph {
    #[getter]
    fn family(&self) -> &'static str {
        self.inner.family().tag()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().map(|v| v.to_string()).collect()
    }

    fn edges(&self) -> Vec<(String, String)> {
        self.inner
            .edges()
            .map(|(u, v)| (self.inner.vertex(u).to_string(), self.inner.vertex(v).to_string()))
            .collect()
    }

    fn degree(&self, v: &str) -> PyResult<usize> {
        let v: VertexId = v.parse().map_err(PyValueError::new_err)?;
        self.inner.degree(v).map_err(err)
    }

    fn edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn dot(&self) -> String {
        self.inner.to_dot()
    }

    fn __repr__(&self) -> String {
        format!("Graph({})", self.inner.identity())
    }
}

fn to_labeling(g: &PolytopeGraph, labels: &BTreeMap<String, i64>) -> PyResult<LabelFunction> {
    if labels.len() != g.vertex_count() {
        return Err(PyValueError::new_err(format!(
            "expected {} labels, got {}",
            g.vertex_count(),
            labels.len()
        )));
    }
    let mut out = vec![Label::One; g.vertex_count()];
    for (name, &value) in labels {
        let v: VertexId = name.parse().map_err(PyValueError::new_err)?;
        let i = g.index_of(v).map_err(err)?;
        out[i] = Label::from_value(value)
            .ok_or_else(|| PyValueError::new_err(format!("label must be -1, 1 or 2, got {value}")))?;
    }
    LabelFunction::new(g, out).map_err(err)
}

fn to_dict(g: &PolytopeGraph, f: &LabelFunction) -> BTreeMap<String, i64> {
    f.labels()
        .iter()
        .enumerate()
        .map(|(i, l)| (g.vertex(i).to_string(), l.value()))
        .collect()
}

#[pyfunction]
fn generate(family: &str, n: usize) -> PyResult<Graph> {
    let inner = polydom::generate(parse_family(family)?, n).map_err(err)?;
    Ok(Graph { inner })
}

/// Returns `(labels, claimed_weight, source)`.
#[pyfunction]
fn certificate(family: &str, variant: &str, n: usize) -> PyResult<(BTreeMap<String, i64>, i64, String)> {
    let c = core_certificate(parse_family(family)?, parse_variant(variant)?, n).map_err(err)?;
    Ok((to_dict(&c.graph, &c.labeling), c.claimed_weight, c.source.to_string()))
}

/// Violation messages; empty means admissible.
#[pyfunction]
fn validate(graph: &Graph, labels: BTreeMap<String, i64>, variant: &str) -> PyResult<Vec<String>> {
    let f = to_labeling(&graph.inner, &labels)?;
    let v = core_validate(&graph.inner, &f, parse_variant(variant)?).map_err(err)?;
    Ok(v.iter().map(|x| x.to_string()).collect())
}

#[pyfunction]
fn weight(labels: BTreeMap<String, i64>) -> i64 {
    labels.values().sum()
}

/// Returns `(gamma, witness)`; `method` is "dp" or "bruteforce".
#[pyfunction]
#[pyo3(signature = (graph, variant, method = "dp", budget = DEFAULT_NODE_BUDGET))]
fn solve(
    py: Python<'_>,
    graph: &Graph,
    variant: &str,
    method: &str,
    budget: u64,
) -> PyResult<(i64, BTreeMap<String, i64>)> {
    let v = parse_variant(variant)?;
    let g = &graph.inner;
    let r = match method {
        "dp" => py.detach(|| solve_profile_dp(g, v)).map_err(err)?,
        "bruteforce" => match py.detach(|| solve_bruteforce(g, v, budget)).map_err(err)? {
            Outcome::Solved(r) => r,
            Outcome::Inconclusive { nodes, .. } => {
                return Err(PyRuntimeError::new_err(format!("inconclusive after {nodes} nodes")))
            }
        },
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    Ok((r.gamma, to_dict(g, &r.witness)))
}

/// Returns `(lower, upper, exact)`.
#[pyfunction]
fn theorem_bounds(family: &str, variant: &str, n: usize) -> PyResult<(i64, i64, bool)> {
    let t = core_theorem_bounds(parse_family(family)?, parse_variant(variant)?, n).map_err(err)?;
    Ok((t.lower, t.upper, t.exact))
}

#[pymodule]
#[pyo3(name = "polydom")]
pub fn polydom_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(certificate, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(weight, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_bounds, m)?)?;
    Ok(())
}
