//! Python bindings: an immutable graph type plus the exact curvature,
//! partition and counterexample entry points. Exact values cross the
//! boundary as canonical `p/q` strings; structured reports as JSON strings.

use ollivier::counterexamples::{build, verify_refutation, Family};
use ollivier::curvature::{
    forman, kappa, w_bm_bipartite, w_bm_girth5, MethodChoice, BRUTE_FORCE_VERTEX_BUDGET,
};
use ollivier::graph::{Graph, VertexId};
use ollivier::report::{CurvatureRecord, PartitionRecord};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: ollivier::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_method(name: &str) -> PyResult<MethodChoice> {
    Ok(match name {
        "auto" => MethodChoice::Auto,
        "full-lp" => MethodChoice::FullLp,
        "reduced-lp" => MethodChoice::ReducedLp,
        "closed-form" => MethodChoice::ClosedForm,
        "brute-force" => MethodChoice::BruteForce,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown method '{other}'; expected auto, full-lp, reduced-lp, closed-form or brute-force"
            )))
        }
    })
}

fn parse_family(name: &str) -> PyResult<Family> {
    Ok(match name {
        "bipartite" => Family::Bipartite,
        "girth5" => Family::Girth5,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown family '{other}'; expected bipartite or girth5"
            )))
        }
    })
}

/// Immutable simple unweighted graph.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: Graph,
}

impl PyGraph {
    fn vertex(&self, label: &str) -> PyResult<VertexId> {
        self.inner
            .vertex_by_label(label)
            .ok_or_else(|| PyValueError::new_err(format!("unknown vertex '{label}'")))
    }
}

#[pymethods]
impl PyGraph {
    /// Build from a list of (label, label) edges; duplicates merge,
    /// self-loops are rejected.
    #[new]
    fn new(edges: Vec<(String, String)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: Graph::from_edge_labels(edges).map_err(err)?,
        })
    }

    /// Parse the edge-list text format ('#' comments, blank lines ignored).
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: Graph::parse_edge_list(text).map_err(err)?,
        })
    }

    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn labels(&self) -> Vec<String> {
        self.inner
            .vertices()
            .map(|v| self.inner.label(v).to_string())
            .collect()
    }

    fn edges(&self) -> Vec<(String, String)> {
        self.inner
            .edges()
            .map(|(a, b)| {
                (
                    self.inner.label(a).to_string(),
                    self.inner.label(b).to_string(),
                )
            })
            .collect()
    }

    fn degree(&self, label: &str) -> PyResult<usize> {
        Ok(self.inner.degree(self.vertex(label)?))
    }

    fn has_edge(&self, a: &str, b: &str) -> PyResult<bool> {
        Ok(self.inner.has_edge(self.vertex(a)?, self.vertex(b)?))
    }

    fn is_bipartite(&self) -> bool {
        self.inner.is_bipartite()
    }

    fn girth_at_least(&self, g: u32) -> bool {
        self.inner.girth_at_least(g)
    }

    fn distance(&self, a: &str, b: &str, cap: u32) -> PyResult<Option<u32>> {
        Ok(self
            .inner
            .distance_capped(self.vertex(a)?, self.vertex(b)?, cap)
            .hops())
    }

    /// Exact Ollivier curvature of the edge as a `p/q` string.
    #[pyo3(signature = (u, v, method = "auto", brute_budget = BRUTE_FORCE_VERTEX_BUDGET))]
    fn kappa(&self, u: &str, v: &str, method: &str, brute_budget: usize) -> PyResult<String> {
        let result = kappa(
            &self.inner,
            self.vertex(u)?,
            self.vertex(v)?,
            parse_method(method)?,
            brute_budget,
        )
        .map_err(err)?;
        Ok(result.kappa.to_string())
    }

    /// Exact Wasserstein distance of the edge as a `p/q` string.
    #[pyo3(signature = (u, v, method = "auto", brute_budget = BRUTE_FORCE_VERTEX_BUDGET))]
    fn wasserstein(&self, u: &str, v: &str, method: &str, brute_budget: usize) -> PyResult<String> {
        let result = kappa(
            &self.inner,
            self.vertex(u)?,
            self.vertex(v)?,
            parse_method(method)?,
            brute_budget,
        )
        .map_err(err)?;
        Ok(result.wasserstein.to_string())
    }

    /// Full curvature record of the edge as a JSON string.
    #[pyo3(signature = (u, v, method = "auto", brute_budget = BRUTE_FORCE_VERTEX_BUDGET))]
    fn curvature_json(
        &self,
        u: &str,
        v: &str,
        method: &str,
        brute_budget: usize,
    ) -> PyResult<String> {
        let result = kappa(
            &self.inner,
            self.vertex(u)?,
            self.vertex(v)?,
            parse_method(method)?,
            brute_budget,
        )
        .map_err(err)?;
        let record = CurvatureRecord::from_result(&self.inner, &result).map_err(err)?;
        serde_json::to_string(&record).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// Core-neighbourhood partition of the edge as a JSON string.
    fn partition_json(&self, u: &str, v: &str) -> PyResult<String> {
        let record =
            PartitionRecord::build(&self.inner, self.vertex(u)?, self.vertex(v)?).map_err(err)?;
        serde_json::to_string(&record).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// Forman curvature of the edge as a `p/q` string.
    fn forman(&self, u: &str, v: &str) -> PyResult<String> {
        Ok(forman(&self.inner, self.vertex(u)?, self.vertex(v)?)
            .map_err(err)?
            .to_string())
    }

    /// Bhattacharya–Mukherjee bipartite candidate (refuted in general).
    fn w_bm_bipartite(&self, u: &str, v: &str) -> PyResult<String> {
        Ok(w_bm_bipartite(&self.inner, self.vertex(u)?, self.vertex(v)?)
            .map_err(err)?
            .to_string())
    }

    /// Bhattacharya–Mukherjee girth-5 candidate (refuted in general).
    fn w_bm_girth5(&self, u: &str, v: &str) -> PyResult<String> {
        Ok(w_bm_girth5(&self.inner, self.vertex(u)?, self.vertex(v)?)
            .map_err(err)?
            .to_string())
    }

    fn edge_list_text(&self) -> String {
        self.inner.to_edge_list_text()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(vertices={}, edges={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// Build a counterexample family instance, verify the refutation and return
/// the report as a JSON string.
#[pyfunction]
fn counterexample_report(family: &str, parameter: usize) -> PyResult<String> {
    let inst = build(parse_family(family)?, parameter).map_err(err)?;
    let report = verify_refutation(&inst).map_err(err)?;
    serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Edge list text of a counterexample instance.
#[pyfunction]
fn counterexample_edge_list(family: &str, parameter: usize) -> PyResult<String> {
    let inst = build(parse_family(family)?, parameter).map_err(err)?;
    Ok(inst.graph.to_edge_list_text())
}

/// Number of connected graphs on at most `max_n` vertices up to isomorphism.
#[pyfunction]
fn connected_graph_count(max_n: usize) -> PyResult<usize> {
    if !(1..=8).contains(&max_n) {
        return Err(PyValueError::new_err("max_n must lie in 1..=8"));
    }
    Ok(ollivier::enumerate::connected_graphs_upto(max_n).len())
}

#[pymodule]
fn ollivier_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(counterexample_report, m)?)?;
    m.add_function(wrap_pyfunction!(counterexample_edge_list, m)?)?;
    m.add_function(wrap_pyfunction!(connected_graph_count, m)?)?;
    Ok(())
}
