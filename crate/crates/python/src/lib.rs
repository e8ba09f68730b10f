//! Python bindings: subshifts, labeled graphs, lambda-graph systems and invariants.

use std::collections::BTreeMap;

use lamgraph::builders::{self, Beta};
use lamgraph::invariants::{self, IntMatrix, KGroupResult};
use lamgraph::subshift;
use lamgraph::{fischer, sync, Alphabet, LabeledGraph, LambdaGraphTruncation, SubshiftSpec, SyncSearchParams, Word};
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: lamgraph::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A subshift: alphabet plus membership backend.
#[pyclass(name = "Subshift", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySubshift {
    inner: SubshiftSpec,
}

#[pymethods]
impl PySubshift {
    /// even, odd, golden, full:N, dyck:N, motzkin:N or beta:X.
    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        let (head, arg) = name.split_once(':').map_or((name, None), |(h, a)| (h, Some(a)));
        let size = || -> PyResult<usize> {
            arg.and_then(|a| a.parse().ok()).ok_or_else(|| PyValueError::new_err(format!("{name:?} needs :N")))
        };
        let inner = match head {
            "even" => subshift::even_shift(),
            "odd" => subshift::odd_shift(),
            "golden" => subshift::golden_mean(),
            "full" => subshift::full_shift(size()?),
            "dyck" => SubshiftSpec::dyck(size()?).map_err(err)?,
            "motzkin" => SubshiftSpec::motzkin(size()?).map_err(err)?,
            "beta" => SubshiftSpec::beta_shift(Beta::parse(arg.unwrap_or("")).map_err(err)?).map_err(err)?,
            _ => return Err(PyValueError::new_err(format!("unknown catalog entry {name:?}"))),
        };
        Ok(PySubshift { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PySubshift { inner: SubshiftSpec::from_json(text).map_err(err)? })
    }

    /// Shift of finite type given by forbidden words over named symbols.
    #[staticmethod]
    fn forbidden(alphabet: Vec<String>, words: Vec<String>) -> PyResult<Self> {
        let a = Alphabet::new(alphabet).map_err(err)?;
        let ws = words.iter().map(|w| a.parse_word(w)).collect::<lamgraph::Result<Vec<Word>>>().map_err(err)?;
        Ok(PySubshift { inner: SubshiftSpec::forbidden(a, ws).map_err(err)? })
    }

    /// Vertex shift of a 0/1 transition matrix.
    #[staticmethod]
    fn from_matrix(matrix: Vec<Vec<u64>>) -> PyResult<Self> {
        Ok(PySubshift { inner: SubshiftSpec::from_transition_matrix(&matrix, None).map_err(err)? })
    }

    #[staticmethod]
    fn sofic(graph: &PyGraph) -> PyResult<Self> {
        Ok(PySubshift { inner: SubshiftSpec::sofic(graph.inner.clone()).map_err(err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(err)
    }

    fn alphabet(&self) -> Vec<String> {
        self.inner.alphabet().names().to_vec()
    }

    fn is_admissible(&self, word: &str) -> PyResult<bool> {
        let w = self.inner.alphabet().parse_word(word).map_err(err)?;
        self.inner.is_admissible(&w).map_err(err)
    }

    fn words(&self, length: usize) -> PyResult<Vec<String>> {
        let ws = self.inner.admissible_words(length).map_err(err)?;
        Ok(ws.iter().map(|w| self.inner.alphabet().format_word(w)).collect())
    }

    fn word_counts(&self, n: usize) -> PyResult<Vec<usize>> {
        self.inner.word_counts(n).map_err(err)
    }

    /// `(value, lower, upper, symbolic)`.
    fn entropy(&self) -> PyResult<(f64, f64, f64, Option<String>)> {
        let e = invariants::entropy(&self.inner).map_err(err)?;
        Ok((e.value, e.lower, e.upper, e.symbolic))
    }

    /// `"yes"`, `"no"` or `"unknown (checked to depth d)"`.
    fn is_irreducible(&self, depth: usize) -> PyResult<String> {
        Ok(self.inner.is_irreducible(depth).map_err(err)?.verdict.to_string())
    }

    fn __repr__(&self) -> String {
        format!("Subshift(alphabet={:?})", self.inner.alphabet().names())
    }
}

/// A finite labeled graph.
#[pyclass(name = "Graph", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: LabeledGraph,
}

#[pymethods]
impl PyGraph {
    /// Edges are `(source, label, target)` names.
    #[new]
    fn new(alphabet: Vec<String>, vertices: Vec<String>, edges: Vec<(String, String, String)>) -> PyResult<Self> {
        let a = Alphabet::new(alphabet).map_err(err)?;
        let vs: Vec<&str> = vertices.iter().map(String::as_str).collect();
        let es: Vec<(&str, &str, &str)> = edges.iter().map(|(s, l, d)| (s.as_str(), l.as_str(), d.as_str())).collect();
        Ok(PyGraph { inner: LabeledGraph::from_triples(a, &vs, &es).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: LabeledGraph::from_json(text).map_err(err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(err)
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot()
    }

    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().to_vec()
    }

    fn edges(&self) -> Vec<(String, String, String)> {
        let g = &self.inner;
        g.edges()
            .iter()
            .map(|e| (g.vertices()[e.src].clone(), g.alphabet().name(e.label).to_owned(), g.vertices()[e.dst].clone()))
            .collect()
    }

    fn is_left_resolving(&self) -> bool {
        self.inner.is_left_resolving()
    }

    fn is_irreducible(&self) -> bool {
        self.inner.is_irreducible()
    }

    fn __repr__(&self) -> String {
        format!("Graph({} vertices, {} edges)", self.inner.num_vertices(), self.inner.edges().len())
    }
}

/// Levels `0..=depth` of a lambda-graph system.
#[pyclass(name = "LambdaGraph", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyLambdaGraph {
    inner: LambdaGraphTruncation,
}

#[pymethods]
impl PyLambdaGraph {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyLambdaGraph { inner: LambdaGraphTruncation::from_json(text).map_err(err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(err)
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot()
    }

    fn relations_json(&self) -> PyResult<String> {
        let v = self.inner.export_relations().map_err(err)?;
        serde_json::to_string_pretty(&lamgraph::schema::tag(v)).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn depth(&self) -> usize {
        self.inner.depth()
    }

    /// Vertices per level.
    fn sizes(&self) -> Vec<usize> {
        self.inner.sizes().to_vec()
    }

    /// Edges between consecutive levels.
    fn num_edges(&self) -> Vec<usize> {
        self.inner.num_edges()
    }

    /// Edges `(i, label, j)` from level `l` to level `l + 1`.
    fn edges(&self, l: usize) -> PyResult<Vec<(usize, String, usize)>> {
        if l >= self.inner.depth() {
            return Err(PyValueError::new_err(format!("no edges leave level {l}")));
        }
        let a = self.inner.alphabet();
        Ok(self.inner.edges(l).iter().map(|e| (e.src, a.name(e.label).to_owned(), e.dst)).collect())
    }

    /// `iota` from level `l + 1` to level `l`.
    fn iota(&self, l: usize) -> PyResult<Vec<usize>> {
        if l >= self.inner.depth() {
            return Err(PyValueError::new_err(format!("no iota below level {}", l + 1)));
        }
        Ok(self.inner.iota_level(l).to_vec())
    }

    /// Structural flags keyed by name.
    fn validate(&self) -> BTreeMap<&'static str, bool> {
        let r = self.inner.validate();
        BTreeMap::from([
            ("left_resolving", r.left_resolving),
            ("predecessor_separated", r.predecessor_separated),
            ("local_property", r.local_property),
            ("essential", r.essential),
            ("iota_surjective", r.iota_surjective),
        ])
    }

    fn is_isomorphic(&self, other: &PyLambdaGraph, from_level: usize) -> PyResult<bool> {
        lamgraph::lambda_graph::isomorphic_from_level(&self.inner, &other.inner, from_level).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("LambdaGraph(sizes={:?})", self.inner.sizes())
    }
}

fn lgs(inner: LambdaGraphTruncation) -> PyLambdaGraph {
    PyLambdaGraph { inner }
}

fn groups(k: &KGroupResult) -> (usize, Vec<BigInt>, usize) {
    (k.k0_free_rank, k.k0_torsion.clone(), k.k1_free_rank)
}

#[pyfunction]
fn fischer_cover(spec: &PySubshift) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: fischer::fischer_cover(&spec.inner).map_err(err)? })
}

/// `(lambda-graph system, stabilization level)` of a Fischer cover.
#[pyfunction]
fn min_lgs_from_fischer(graph: &PyGraph, depth: usize) -> PyResult<(PyLambdaGraph, usize)> {
    let f = fischer::min_lgs_from_fischer(&graph.inner, depth).map_err(err)?;
    Ok((lgs(f.lgs), f.stabilization))
}

/// `(index labels, matrix)` over symbol-vertex pairs.
#[pyfunction]
fn ck_matrix(graph: &PyGraph) -> PyResult<(Vec<String>, Vec<Vec<u64>>)> {
    let m = fischer::ck_matrix(&graph.inner).map_err(err)?;
    Ok((m.labels, m.entries))
}

/// `(K0 free rank, K0 torsion, K1 free rank)`.
#[pyfunction]
fn ck_kgroups(matrix: Vec<Vec<u64>>) -> PyResult<(usize, Vec<BigInt>, usize)> {
    Ok(groups(&invariants::ck_kgroups(&matrix).map_err(err)?))
}

/// Diagonal of the Smith normal form.
#[pyfunction]
fn smith_normal_form(matrix: Vec<Vec<i64>>) -> Vec<BigInt> {
    let m: IntMatrix = matrix.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
    invariants::smith_normal_form(&m).diagonal()
}

#[pyfunction]
#[pyo3(signature = (spec, level, word_bound, extension_bound = None))]
fn build_min_lgs(
    spec: &PySubshift,
    level: usize,
    word_bound: usize,
    extension_bound: Option<usize>,
) -> PyResult<PyLambdaGraph> {
    let mut params = SyncSearchParams::new(word_bound);
    if let Some(e) = extension_bound {
        params = params.with_extension_bound(e);
    }
    Ok(lgs(sync::build_min_lgs(&spec.inner, level, &params).map_err(err)?))
}

#[pyfunction]
fn dyck_lgs(n: usize, level: usize) -> PyResult<PyLambdaGraph> {
    Ok(lgs(builders::dyck_lgs(n, level).map_err(err)?))
}

#[pyfunction]
fn markov_dyck_lgs(matrix: Vec<Vec<u8>>, level: usize) -> PyResult<PyLambdaGraph> {
    Ok(lgs(builders::markov_dyck_lgs(&matrix, level).map_err(err)?))
}

#[pyfunction]
fn motzkin_lgs(n: usize, level: usize) -> PyResult<PyLambdaGraph> {
    Ok(lgs(builders::motzkin_lgs(n, level).map_err(err)?))
}

#[pyfunction]
fn beta_lgs(beta: &str, level: usize) -> PyResult<PyLambdaGraph> {
    Ok(lgs(builders::beta_lgs(&Beta::parse(beta).map_err(err)?, level).map_err(err)?))
}

/// Greedy digits of 1 in base beta.
#[pyfunction]
fn beta_expand(beta: &str, depth: usize) -> PyResult<Vec<u16>> {
    let b = Beta::parse(beta).map_err(err)?;
    let one = builders::ExactNumber::parse("1").map_err(err)?;
    Ok(b.expand(&one, depth).map_err(err)?.digits)
}

#[pyfunction]
fn beta_classify(beta: &str, depth: usize) -> PyResult<String> {
    Ok(Beta::parse(beta).map_err(err)?.classify(depth).map_err(err)?.to_string())
}

#[pyfunction]
fn beta_kgroups(beta: &str, depth: usize) -> PyResult<(usize, Vec<BigInt>, usize)> {
    let k = invariants::beta_kgroups(&Beta::parse(beta).map_err(err)?, depth).map_err(err)?;
    Ok(groups(&k.groups))
}

/// Runs the command-line tool; returns `(exit code, stdout, stderr)`.
#[pyfunction]
fn cli(args: Vec<String>) -> (i32, String, String) {
    let (mut out, mut errs) = (Vec::new(), Vec::new());
    let argv = std::iter::once("lamgraph".to_owned()).chain(args);
    let code = lamgraph::cli::run(argv, &mut out, &mut errs);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&errs).into_owned())
}

#[pymodule]
fn pylamgraph(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySubshift>()?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyLambdaGraph>()?;
    m.add_function(wrap_pyfunction!(fischer_cover, m)?)?;
    m.add_function(wrap_pyfunction!(min_lgs_from_fischer, m)?)?;
    m.add_function(wrap_pyfunction!(ck_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(ck_kgroups, m)?)?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(build_min_lgs, m)?)?;
    m.add_function(wrap_pyfunction!(dyck_lgs, m)?)?;
    m.add_function(wrap_pyfunction!(markov_dyck_lgs, m)?)?;
    m.add_function(wrap_pyfunction!(motzkin_lgs, m)?)?;
    m.add_function(wrap_pyfunction!(beta_lgs, m)?)?;
    m.add_function(wrap_pyfunction!(beta_expand, m)?)?;
    m.add_function(wrap_pyfunction!(beta_classify, m)?)?;
    m.add_function(wrap_pyfunction!(beta_kgroups, m)?)?;
    m.add_function(wrap_pyfunction!(cli, m)?)?;
    Ok(())
}
