//! Python bindings: build or load a PMI space, solve analogies, evaluate
//! test sets and measure parallelogram geometry.

use std::path::PathBuf;

use pmi_subspace::analogy::{
    evaluate_testset, frequent_items, parse_testset_file, run_pipeline, CompletionOptions,
    EvalOptions, Metric, PipelineParams,
};
use pmi_subspace::cli::{outcome_json, space_geometry};
use pmi_subspace::corpus::{read_corpus, tokenize_str, DocDelimiter, TokenStream};
use pmi_subspace::geometry::{dimension_histogram, dimension_id, parallelogram_metrics};
use pmi_subspace::projection::{AnalogyQuery, FitMode, SelectionParams, SupportMode};
use pmi_subspace::space::{build_space, load_space, save_space, BaseSpace, BuildParams};
use pmi_subspace::Error;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde_json::Value;

create_exception!(
    subspace_analogy,
    DomainError,
    PyException,
    "Analogy cannot be processed on this space."
);
create_exception!(
    subspace_analogy,
    OutOfVocabularyError,
    DomainError,
    "A query word is not in the vocabulary."
);

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::OutOfVocabulary { .. } => OutOfVocabularyError::new_err(e.to_string()),
        Error::Io { .. } => PyOSError::new_err(e.to_string()),
        e if e.is_domain() => DomainError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn to_py(py: Python<'_>, value: &Value) -> PyResult<Py<PyAny>> {
    Ok(match value {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_py_any(py)?,
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.into_py_any(py)?,
            (_, Some(i)) => i.into_py_any(py)?,
            _ => n.as_f64().unwrap_or(f64::NAN).into_py_any(py)?,
        },
        Value::String(s) => s.into_py_any(py)?,
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any().unbind()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, v) in map {
                dict.set_item(k, to_py(py, v)?)?;
            }
            dict.into_any().unbind()
        }
    })
}

fn serialize(py: Python<'_>, value: &impl serde::Serialize) -> PyResult<Py<PyAny>> {
    let v = serde_json::to_value(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_py(py, &v)
}

#[allow(clippy::too_many_arguments)]
fn pipeline_params(
    k1: usize,
    k2: usize,
    metric: &str,
    exclude: bool,
    support: &str,
    fit: &str,
    top: usize,
) -> PyResult<PipelineParams> {
    if k1 == 0 || k2 == 0 || top == 0 {
        return Err(PyValueError::new_err("k1, k2 and top must be positive"));
    }
    let metric = match metric {
        "euclidean" => Metric::Euclidean,
        "cosine" => Metric::Cosine,
        m => return Err(PyValueError::new_err(format!("unknown metric {m:?}"))),
    };
    let support = match support {
        "intersection" => SupportMode::Intersection,
        "union" => SupportMode::Union,
        s => return Err(PyValueError::new_err(format!("unknown support mode {s:?}"))),
    };
    let fit = match fit {
        "raw" => FitMode::Raw,
        "normalized" => FitMode::Normalized,
        f => return Err(PyValueError::new_err(format!("unknown fit mode {f:?}"))),
    };
    Ok(PipelineParams {
        selection: SelectionParams {
            k1,
            k2,
            support,
            fit,
        },
        completion: CompletionOptions {
            metric,
            exclude_inputs: exclude,
            top_n: top,
        },
    })
}

fn build_params(
    vocab_size: usize,
    window: usize,
    context_min_count: u64,
    smoothing: Option<f64>,
) -> BuildParams {
    BuildParams {
        vocab_size,
        context_min_count,
        window,
        smoothing_a: smoothing,
    }
}

/// A sparse PMI word space.
#[pyclass(name = "Space", module = "subspace_analogy", frozen)]
pub struct PySpace {
    inner: BaseSpace,
}

#[pymethods]
impl PySpace {
    /// Build from in-memory documents (each string is one document).
    #[staticmethod]
    #[pyo3(signature = (documents, vocab_size=200_000, window=5, context_min_count=1, smoothing=None))]
    fn from_documents(
        py: Python<'_>,
        documents: Vec<String>,
        vocab_size: usize,
        window: usize,
        context_min_count: u64,
        smoothing: Option<f64>,
    ) -> PyResult<Self> {
        let params = build_params(vocab_size, window, context_min_count, smoothing);
        let inner = py
            .detach(|| {
                let docs = documents.iter().map(|d| tokenize_str(d)).collect();
                build_space(&TokenStream::from_documents(docs)?, &params)
            })
            .map_err(to_py_err)?;
        Ok(PySpace { inner })
    }

    /// Build from corpus files or directories (`.gz` files are decompressed).
    #[staticmethod]
    #[pyo3(signature = (paths, vocab_size=200_000, window=5, context_min_count=1, smoothing=None, doc_per_file=false))]
    fn from_files(
        py: Python<'_>,
        paths: Vec<PathBuf>,
        vocab_size: usize,
        window: usize,
        context_min_count: u64,
        smoothing: Option<f64>,
        doc_per_file: bool,
    ) -> PyResult<Self> {
        let params = build_params(vocab_size, window, context_min_count, smoothing);
        let delimiter = if doc_per_file {
            DocDelimiter::Whole
        } else {
            DocDelimiter::Line
        };
        let inner = py
            .detach(|| build_space(&read_corpus(&paths, delimiter)?, &params))
            .map_err(to_py_err)?;
        Ok(PySpace { inner })
    }

    #[staticmethod]
    fn load(py: Python<'_>, path: PathBuf) -> PyResult<Self> {
        let inner = py.detach(|| load_space(&path)).map_err(to_py_err)?;
        Ok(PySpace { inner })
    }

    fn save(&self, py: Python<'_>, path: PathBuf) -> PyResult<()> {
        py.detach(|| save_space(&self.inner, &path))
            .map_err(to_py_err)
    }

    #[getter]
    fn vocab_size(&self) -> usize {
        self.inner.target_vocab().len()
    }

    #[getter]
    fn context_size(&self) -> usize {
        self.inner.context_vocab().len()
    }

    #[getter]
    fn nnz(&self) -> usize {
        self.inner.nnz()
    }

    #[getter]
    fn smoothing(&self) -> f64 {
        self.inner.smoothing_a()
    }

    #[getter]
    fn window(&self) -> usize {
        self.inner.window()
    }

    /// Target words in id order (descending frequency).
    fn words(&self) -> Vec<String> {
        self.inner.target_vocab().words().to_vec()
    }

    /// Corpus frequency of a word, or None when it is not a context word.
    fn frequency(&self, word: &str) -> Option<u64> {
        let cv = self.inner.context_vocab();
        cv.id(word).map(|id| cv.freq(id))
    }

    /// PMI of (word, context); 0 for an unstored cell.
    fn value(&self, word: &str, context: &str) -> PyResult<f64> {
        let w = self.inner.resolve(&[word]).map_err(to_py_err)?[0];
        let c = dimension_id(&self.inner, context).map_err(to_py_err)?;
        Ok(self.inner.value(w, c))
    }

    /// Run the selection and completion pipeline on a:b::c[:d].
    #[pyo3(signature = (a, b, c, d=None, k1=200, k2=20, metric="euclidean", exclude=true, support="intersection", fit="raw", top=10))]
    #[allow(clippy::too_many_arguments)]
    fn solve(
        &self,
        py: Python<'_>,
        a: &str,
        b: &str,
        c: &str,
        d: Option<&str>,
        k1: usize,
        k2: usize,
        metric: &str,
        exclude: bool,
        support: &str,
        fit: &str,
        top: usize,
    ) -> PyResult<Py<PyAny>> {
        let params = pipeline_params(k1, k2, metric, exclude, support, fit, top)?;
        let query = AnalogyQuery::new(a, b, c, d).map_err(to_py_err)?;
        let outcome = py
            .detach(|| run_pipeline(&self.inner, &query, &params))
            .map_err(to_py_err)?;
        to_py(py, &outcome_json(&self.inner, &query, &outcome, &params))
    }

    /// Evaluate a test-set file; returns the report as a dict.
    #[pyo3(signature = (path, min_word_count=None, sample=None, seed=0, limit=None, k1=200, k2=20, metric="euclidean"))]
    #[allow(clippy::too_many_arguments)]
    fn evaluate(
        &self,
        py: Python<'_>,
        path: PathBuf,
        min_word_count: Option<u64>,
        sample: Option<usize>,
        seed: u64,
        limit: Option<usize>,
        k1: usize,
        k2: usize,
        metric: &str,
    ) -> PyResult<Py<PyAny>> {
        let params = pipeline_params(k1, k2, metric, true, "intersection", "raw", 10)?;
        let opts = EvalOptions {
            sample_size: sample,
            seed,
            limit,
        };
        let report = py
            .detach(|| {
                let mut items = parse_testset_file(&path)?;
                if let Some(min) = min_word_count {
                    items = frequent_items(&self.inner, &items, min);
                }
                Ok::<_, Error>(evaluate_testset(&self.inner, &items, &params, &opts))
            })
            .map_err(to_py_err)?;
        serialize(py, &report)
    }

    /// Words ranked by their value on one context dimension.
    #[pyo3(signature = (dim, highlight=Vec::new()))]
    fn dimension_histogram(
        &self,
        py: Python<'_>,
        dim: &str,
        highlight: Vec<String>,
    ) -> PyResult<Py<PyAny>> {
        let id = dimension_id(&self.inner, dim).map_err(to_py_err)?;
        let hist = dimension_histogram(&self.inner, id, &highlight).map_err(to_py_err)?;
        serialize(py, &hist)
    }

    /// Shape metrics of a:b::c:d in its selected subspace, with a random
    /// subspace comparison.
    #[pyo3(signature = (a, b, c, d, random_draws=20, seed=0))]
    #[allow(clippy::too_many_arguments)]
    fn geometry(
        &self,
        py: Python<'_>,
        a: &str,
        b: &str,
        c: &str,
        d: &str,
        random_draws: usize,
        seed: u64,
    ) -> PyResult<Py<PyAny>> {
        let params = PipelineParams::default();
        let query = AnalogyQuery::new(a, b, c, Some(d)).map_err(to_py_err)?;
        let value = py
            .detach(|| space_geometry(&self.inner, &query, &params, random_draws, seed))
            .map_err(to_py_err)?;
        to_py(py, &value)
    }

    fn __repr__(&self) -> String {
        format!(
            "Space(vocab_size={}, context_size={}, nnz={}, window={}, smoothing={})",
            self.vocab_size(),
            self.context_size(),
            self.nnz(),
            self.window(),
            self.smoothing()
        )
    }
}

/// Shape metrics of four explicit points.
#[pyfunction]
#[pyo3(name = "parallelogram_metrics")]
fn py_parallelogram_metrics(
    py: Python<'_>,
    a: Vec<f64>,
    b: Vec<f64>,
    c: Vec<f64>,
    d: Vec<f64>,
) -> PyResult<Py<PyAny>> {
    let report = parallelogram_metrics(&a, &b, &c, &d).map_err(to_py_err)?;
    serialize(py, &report)
}

/// Lowercased word tokens of a string.
#[pyfunction]
fn tokenize(text: &str) -> Vec<String> {
    tokenize_str(text)
}

#[pymodule]
fn subspace_analogy(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpace>()?;
    m.add_function(wrap_pyfunction!(py_parallelogram_metrics, m)?)?;
    m.add_function(wrap_pyfunction!(tokenize, m)?)?;
    m.add("DomainError", m.py().get_type::<DomainError>())?;
    m.add(
        "OutOfVocabularyError",
        m.py().get_type::<OutOfVocabularyError>(),
    )?;
    Ok(())
}
