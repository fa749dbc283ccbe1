//! The sparse PMI base space and its on-disk format.

mod format;

pub use format::{load_space, read_space, save_space, write_space, FORMAT_VERSION, MAGIC};

use serde::{Deserialize, Serialize};

use crate::corpus::{count_cooccurrences, count_types, CooccurrenceTable, TokenStream, Vocabulary};
use crate::error::{Error, Result};
use crate::sparse::SparseRows;

/// Smoothing constant used for a full Wikipedia-sized corpus.
pub const REFERENCE_SMOOTHING: f64 = 10_000.0;
/// In-vocabulary token count the reference smoothing was tuned for.
pub const REFERENCE_TOKENS: f64 = 2.0e9;

/// Scale the reference smoothing constant to a corpus with `total_in_vocab`
/// target-word occurrences, rounded to a whole count.
pub fn scaled_smoothing(total_in_vocab: u64) -> f64 {
    (REFERENCE_SMOOTHING * total_in_vocab as f64 / REFERENCE_TOKENS).round()
}

/// Smoothed, shifted PMI of one cell:
/// `log2(n_wc * W / (n_w * (n_c + a)) + 1)`.
pub fn pmi_value(n_wc: u64, n_w: u64, n_c: u64, total: u64, a: f64) -> f64 {
    let ratio = (n_wc as f64 * total as f64) / (n_w as f64 * (n_c as f64 + a));
    ratio.ln_1p() / std::f64::consts::LN_2
}

/// Immutable sparse matrix of non-negative PMI weights, one row per target
/// word and one column per context word. Unstored cells are 0.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseSpace {
    rows: SparseRows<f64>,
    smoothing_a: f64,
    window: usize,
    target_vocab: Vocabulary,
    context_vocab: Vocabulary,
}

impl BaseSpace {
    /// Assemble a space from explicit parts, checking the shape and that
    /// every stored value is positive and finite.
    pub fn new(
        rows: SparseRows<f64>,
        smoothing_a: f64,
        window: usize,
        target_vocab: Vocabulary,
        context_vocab: Vocabulary,
    ) -> Result<Self> {
        if rows.n_rows() != target_vocab.len() {
            return Err(Error::InvalidArgument(format!(
                "{} rows for {} target words",
                rows.n_rows(),
                target_vocab.len()
            )));
        }
        if rows
            .indices()
            .iter()
            .any(|&c| c as usize >= context_vocab.len())
        {
            return Err(Error::InvalidArgument("context id out of range".into()));
        }
        if (0..rows.n_rows()).any(|r| rows.row(r).0.windows(2).any(|w| w[0] >= w[1])) {
            return Err(Error::InvalidArgument(
                "row ids must be strictly increasing".into(),
            ));
        }
        if rows.values().iter().any(|v| !(*v > 0.0 && v.is_finite())) {
            return Err(Error::InvalidArgument(
                "stored values must be positive and finite".into(),
            ));
        }
        Ok(Self::from_parts(
            rows,
            smoothing_a,
            window,
            target_vocab,
            context_vocab,
        ))
    }

    pub(crate) fn from_parts(
        rows: SparseRows<f64>,
        smoothing_a: f64,
        window: usize,
        target_vocab: Vocabulary,
        context_vocab: Vocabulary,
    ) -> Self {
        BaseSpace {
            rows,
            smoothing_a,
            window,
            target_vocab,
            context_vocab,
        }
    }

    pub fn rows(&self) -> &SparseRows<f64> {
        &self.rows
    }

    pub fn row(&self, word: u32) -> (&[u32], &[f64]) {
        self.rows.row(word as usize)
    }

    /// Stored value, or 0 for an absent cell.
    pub fn value(&self, word: u32, context: u32) -> f64 {
        self.rows.get(word as usize, context).unwrap_or(0.0)
    }

    pub fn smoothing_a(&self) -> f64 {
        self.smoothing_a
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn target_vocab(&self) -> &Vocabulary {
        &self.target_vocab
    }

    pub fn context_vocab(&self) -> &Vocabulary {
        &self.context_vocab
    }

    pub fn nnz(&self) -> usize {
        self.rows.nnz()
    }

    /// Every (word, value) stored on one context dimension, in word-id order.
    pub fn column(&self, context: u32) -> Vec<(u32, f64)> {
        (0..self.rows.n_rows())
            .filter_map(|w| self.rows.get(w, context).map(|v| (w as u32, v)))
            .collect()
    }

    /// Resolve words to target ids, reporting every miss at once.
    pub fn resolve<S: AsRef<str>>(&self, words: &[S]) -> Result<Vec<u32>> {
        let mut ids = Vec::with_capacity(words.len());
        let mut missing = Vec::new();
        for w in words {
            match self.target_vocab.id(w.as_ref()) {
                Some(id) => ids.push(id),
                None => missing.push(w.as_ref().to_owned()),
            }
        }
        if missing.is_empty() {
            Ok(ids)
        } else {
            Err(Error::OutOfVocabulary { words: missing })
        }
    }
}

/// Turn co-occurrence counts into PMI weights with smoothing constant `a`.
pub fn weight_pmi(table: &CooccurrenceTable, smoothing_a: f64) -> Result<BaseSpace> {
    if !(smoothing_a >= 0.0 && smoothing_a.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "smoothing constant must be finite and >= 0, got {smoothing_a}"
        )));
    }
    let tv = table.target_vocab();
    let cv = table.context_vocab();
    let total = tv.total_in_vocab();
    let counts = table.counts();
    for w in 0..counts.n_rows() {
        if counts.row_len(w) > 0 && tv.freq(w as u32) == 0 {
            return Err(Error::Inconsistent(format!(
                "target {} has n_w = 0",
                tv.word(w as u32)
            )));
        }
    }
    if let Some(&c) = counts.indices().iter().find(|&&c| c as usize >= cv.len()) {
        return Err(Error::Inconsistent(format!(
            "context id {c} outside context vocabulary"
        )));
    }
    let rows = counts
        .map_values(|w, c, n| pmi_value(n, tv.freq(w as u32), cv.freq(c), total, smoothing_a));
    Ok(BaseSpace::from_parts(
        rows,
        smoothing_a,
        table.window(),
        tv.clone(),
        cv.clone(),
    ))
}

/// Corpus-to-space settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BuildParams {
    pub vocab_size: usize,
    pub context_min_count: u64,
    pub window: usize,
    /// None selects [`scaled_smoothing`] for the corpus.
    pub smoothing_a: Option<f64>,
}

impl Default for BuildParams {
    fn default() -> Self {
        BuildParams {
            vocab_size: 200_000,
            context_min_count: 1,
            window: 5,
            smoothing_a: None,
        }
    }
}

/// Vocabularies, counts and PMI weights for a token stream.
pub fn build_space(tokens: &TokenStream, params: &BuildParams) -> Result<BaseSpace> {
    if params.vocab_size == 0 || params.window == 0 || params.context_min_count == 0 {
        return Err(Error::InvalidArgument(
            "vocab size, window and context min count must be positive".into(),
        ));
    }
    let types = count_types(tokens);
    let target = Vocabulary::from_counts(types.clone(), params.vocab_size, 1);
    let context = Vocabulary::from_counts(types, usize::MAX, params.context_min_count);
    let table = count_cooccurrences(tokens, &target, &context, params.window);
    let a = params
        .smoothing_a
        .unwrap_or_else(|| scaled_smoothing(target.total_in_vocab()));
    weight_pmi(&table, a)
}
