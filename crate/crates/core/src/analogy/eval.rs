use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analogy::{run_pipeline, PipelineParams, TestItem};
use crate::error::Error;
use crate::space::BaseSpace;

/// Which test items to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct EvalOptions {
    /// Draw this many items uniformly without replacement (kept in file
    /// order) before applying `limit`.
    pub sample_size: Option<usize>,
    pub seed: u64,
    /// Run only the first `limit` items.
    pub limit: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OovSkip {
    pub line: usize,
    pub query: String,
    pub missing: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub line: usize,
    pub section: Option<String>,
    pub query: String,
    /// None when the pipeline could not produce a prediction.
    pub predicted: Option<String>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub params: PipelineParams,
    pub options: EvalOptions,
    pub total: usize,
    pub oov_skipped: usize,
    pub oov: Vec<OovSkip>,
    pub attempted: usize,
    pub correct: usize,
    pub failures: Vec<Failure>,
    /// `correct / attempted`; None when nothing was attempted.
    pub accuracy: Option<f64>,
    pub accuracy_defined: bool,
    /// Source line of every evaluated item, in evaluation order.
    pub evaluated_lines: Vec<usize>,
}

impl EvalReport {
    /// `total = oov_skipped + attempted` and `attempted = correct + failures`.
    pub fn is_consistent(&self) -> bool {
        self.total == self.oov_skipped + self.attempted
            && self.attempted == self.correct + self.failures.len()
            && self.oov.len() == self.oov_skipped
            && self.accuracy.is_none_or(|a| (0.0..=1.0).contains(&a))
    }
}

enum Outcome {
    Correct,
    Oov(Vec<String>),
    Wrong(Option<String>, Option<String>),
}

/// Analogies whose four words all occur at least `min_count` times in the
/// corpus (context-vocabulary frequencies).
pub fn frequent_items(space: &BaseSpace, items: &[TestItem], min_count: u64) -> Vec<TestItem> {
    let cv = space.context_vocab();
    items
        .iter()
        .filter(|it| {
            it.query
                .words()
                .iter()
                .all(|w| cv.id(w).is_some_and(|id| cv.freq(id) >= min_count))
        })
        .cloned()
        .collect()
}

/// Pick the items an evaluation run covers.
pub fn choose_items<'a>(items: &'a [TestItem], opts: &EvalOptions) -> Vec<&'a TestItem> {
    let mut chosen: Vec<&TestItem> = match opts.sample_size {
        Some(n) if n < items.len() => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut idx = sample(&mut rng, items.len(), n).into_vec();
            idx.sort_unstable();
            idx.into_iter().map(|i| &items[i]).collect()
        }
        _ => items.iter().collect(),
    };
    if let Some(limit) = opts.limit {
        chosen.truncate(limit);
    }
    chosen
}

/// Run the full pipeline on each chosen item. Items with an
/// out-of-vocabulary word are skipped and listed; any other per-item error
/// counts as a failure.
pub fn evaluate_testset(
    space: &BaseSpace,
    items: &[TestItem],
    params: &PipelineParams,
    opts: &EvalOptions,
) -> EvalReport {
    let chosen = choose_items(items, opts);
    let outcomes: Vec<Outcome> = chosen
        .par_iter()
        .map(|item| match run_pipeline(space, &item.query, params) {
            Ok(out) if out.matched == Some(true) => Outcome::Correct,
            Ok(out) => Outcome::Wrong(
                Some(
                    space
                        .target_vocab()
                        .word(out.completion.predicted)
                        .to_owned(),
                ),
                None,
            ),
            Err(Error::OutOfVocabulary { words }) => Outcome::Oov(words),
            Err(e) => Outcome::Wrong(None, Some(e.to_string())),
        })
        .collect();

    let mut report = EvalReport {
        params: *params,
        options: *opts,
        total: chosen.len(),
        oov_skipped: 0,
        oov: Vec::new(),
        attempted: 0,
        correct: 0,
        failures: Vec::new(),
        accuracy: None,
        accuracy_defined: false,
        evaluated_lines: chosen.iter().map(|i| i.line).collect(),
    };
    for (item, outcome) in chosen.iter().zip(outcomes) {
        match outcome {
            Outcome::Correct => {
                report.attempted += 1;
                report.correct += 1;
            }
            Outcome::Oov(missing) => {
                report.oov_skipped += 1;
                report.oov.push(OovSkip {
                    line: item.line,
                    query: item.query.to_string(),
                    missing,
                });
            }
            Outcome::Wrong(predicted, error) => {
                report.attempted += 1;
                report.failures.push(Failure {
                    line: item.line,
                    section: item.section.clone(),
                    query: item.query.to_string(),
                    predicted,
                    error,
                });
            }
        }
    }
    if report.attempted > 0 {
        report.accuracy = Some(report.correct as f64 / report.attempted as f64);
        report.accuracy_defined = true;
    }
    report
}
