//! Vector-offset analogy completion inside a projected subspace, and the
//! test-set evaluation protocol built on it.

mod complete;
mod eval;
mod pipeline;
mod testset;

pub use complete::{
    complete_analogy, Completion, CompletionOptions, Metric, NamedCompletion, RankedWord,
};
pub use eval::{
    choose_items, evaluate_testset, frequent_items, EvalOptions, EvalReport, Failure, OovSkip,
};
pub use pipeline::{run_pipeline, PipelineOutcome, PipelineParams};
pub use testset::{parse_testset, parse_testset_file, TestItem};
