use serde::{Deserialize, Serialize};

use crate::analogy::{complete_analogy, Completion, CompletionOptions};
use crate::error::Result;
use crate::projection::{
    project, select_dimensions, AnalogyQuery, QueryIds, Selection, SelectionParams, Subspace,
};
use crate::space::BaseSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PipelineParams {
    pub selection: SelectionParams,
    pub completion: CompletionOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOutcome {
    pub ids: QueryIds,
    pub selection: Selection,
    pub subspace: Subspace,
    pub completion: Completion,
    /// `Some(predicted == d)` when D was supplied.
    pub matched: Option<bool>,
    /// True when D was withheld and completion ran over the `k1`
    /// mean-relevance dimensions instead of the `k2` fitted ones.
    pub without_d: bool,
}

/// Select the analogy subspace, project the whole target vocabulary onto it
/// and complete `A:B::C:?` with D withheld from the completion step.
pub fn run_pipeline(
    space: &BaseSpace,
    query: &AnalogyQuery,
    params: &PipelineParams,
) -> Result<PipelineOutcome> {
    let ids = QueryIds::resolve(space, query)?;
    let selection = select_dimensions(space, &ids, &params.selection)?;
    let without_d = ids.d.is_none();
    let dims: Vec<u32> = if without_d {
        selection.candidates.clone()
    } else {
        selection.selected.iter().map(|s| s.dim).collect()
    };
    let vocab: Vec<u32> = (0..space.target_vocab().len() as u32).collect();
    let subspace = project(space, &dims, &vocab);
    let completion = complete_analogy(&subspace, ids.a, ids.b, ids.c, None, &params.completion)?;
    let matched = ids.d.map(|d| completion.predicted == d);
    Ok(PipelineOutcome {
        ids,
        selection,
        subspace,
        completion,
        matched,
        without_d,
    })
}
