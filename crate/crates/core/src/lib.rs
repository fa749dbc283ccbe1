//! Sparse, interpretable PMI word space with per-analogy subspace projection.
//!
//! The flow is corpus -> [`corpus::CooccurrenceTable`] ->
//! [`space::BaseSpace`] -> [`projection::select_dimensions`] ->
//! [`analogy::run_pipeline`], with [`geometry`] for diagnostics.

pub mod analogy;
pub mod cli;
pub mod corpus;
mod error;
pub mod geometry;
pub mod projection;
pub mod space;
pub mod sparse;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
