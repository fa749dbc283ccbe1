//! Per-analogy subspace selection.
//!
//! Given `A:B::C:D`, the dimensions where A, B and C all carry weight are
//! gathered, L1-normalized per word, filtered to the `k1` dimensions with the
//! highest mean normalized weight, and finally narrowed to the `k2`
//! dimensions where `(A - B) - (C - D)` is closest to zero.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::BaseSpace;

pub const DEFAULT_K1: usize = 200;
pub const DEFAULT_K2: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SupportMode {
    /// Dimensions stored for all of A, B and C.
    #[default]
    Intersection,
    /// Dimensions stored for any of A, B and C.
    Union,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitMode {
    /// Score the offset fit on the PMI weights themselves.
    #[default]
    Raw,
    /// Score on L1-normalized weights over the gathered dimensions.
    Normalized,
}

/// `A:B::C:D`, read as `B - A ≈ D - C`. `d` may be withheld.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AnalogyQuery {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: Option<String>,
}

impl AnalogyQuery {
    pub fn new(a: &str, b: &str, c: &str, d: Option<&str>) -> Result<Self> {
        let q = AnalogyQuery {
            a: a.to_owned(),
            b: b.to_owned(),
            c: c.to_owned(),
            d: d.map(str::to_owned),
        };
        let words = q.words();
        for (i, w) in words.iter().enumerate() {
            if words[..i].contains(w) {
                return Err(Error::InvalidArgument(format!(
                    "analogy repeats the word {w:?}"
                )));
            }
        }
        Ok(q)
    }

    /// The supplied words in A, B, C, D order.
    pub fn words(&self) -> Vec<&str> {
        let mut w = vec![self.a.as_str(), self.b.as_str(), self.c.as_str()];
        if let Some(d) = &self.d {
            w.push(d);
        }
        w
    }
}

impl std::fmt::Display for AnalogyQuery {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}:{}::{}:{}",
            self.a,
            self.b,
            self.c,
            self.d.as_deref().unwrap_or("?")
        )
    }
}

/// Query words mapped to target ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryIds {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: Option<u32>,
}

impl QueryIds {
    pub fn resolve(space: &BaseSpace, query: &AnalogyQuery) -> Result<Self> {
        let ids = space.resolve(&query.words())?;
        Ok(QueryIds {
            a: ids[0],
            b: ids[1],
            c: ids[2],
            d: ids.get(3).copied(),
        })
    }

    pub fn abc(&self) -> [u32; 3] {
        [self.a, self.b, self.c]
    }
}

fn intersect(x: &[u32], y: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < x.len() && j < y.len() {
        match x[i].cmp(&y[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                out.push(x[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn union(x: &[u32], y: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(x.len() + y.len());
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i] <= y[j]);
        let take_y = i >= x.len() || (j < y.len() && y[j] <= x[i]);
        if take_x && take_y {
            out.push(x[i]);
            i += 1;
            j += 1;
        } else if take_x {
            out.push(x[i]);
            i += 1;
        } else {
            out.push(y[j]);
            j += 1;
        }
    }
    out
}

/// Context ids supported by the given words, ascending.
pub fn gather_shared_dims(space: &BaseSpace, words: &[u32], mode: SupportMode) -> Result<Vec<u32>> {
    let combine = match mode {
        SupportMode::Intersection => intersect,
        SupportMode::Union => union,
    };
    let mut dims: Option<Vec<u32>> = None;
    for &w in words {
        let ids = space.row(w).0;
        dims = Some(match dims {
            None => ids.to_vec(),
            Some(acc) => combine(&acc, ids),
        });
    }
    let dims = dims.unwrap_or_default();
    if dims.is_empty() {
        return Err(Error::NoSharedContext {
            words: words
                .iter()
                .map(|&w| space.target_vocab().word(w).to_owned())
                .collect(),
        });
    }
    Ok(dims)
}

/// Dense raw PMI rows of `words` over `dims`.
pub fn dense_rows(space: &BaseSpace, words: &[u32], dims: &[u32]) -> Vec<Vec<f64>> {
    words
        .iter()
        .map(|&w| dims.iter().map(|&c| space.value(w, c)).collect())
        .collect()
}

/// Scale each row so its entries sum to one.
pub fn l1_normalize(rows: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let sum: f64 = row.iter().map(|v| v.abs()).sum();
            if !(sum > 0.0 && sum.is_finite()) {
                return Err(Error::DegenerateRow { row: i });
            }
            Ok(row.iter().map(|v| v / sum).collect())
        })
        .collect()
}

/// Deterministic top-k: best score first under `order`, ties by ascending id.
fn top_k(mut scored: Vec<(u32, f64)>, k: usize, higher_first: bool) -> Vec<(u32, f64)> {
    let cmp = |x: &(u32, f64), y: &(u32, f64)| {
        let by_score = if higher_first {
            y.1.total_cmp(&x.1)
        } else {
            x.1.total_cmp(&y.1)
        };
        by_score.then(x.0.cmp(&y.0))
    };
    if k < scored.len() {
        if k == 0 {
            return Vec::new();
        }
        scored.select_nth_unstable_by(k - 1, cmp);
        scored.truncate(k);
    }
    scored.sort_unstable_by(cmp);
    scored
}

/// Mean of one column across rows, summed in row order.
pub fn column_mean(rows: &[Vec<f64>], i: usize) -> f64 {
    rows.iter().map(|r| r[i]).sum::<f64>() / rows.len() as f64
}

/// The `k1` dimensions with the highest mean normalized weight. `rows[r][i]`
/// is the weight of word `r` on `dims[i]`.
pub fn select_context_dims(rows: &[Vec<f64>], dims: &[u32], k1: usize) -> Vec<u32> {
    let scored = dims
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, column_mean(rows, i)))
        .collect();
    top_k(scored, k1, true)
        .into_iter()
        .map(|(c, _)| c)
        .collect()
}

/// Squared mismatch between the `A - B` and `C - D` offsets on one dimension.
pub fn analogical_fit(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let r = (a - b) - (c - d);
    r * r
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoredDim {
    pub dim: u32,
    pub fit: f64,
}

/// Rank pre-scored dimensions by ascending fit and keep `k2`.
pub fn lowest_fit(scored: Vec<(u32, f64)>, k2: usize) -> Vec<ScoredDim> {
    top_k(scored, k2, false)
        .into_iter()
        .map(|(dim, fit)| ScoredDim { dim, fit })
        .collect()
}

/// The `k2` candidates with the best raw-weight offset fit. D is required;
/// its weight is 0 wherever it has no entry.
pub fn select_analogy_dims(
    space: &BaseSpace,
    ids: &QueryIds,
    candidates: &[u32],
    k2: usize,
) -> Result<Vec<ScoredDim>> {
    let d = ids.d.ok_or_else(|| {
        Error::InvalidArgument("dimension selection needs the fourth word".into())
    })?;
    let scored = candidates
        .iter()
        .map(|&c| {
            let fit = analogical_fit(
                space.value(ids.a, c),
                space.value(ids.b, c),
                space.value(ids.c, c),
                space.value(d, c),
            );
            (c, fit)
        })
        .collect();
    Ok(lowest_fit(scored, k2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionParams {
    pub k1: usize,
    pub k2: usize,
    pub support: SupportMode,
    pub fit: FitMode,
}

impl Default for SelectionParams {
    fn default() -> Self {
        SelectionParams {
            k1: DEFAULT_K1,
            k2: DEFAULT_K2,
            support: SupportMode::default(),
            fit: FitMode::default(),
        }
    }
}

/// Intermediate products of dimension selection for one query.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    /// Dimensions supported by A, B and C.
    pub gathered: Vec<u32>,
    /// The `k1` highest-mean dimensions, best first.
    pub candidates: Vec<u32>,
    /// The `k2` best-fitting candidates, best first. Empty when D is withheld.
    pub selected: Vec<ScoredDim>,
}

/// Gather, normalize and run both selection stages.
pub fn select_dimensions(
    space: &BaseSpace,
    ids: &QueryIds,
    params: &SelectionParams,
) -> Result<Selection> {
    let abc = ids.abc();
    let gathered = gather_shared_dims(space, &abc, params.support)?;
    let normalized = l1_normalize(&dense_rows(space, &abc, &gathered))?;
    let candidates = select_context_dims(&normalized, &gathered, params.k1);
    let selected = match (ids.d, params.fit) {
        (None, _) => Vec::new(),
        (Some(_), FitMode::Raw) => select_analogy_dims(space, ids, &candidates, params.k2)?,
        (Some(d), FitMode::Normalized) => {
            let pos: HashMap<u32, usize> =
                gathered.iter().enumerate().map(|(i, &c)| (c, i)).collect();
            let d_row = &dense_rows(space, &[d], &gathered)[0];
            let d_sum: f64 = d_row.iter().sum();
            let scored = candidates
                .iter()
                .map(|c| {
                    let i = pos[c];
                    let dv = if d_sum > 0.0 { d_row[i] / d_sum } else { 0.0 };
                    (
                        *c,
                        analogical_fit(normalized[0][i], normalized[1][i], normalized[2][i], dv),
                    )
                })
                .collect();
            lowest_fit(scored, params.k2)
        }
    };
    Ok(Selection {
        gathered,
        candidates,
        selected,
    })
}

/// Dense raw-PMI coordinates of a word set over a fixed list of dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    dims: Vec<u32>,
    words: Vec<u32>,
    coords: Vec<f64>,
    position: HashMap<u32, usize>,
}

impl Subspace {
    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn dim_count(&self) -> usize {
        self.dims.len()
    }

    /// Projected words, in the order they were requested.
    pub fn words(&self) -> &[u32] {
        &self.words
    }

    pub fn coords_of(&self, word: u32) -> Option<&[f64]> {
        self.position.get(&word).map(|&i| self.row_at(i))
    }

    pub(crate) fn row_at(&self, i: usize) -> &[f64] {
        let k = self.dims.len();
        &self.coords[i * k..(i + 1) * k]
    }

    /// Multiply every coordinate by `factor`.
    pub fn scaled(&self, factor: f64) -> Subspace {
        let mut s = self.clone();
        s.coords.iter_mut().for_each(|v| *v *= factor);
        s
    }
}

/// Read each word's raw weights on `dims`; absent cells become 0.
pub fn project(space: &BaseSpace, dims: &[u32], words: &[u32]) -> Subspace {
    let mut coords = Vec::with_capacity(dims.len() * words.len());
    for &w in words {
        let (ids, vals) = space.row(w);
        for c in dims {
            coords.push(ids.binary_search(c).map(|i| vals[i]).unwrap_or(0.0));
        }
    }
    let mut position = HashMap::with_capacity(words.len());
    for (i, &w) in words.iter().enumerate() {
        position.entry(w).or_insert(i);
    }
    Subspace {
        dims: dims.to_vec(),
        words: words.to_vec(),
        coords,
        position,
    }
}
