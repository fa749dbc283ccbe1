//! Diagnostics for selected subspaces: ranked per-dimension value curves and
//! shape measurements of the analogy parallelogram.
//!
//! Shape metrics, for points A, B, C, D in `n >= 2` dimensions:
//!
//! * `closure_abs` = `|(B - A + C) - D|`
//! * `closure_rel` = `closure_abs / mean(|B - A|, |D - C|)` (0 when both
//!   edges vanish, in which case `closure_abs` is 0 too)
//! * `flatness` = `s3 / s1`, singular values of the 4 x n matrix of
//!   centred points (0 is planar; defined as 0 for n = 2)
//! * `centrality` = angle in degrees between the centroid's line and the
//!   all-ones diagonal
//! * `obliqueness` = angle in degrees between the diagonal and the normal
//!   space of the best-fit plane (spanned by the top two right singular
//!   vectors): `asin(|P u|)` for the unit diagonal `u` and plane projector
//!   `P`. 0 means the figure is perpendicular to the diagonal. In three
//!   dimensions this equals the angle between the plane normal and the
//!   diagonal.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::projection::QueryIds;
use crate::space::BaseSpace;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramEntry {
    pub rank: usize,
    pub word: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Highlight {
    pub word: String,
    /// None when the word has no value on the dimension (implied value 0).
    pub rank: Option<usize>,
    pub value: f64,
}

/// Every word with a stored value on one dimension, ascending by value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionHistogram {
    pub dim: u32,
    pub dim_label: String,
    pub ranked: Vec<HistogramEntry>,
    pub highlights: Vec<Highlight>,
}

impl DimensionHistogram {
    /// `rank\tword\tpmi` rows with a header line.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("rank\tword\tpmi\n");
        for e in &self.ranked {
            out.push_str(&format!("{}\t{}\t{}\n", e.rank, e.word, e.value));
        }
        out
    }

    /// Sidecar describing the dimension and the highlighted words.
    pub fn sidecar_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "dim_label": self.dim_label,
            "entries": self.ranked.len(),
            "highlights": self.highlights,
        })
    }
}

/// Context id of a dimension given by its word label.
pub fn dimension_id(space: &BaseSpace, label: &str) -> Result<u32> {
    space
        .context_vocab()
        .id(label)
        .ok_or_else(|| Error::UnknownDimension(label.to_owned()))
}

pub fn dimension_histogram<S: AsRef<str>>(
    space: &BaseSpace,
    dim: u32,
    highlight: &[S],
) -> Result<DimensionHistogram> {
    if dim as usize >= space.context_vocab().len() {
        return Err(Error::UnknownDimension(dim.to_string()));
    }
    let mut column = space.column(dim);
    // column is in word-id order, so a stable sort keeps ties by id
    column.sort_by(|x, y| x.1.total_cmp(&y.1));
    let tv = space.target_vocab();
    let ranked: Vec<HistogramEntry> = column
        .iter()
        .enumerate()
        .map(|(rank, &(w, value))| HistogramEntry {
            rank,
            word: tv.word(w).to_owned(),
            value,
        })
        .collect();
    let highlights = highlight
        .iter()
        .map(|h| {
            let h = h.as_ref();
            let pos = tv
                .id(h)
                .and_then(|id| column.iter().position(|&(w, _)| w == id));
            Highlight {
                word: h.to_owned(),
                rank: pos,
                value: pos.map_or(0.0, |p| column[p].1),
            }
        })
        .collect();
    Ok(DimensionHistogram {
        dim,
        dim_label: space.context_vocab().word(dim).to_owned(),
        ranked,
        highlights,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParallelogramReport {
    pub closure_abs: f64,
    pub closure_rel: f64,
    pub flatness: f64,
    pub centrality: f64,
    pub obliqueness: f64,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn diff(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

/// Singular values and right singular vectors of the matrix whose rows are
/// `rows`, largest first, by one-sided Jacobi rotations among the rows.
fn singular_rows(mut rows: Vec<Vec<f64>>) -> Vec<(f64, Vec<f64>)> {
    let m = rows.len();
    for _sweep in 0..100 {
        let mut rotated = false;
        for p in 0..m {
            for q in p + 1..m {
                let alpha: f64 = rows[p].iter().map(|x| x * x).sum();
                let beta: f64 = rows[q].iter().map(|x| x * x).sum();
                let gamma: f64 = rows[p].iter().zip(&rows[q]).map(|(x, y)| x * y).sum();
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (lo, hi) = rows.split_at_mut(q);
                for (x, y) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                    let (xp, yq) = (*x, *y);
                    *x = c * xp - s * yq;
                    *y = s * xp + c * yq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut out: Vec<(f64, Vec<f64>)> = rows
        .into_iter()
        .map(|r| {
            let sigma = norm(&r);
            let v = if sigma > 0.0 {
                r.iter().map(|x| x / sigma).collect()
            } else {
                r
            };
            (sigma, v)
        })
        .collect();
    out.sort_by(|x, y| y.0.total_cmp(&x.0));
    out
}

/// `(|(B - A + C) - D|, closure_rel)`.
pub fn closure(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> (f64, f64) {
    let residual: Vec<f64> = (0..a.len()).map(|i| (b[i] - a[i] + c[i]) - d[i]).collect();
    let abs = norm(&residual);
    let mean_edge = 0.5 * (norm(&diff(b, a)) + norm(&diff(d, c)));
    let rel = if mean_edge > 0.0 {
        abs / mean_edge
    } else {
        0.0
    };
    (abs, rel)
}

fn angle_deg(cos: f64) -> f64 {
    cos.abs().clamp(0.0, 1.0).acos().to_degrees()
}

pub fn parallelogram_metrics(
    a: &[f64],
    b: &[f64],
    c: &[f64],
    d: &[f64],
) -> Result<ParallelogramReport> {
    let n = a.len();
    if n < 2 || [b, c, d].iter().any(|v| v.len() != n) {
        return Err(Error::InvalidArgument(format!(
            "need four points of equal dimension >= 2, got {:?}",
            [a.len(), b.len(), c.len(), d.len()]
        )));
    }
    let points = [a, b, c, d];
    if points.iter().any(|p| p.iter().any(|x| !x.is_finite())) {
        return Err(Error::InvalidArgument("non-finite coordinate".into()));
    }
    let centroid: Vec<f64> = (0..n)
        .map(|i| points.iter().map(|p| p[i]).sum::<f64>() / 4.0)
        .collect();
    let centered: Vec<Vec<f64>> = points.iter().map(|p| diff(p, &centroid)).collect();
    let basis = singular_rows(centered);
    let sv = |k: usize| basis.get(k).map_or(0.0, |b| b.0);
    if sv(0) == 0.0 {
        return Err(Error::DegenerateFigure("all four points coincide".into()));
    }
    let c_norm = norm(&centroid);
    if c_norm == 0.0 {
        return Err(Error::DegenerateFigure("centroid at the origin".into()));
    }
    let diag = 1.0 / (n as f64).sqrt();

    let (closure_abs, closure_rel) = closure(a, b, c, d);
    let flatness = if n == 2 { 0.0 } else { sv(2) / sv(0) };
    let centrality = angle_deg(centroid.iter().sum::<f64>() * diag / c_norm);
    // u = P u + r; the angle is atan2(|P u|, |r|), stable near 90 degrees.
    let mut residual = vec![diag; n];
    let mut in_plane = 0.0;
    for (sigma, v) in basis.iter().take(2) {
        if *sigma <= 1e-12 * sv(0) {
            continue;
        }
        let dot: f64 = v.iter().sum::<f64>() * diag;
        in_plane += dot * dot;
        for (r, x) in residual.iter_mut().zip(v) {
            *r -= dot * x;
        }
    }
    let obliqueness = in_plane.sqrt().atan2(norm(&residual)).to_degrees();

    Ok(ParallelogramReport {
        closure_abs,
        closure_rel,
        flatness,
        centrality,
        obliqueness,
    })
}

fn coords(space: &BaseSpace, word: u32, dims: &[u32]) -> Vec<f64> {
    dims.iter().map(|&c| space.value(word, c)).collect()
}

/// Raw-PMI coordinates of A, B, C, D on `dims`.
pub fn analogy_points(space: &BaseSpace, ids: &QueryIds, dims: &[u32]) -> Result<[Vec<f64>; 4]> {
    let d = ids
        .d
        .ok_or_else(|| Error::InvalidArgument("geometry needs all four words".into()))?;
    Ok([ids.a, ids.b, ids.c, d].map(|w| coords(space, w, dims)))
}

/// Relative closure error of the analogy on `dims`.
pub fn closure_rel_on(space: &BaseSpace, ids: &QueryIds, dims: &[u32]) -> Result<f64> {
    let [a, b, c, d] = analogy_points(space, ids, dims)?;
    Ok(closure(&a, &b, &c, &d).1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomBaseline {
    pub selected_closure_rel: f64,
    pub random_closure_rel: Vec<f64>,
    pub random_median: f64,
    /// Selected closure strictly below the random median.
    pub selected_better: bool,
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

/// Compare the closure error on `selected` with `draws` uniformly random
/// `selected.len()`-subsets of `candidates`.
pub fn random_baseline(
    space: &BaseSpace,
    ids: &QueryIds,
    selected: &[u32],
    candidates: &[u32],
    draws: usize,
    seed: u64,
) -> Result<RandomBaseline> {
    let k = selected.len().min(candidates.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random = Vec::with_capacity(draws);
    for _ in 0..draws {
        let dims: Vec<u32> = sample(&mut rng, candidates.len(), k)
            .into_iter()
            .map(|i| candidates[i])
            .collect();
        random.push(closure_rel_on(space, ids, &dims)?);
    }
    let selected_closure_rel = closure_rel_on(space, ids, selected)?;
    let random_median = median(random.clone());
    Ok(RandomBaseline {
        selected_closure_rel,
        selected_better: selected_closure_rel < random_median,
        random_closure_rel: random,
        random_median,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::space_from_rows;

    #[test]
    fn jacobi_singular_values() {
        let rows = vec![
            vec![0.0, 3.0, 0.0],
            vec![4.0, 0.0, 0.0],
            vec![0.0; 3],
            vec![0.0; 3],
        ];
        let sv = singular_rows(rows);
        assert_eq!(sv[0], (4.0, vec![1.0, 0.0, 0.0]));
        assert_eq!(sv[1], (3.0, vec![0.0, 1.0, 0.0]));

        // rows of a rank-one matrix plus an orthogonal row: [1,1]*k and [1,-1]
        let rows = vec![
            vec![1.0, 1.0],
            vec![2.0, 2.0],
            vec![1.0, -1.0],
            vec![0.0, 0.0],
        ];
        let sv = singular_rows(rows);
        assert!((sv[0].0 - 10f64.sqrt()).abs() < 1e-12);
        assert!((sv[1].0 - 2f64.sqrt()).abs() < 1e-12);
        assert!(sv[2].0.abs() < 1e-12);
        let dot: f64 = sv[0].1.iter().zip(&sv[1].1).map(|(x, y)| x * y).sum();
        assert!(dot.abs() < 1e-12);
    }

    #[test]
    fn unit_square() {
        let r = parallelogram_metrics(
            &[0.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0],
            &[1.0, 1.0, 0.0],
        )
        .unwrap();
        assert_eq!(r.closure_abs, 0.0);
        assert_eq!(r.closure_rel, 0.0);
        assert!(r.flatness.abs() < 1e-12);
    }

    #[test]
    fn two_dimensional_is_flat() {
        let r = parallelogram_metrics(&[1.0, 0.0], &[2.0, 0.0], &[1.0, 1.0], &[2.0, 1.5]).unwrap();
        assert_eq!(r.flatness, 0.0);
        assert!((r.closure_abs - 0.5).abs() < 1e-12);
        assert!((r.obliqueness - 90.0).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn perpendicular_square_has_zero_obliqueness() {
        // square in the plane x + y + z = 3, spanned by (1,-1,0) and (1,1,-2)
        let p = |s: f64, t: f64| vec![1.0 + s + t, 1.0 - s + t, 1.0 - 2.0 * t];
        let r =
            parallelogram_metrics(&p(0.0, 0.0), &p(0.5, 0.0), &p(0.0, 0.3), &p(0.5, 0.3)).unwrap();
        assert!(r.obliqueness < 1e-6, "{}", r.obliqueness);
        assert!(r.centrality < 20.0);
    }

    #[test]
    fn coincident_points_rejected() {
        let p = [1.0, 2.0, 3.0];
        assert!(matches!(
            parallelogram_metrics(&p, &p, &p, &p),
            Err(Error::DegenerateFigure(_))
        ));
        assert!(parallelogram_metrics(&[1.0], &[2.0], &[3.0], &[4.0]).is_err());
    }

    #[test]
    fn histogram_sorting_and_highlights() {
        let s = space_from_rows(&[&[(0, 2.0)], &[(0, 1.0)], &[(1, 1.0)]], 3);
        let h = dimension_histogram(&s, 0, &["w000000", "w000002", "nope"]).unwrap();
        let words: Vec<_> = h
            .ranked
            .iter()
            .map(|e| (e.rank, e.word.as_str(), e.value))
            .collect();
        assert_eq!(words, [(0, "w000001", 1.0), (1, "w000000", 2.0)]);
        assert_eq!(h.highlights[0].rank, Some(1));
        assert_eq!(h.highlights[1].rank, None);
        assert_eq!(h.highlights[1].value, 0.0);
        assert_eq!(h.highlights[2].rank, None);
        assert!(dimension_histogram(&s, 2, &[] as &[&str])
            .unwrap()
            .ranked
            .is_empty());
        assert!(matches!(
            dimension_histogram(&s, 3, &[] as &[&str]),
            Err(Error::UnknownDimension(_))
        ));
        assert!(h.to_tsv().starts_with("rank\tword\tpmi\n0\tw000001\t1\n"));
    }

    #[test]
    fn median_even_odd() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
