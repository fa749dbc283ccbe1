use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::corpus::Vocabulary;
use crate::error::{Error, Result};
use crate::projection::Subspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    #[default]
    Euclidean,
    /// `1 - cos(x, t)`. Candidates with a zero vector (or any candidate when
    /// the target point is zero) rank after all others, by ascending id.
    Cosine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionOptions {
    pub metric: Metric,
    pub exclude_inputs: bool,
    pub top_n: usize,
}

impl Default for CompletionOptions {
    fn default() -> Self {
        CompletionOptions {
            metric: Metric::Euclidean,
            exclude_inputs: true,
            top_n: 10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankedWord {
    pub word: u32,
    pub distance: f64,
    /// Set when the cosine distance is undefined for this candidate.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub degenerate: bool,
}

/// Outcome of one `B - A + C` nearest-neighbour lookup.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Completion {
    pub predicted: u32,
    pub target_point: Vec<f64>,
    pub ranked: Vec<RankedWord>,
    pub excluded: Vec<u32>,
}

impl Completion {
    pub fn named(&self, vocab: &Vocabulary) -> NamedCompletion {
        NamedCompletion {
            predicted: vocab.word(self.predicted).to_owned(),
            target_point: self.target_point.clone(),
            ranked_candidates: self
                .ranked
                .iter()
                .map(|r| (vocab.word(r.word).to_owned(), r.distance))
                .collect(),
            excluded: self
                .excluded
                .iter()
                .map(|&w| vocab.word(w).to_owned())
                .collect(),
        }
    }
}

/// [`Completion`] with ids replaced by words, for reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedCompletion {
    pub predicted: String,
    pub target_point: Vec<f64>,
    pub ranked_candidates: Vec<(String, f64)>,
    pub excluded: Vec<String>,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn score(x: &[f64], t: &[f64], t_norm: f64, metric: Metric) -> (bool, f64) {
    match metric {
        Metric::Euclidean => (
            false,
            x.iter()
                .zip(t)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt(),
        ),
        Metric::Cosine => {
            let xn = norm(x);
            if xn == 0.0 || t_norm == 0.0 {
                return (true, 2.0);
            }
            let dot: f64 = x.iter().zip(t).map(|(a, b)| a * b).sum();
            (false, (1.0 - dot / (xn * t_norm)).clamp(0.0, 2.0))
        }
    }
}

fn rank_order(x: &RankedWord, y: &RankedWord) -> Ordering {
    x.degenerate
        .cmp(&y.degenerate)
        .then(x.distance.total_cmp(&y.distance))
        .then(x.word.cmp(&y.word))
}

/// Rank `candidates` (default: every word in the subspace) by distance to
/// `coords(b) - coords(a) + coords(c)`.
pub fn complete_analogy(
    subspace: &Subspace,
    a: u32,
    b: u32,
    c: u32,
    candidates: Option<&[u32]>,
    opts: &CompletionOptions,
) -> Result<Completion> {
    let get = |w: u32| {
        subspace.coords_of(w).ok_or_else(|| {
            Error::InvalidArgument(format!("word id {w} is not projected in the subspace"))
        })
    };
    let (va, vb, vc) = (get(a)?, get(b)?, get(c)?);
    let target: Vec<f64> = va
        .iter()
        .zip(vb)
        .zip(vc)
        .map(|((x, y), z)| y - x + z)
        .collect();
    let t_norm = norm(&target);
    let excluded = if opts.exclude_inputs {
        vec![a, b, c]
    } else {
        Vec::new()
    };

    let pool = candidates.unwrap_or(subspace.words());
    let mut ranked: Vec<RankedWord> = Vec::with_capacity(pool.len());
    for &w in pool {
        if excluded.contains(&w) {
            continue;
        }
        let Some(x) = subspace.coords_of(w) else {
            continue;
        };
        let (degenerate, distance) = score(x, &target, t_norm, opts.metric);
        ranked.push(RankedWord {
            word: w,
            distance,
            degenerate,
        });
    }
    ranked.sort_unstable_by_key(|r| r.word);
    ranked.dedup_by_key(|r| r.word);
    if ranked.is_empty() {
        return Err(Error::NoCandidates);
    }
    let keep = opts.top_n.max(1);
    if keep < ranked.len() {
        ranked.select_nth_unstable_by(keep - 1, rank_order);
        ranked.truncate(keep);
    }
    ranked.sort_unstable_by(rank_order);
    Ok(Completion {
        predicted: ranked[0].word,
        target_point: target,
        ranked,
        excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projection::project;
    use crate::testutil::space_from_rows;

    // words: 0=a 1=b 2=c 3=d 4=other, dims 0,1
    fn square() -> Subspace {
        let s = space_from_rows(
            &[
                &[(0, 1.0), (1, 1.0)],
                &[(0, 2.0), (1, 1.0)],
                &[(0, 1.0), (1, 3.0)],
                &[(0, 2.0), (1, 3.0)],
                &[(0, 5.0)],
            ],
            2,
        );
        project(&s, &[0, 1], &[0, 1, 2, 3, 4])
    }

    #[test]
    fn exact_parallelogram() {
        let r = complete_analogy(&square(), 0, 1, 2, None, &CompletionOptions::default()).unwrap();
        assert_eq!(r.predicted, 3);
        assert_eq!(r.ranked[0].distance, 0.0);
        assert_eq!(r.target_point, [2.0, 3.0]);
        assert!(r.ranked.iter().all(|x| ![0, 1, 2].contains(&x.word)));
        assert!(r.ranked.windows(2).all(|w| w[0].distance <= w[1].distance));
    }

    #[test]
    fn degenerate_offset_without_exclusion() {
        let opts = CompletionOptions {
            exclude_inputs: false,
            ..Default::default()
        };
        let r = complete_analogy(&square(), 0, 0, 2, None, &opts).unwrap();
        assert_eq!(r.predicted, 2);
    }

    #[test]
    fn no_candidates_after_exclusion() {
        let sub = square();
        let err = complete_analogy(
            &sub,
            0,
            1,
            2,
            Some(&[0, 1, 2]),
            &CompletionOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NoCandidates));
    }

    #[test]
    fn cosine_puts_zero_vectors_last() {
        let s = space_from_rows(
            &[
                &[(0, 1.0)],
                &[(0, 2.0)],
                &[(0, 1.0), (1, 1.0)],
                &[],
                &[(1, 4.0)],
            ],
            2,
        );
        let sub = project(&s, &[0, 1], &[0, 1, 2, 3, 4]);
        let opts = CompletionOptions {
            metric: Metric::Cosine,
            ..Default::default()
        };
        let r = complete_analogy(&sub, 0, 1, 2, None, &opts).unwrap();
        assert_eq!(r.predicted, 4);
        let last = r.ranked.last().unwrap();
        assert_eq!(last.word, 3);
        assert!(last.degenerate);
    }

    #[test]
    fn ties_break_by_word_id() {
        let s = space_from_rows(
            &[&[(0, 1.0)], &[(0, 1.0)], &[(0, 1.0)], &[(0, 2.0)], &[]],
            1,
        );
        let sub = project(&s, &[0], &[4, 3, 2, 1, 0]);
        let r = complete_analogy(&sub, 0, 1, 2, None, &CompletionOptions::default()).unwrap();
        // t = 1; words 3 (2.0) and 4 (0.0) are both at distance 1
        assert_eq!(r.ranked.iter().map(|x| x.word).collect::<Vec<_>>(), [3, 4]);
    }
}
