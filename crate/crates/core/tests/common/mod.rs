#![allow(dead_code)]

use std::collections::HashMap;

use pmi_subspace::corpus::{TokenStream, Vocabulary};
use pmi_subspace::space::BaseSpace;
use pmi_subspace::sparse::SparseRows;
use proptest::prelude::*;

/// Quadratic reference count of ordered (target, context) pairs.
pub fn brute_force_counts(
    docs: &[Vec<String>],
    tv: &Vocabulary,
    cv: &Vocabulary,
    window: usize,
) -> HashMap<(u32, u32), u64> {
    let mut out = HashMap::new();
    for doc in docs {
        for i in 0..doc.len() {
            for j in 0..doc.len() {
                if i == j || i.abs_diff(j) > window {
                    continue;
                }
                if let (Some(w), Some(c)) = (tv.id(&doc[i]), cv.id(&doc[j])) {
                    *out.entry((w, c)).or_insert(0) += 1;
                }
            }
        }
    }
    out
}

pub fn stream(docs: &[Vec<String>]) -> TokenStream {
    TokenStream::from_documents(docs.to_vec()).unwrap()
}

/// Up to 12 documents of up to 40 tokens over a small alphabet (< 10^3 tokens).
pub fn small_corpus() -> impl Strategy<Value = Vec<Vec<String>>> {
    let word =
        prop::sample::select(vec!["a", "b", "c", "d", "e", "f", "g", "h"]).prop_map(String::from);
    prop::collection::vec(prop::collection::vec(word, 1..40), 1..12)
}

/// Synthetic vocabulary `prefix000..` with frequency 1 each.
pub fn flat_vocab(prefix: &str, n: usize) -> Vocabulary {
    let words = (0..n).map(|i| format!("{prefix}{i:04}")).collect();
    Vocabulary::from_ranked(words, vec![1; n]).unwrap()
}

/// Space with the given dense rows; zero entries are left unstored.
pub fn dense_space(rows: &[Vec<f64>]) -> BaseSpace {
    let n_ctx = rows.iter().map(Vec::len).max().unwrap_or(0);
    let sparse = SparseRows::from_rows(rows.iter().map(|r| {
        r.iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(c, v)| (c as u32, *v))
            .collect::<Vec<_>>()
    }));
    BaseSpace::new(
        sparse,
        0.0,
        5,
        flat_vocab("w", rows.len()),
        flat_vocab("c", n_ctx),
    )
    .unwrap()
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
