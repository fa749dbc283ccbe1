use std::collections::HashMap;

use rayon::prelude::*;

use crate::corpus::{TokenStream, Vocabulary};
use crate::sparse::SparseRows;

/// Symmetric-window co-occurrence counts between target and context words.
#[derive(Debug, Clone, PartialEq)]
pub struct CooccurrenceTable {
    counts: SparseRows<u64>,
    target_vocab: Vocabulary,
    context_vocab: Vocabulary,
    window: usize,
}

impl CooccurrenceTable {
    pub fn counts(&self) -> &SparseRows<u64> {
        &self.counts
    }

    pub fn target_vocab(&self) -> &Vocabulary {
        &self.target_vocab
    }

    pub fn context_vocab(&self) -> &Vocabulary {
        &self.context_vocab
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn get(&self, target: u32, context: u32) -> u64 {
        self.counts.get(target as usize, context).unwrap_or(0)
    }

    pub fn nnz(&self) -> usize {
        self.counts.nnz()
    }

    /// Build a table directly from a per-target count map (test fixtures and
    /// ablations). Zero counts are dropped.
    pub fn from_counts(
        counts: &HashMap<(u32, u32), u64>,
        target_vocab: Vocabulary,
        context_vocab: Vocabulary,
        window: usize,
    ) -> Self {
        let mut rows: Vec<Vec<(u32, u64)>> = vec![Vec::new(); target_vocab.len()];
        for (&(w, c), &n) in counts {
            if n > 0 {
                rows[w as usize].push((c, n));
            }
        }
        for r in &mut rows {
            r.sort_unstable_by_key(|e| e.0);
        }
        CooccurrenceTable {
            counts: SparseRows::from_rows(rows),
            target_vocab,
            context_vocab,
            window,
        }
    }
}

type PairCounts = HashMap<u64, u64>;

fn key(w: u32, c: u32) -> u64 {
    ((w as u64) << 32) | c as u64
}

fn count_document(
    doc: &[String],
    target_vocab: &Vocabulary,
    context_vocab: &Vocabulary,
    window: usize,
    acc: &mut PairCounts,
) {
    let targets: Vec<Option<u32>> = doc.iter().map(|t| target_vocab.id(t)).collect();
    let contexts: Vec<Option<u32>> = doc.iter().map(|t| context_vocab.id(t)).collect();
    for (i, w) in targets.iter().enumerate() {
        let Some(w) = *w else { continue };
        let lo = i.saturating_sub(window);
        let hi = (i + window).min(doc.len() - 1);
        for (j, c) in contexts.iter().enumerate().take(hi + 1).skip(lo) {
            if j == i {
                continue;
            }
            if let Some(c) = *c {
                *acc.entry(key(w, c)).or_insert(0) += 1;
            }
        }
    }
}

fn merge(mut a: PairCounts, b: PairCounts) -> PairCounts {
    let (mut big, small) = if a.len() >= b.len() {
        (a, b)
    } else {
        (b, std::mem::take(&mut a))
    };
    for (k, n) in small {
        *big.entry(k).or_insert(0) += n;
    }
    big
}

/// Count every ordered (target, context) pair at distance `1..=window`
/// inside a document. Documents are counted in parallel shards whose maps
/// are merged by addition, so the result does not depend on scheduling.
pub fn count_cooccurrences(
    tokens: &TokenStream,
    target_vocab: &Vocabulary,
    context_vocab: &Vocabulary,
    window: usize,
) -> CooccurrenceTable {
    assert!(window >= 1, "window must be at least 1");
    let merged: PairCounts = tokens
        .documents()
        .par_iter()
        .fold(PairCounts::new, |mut acc, doc| {
            count_document(doc, target_vocab, context_vocab, window, &mut acc);
            acc
        })
        .reduce(PairCounts::new, merge);

    let mut rows: Vec<Vec<(u32, u64)>> = vec![Vec::new(); target_vocab.len()];
    for (k, n) in merged {
        rows[(k >> 32) as usize].push((k as u32, n));
    }
    rows.par_iter_mut()
        .for_each(|r| r.sort_unstable_by_key(|e| e.0));

    CooccurrenceTable {
        counts: SparseRows::from_rows(rows),
        target_vocab: target_vocab.clone(),
        context_vocab: context_vocab.clone(),
        window,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::build_vocabulary;

    fn docs(d: &[&[&str]]) -> TokenStream {
        TokenStream::from_documents(
            d.iter()
                .map(|doc| doc.iter().map(|s| s.to_string()).collect())
                .collect(),
        )
        .unwrap()
    }

    fn table(ts: &TokenStream, window: usize) -> CooccurrenceTable {
        let v = build_vocabulary(ts, 100, 1);
        count_cooccurrences(ts, &v, &v, window)
    }

    fn pair(t: &CooccurrenceTable, w: &str, c: &str) -> u64 {
        let tv = t.target_vocab();
        let cv = t.context_vocab();
        t.get(tv.id(w).unwrap(), cv.id(c).unwrap())
    }

    #[test]
    fn single_pair() {
        let t = table(&docs(&[&["a", "b"]]), 5);
        assert_eq!(pair(&t, "a", "b"), 1);
        assert_eq!(pair(&t, "b", "a"), 1);
        assert_eq!(t.nnz(), 2);
    }

    #[test]
    fn aba_window_one() {
        // positions 0:a 1:b 2:a. a@0 sees b@1, a@2 sees b@1, b@1 sees both a's.
        let t = table(&docs(&[&["a", "b", "a"]]), 1);
        assert_eq!(pair(&t, "a", "b"), 2);
        assert_eq!(pair(&t, "b", "a"), 2);
        assert_eq!(pair(&t, "a", "a"), 0);
    }

    #[test]
    fn windows_stop_at_documents() {
        let t = table(&docs(&[&["a"], &["b"]]), 5);
        assert_eq!(t.nnz(), 0);
    }

    #[test]
    fn repeated_word_counts_self_pairs() {
        // [a,a,a] window 1: 0->1, 1->0, 1->2, 2->1
        let t = table(&docs(&[&["a", "a", "a"]]), 1);
        assert_eq!(pair(&t, "a", "a"), 4);
    }

    #[test]
    fn separate_target_and_context_vocabularies() {
        let ts = docs(&[&["a", "b", "c", "a"]]);
        let target = build_vocabulary(&ts, 1, 1);
        let context = build_vocabulary(&ts, 100, 1);
        let t = count_cooccurrences(&ts, &target, &context, 2);
        assert_eq!(t.counts().n_rows(), 1);
        // a@0 sees b,c ; a@3 sees b,c
        assert_eq!(t.get(0, context.id("b").unwrap()), 2);
        assert_eq!(t.get(0, context.id("c").unwrap()), 2);
        assert_eq!(t.get(0, context.id("a").unwrap()), 0);
    }
}
