use std::collections::HashMap;

use crate::corpus::TokenStream;
use crate::error::{Error, Result};

/// Frequency-ranked word table. Id 0 is the most frequent word; equal
/// frequencies are ordered lexicographically.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    words: Vec<String>,
    freq: Vec<u64>,
    index: HashMap<String, u32>,
    total_in_vocab: u64,
}

impl Vocabulary {
    /// Rebuild a vocabulary from its ranked words and frequencies, checking
    /// every invariant (used by the space loader).
    pub fn from_ranked(words: Vec<String>, freq: Vec<u64>) -> Result<Self> {
        if words.len() != freq.len() {
            return Err(Error::InvalidArgument(format!(
                "{} words but {} frequencies",
                words.len(),
                freq.len()
            )));
        }
        if words.len() > u32::MAX as usize {
            return Err(Error::InvalidArgument("vocabulary too large".into()));
        }
        for (i, w) in freq.windows(2).enumerate() {
            if w[1] > w[0] || (w[1] == w[0] && words[i + 1] <= words[i]) {
                return Err(Error::InvalidArgument(format!(
                    "vocabulary not ranked at id {}",
                    i + 1
                )));
            }
        }
        if freq.contains(&0) {
            return Err(Error::InvalidArgument(
                "zero frequency in vocabulary".into(),
            ));
        }
        let index: HashMap<String, u32> = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i as u32))
            .collect();
        if index.len() != words.len() {
            return Err(Error::InvalidArgument(
                "duplicate word in vocabulary".into(),
            ));
        }
        let total_in_vocab = freq.iter().sum();
        Ok(Vocabulary {
            words,
            freq,
            index,
            total_in_vocab,
        })
    }

    /// Keep the `max_size` most frequent types seen at least `min_count`
    /// times.
    pub fn from_counts(counts: HashMap<String, u64>, max_size: usize, min_count: u64) -> Self {
        let mut ranked: Vec<(String, u64)> = counts
            .into_iter()
            .filter(|&(_, n)| n >= min_count.max(1))
            .collect();
        ranked.sort_unstable_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        ranked.truncate(max_size);
        let (words, freq): (Vec<_>, Vec<_>) = ranked.into_iter().unzip();
        Self::from_ranked(words, freq).expect("ranking produced a valid vocabulary")
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn id(&self, word: &str) -> Option<u32> {
        self.index.get(word).copied()
    }

    pub fn word(&self, id: u32) -> &str {
        &self.words[id as usize]
    }

    pub fn freq(&self, id: u32) -> u64 {
        self.freq[id as usize]
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn frequencies(&self) -> &[u64] {
        &self.freq
    }

    /// Occurrences of retained words in the corpus.
    pub fn total_in_vocab(&self) -> u64 {
        self.total_in_vocab
    }
}

/// Count token types in a stream.
pub fn count_types(tokens: &TokenStream) -> HashMap<String, u64> {
    let mut counts: HashMap<String, u64> = HashMap::new();
    for t in tokens.iter_tokens() {
        match counts.get_mut(t) {
            Some(n) => *n += 1,
            None => {
                counts.insert(t.to_owned(), 1);
            }
        }
    }
    counts
}

pub fn build_vocabulary(tokens: &TokenStream, max_size: usize, min_count: u64) -> Vocabulary {
    Vocabulary::from_counts(count_types(tokens), max_size, min_count)
}
