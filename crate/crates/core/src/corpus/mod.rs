//! Raw text to tokens, vocabularies and windowed co-occurrence counts.

mod cooccur;
mod tokenize;
mod vocab;

pub use cooccur::{count_cooccurrences, CooccurrenceTable};
pub use tokenize::{
    read_corpus, read_text_file, tokenize, tokenize_str, DocDelimiter, TokenStream,
};
pub use vocab::{build_vocabulary, count_types, Vocabulary};
