use crate::corpus::Vocabulary;
use crate::space::BaseSpace;
use crate::sparse::SparseRows;

fn synthetic_vocab(prefix: &str, n: usize) -> Vocabulary {
    let words = (0..n).map(|i| format!("{prefix}{i:06}")).collect();
    Vocabulary::from_ranked(words, vec![1; n]).unwrap()
}

/// A space with words `w000000..` and contexts `c000000..` holding the given
/// rows verbatim.
pub fn space_from_rows(rows: &[&[(u32, f64)]], n_contexts: usize) -> BaseSpace {
    let sparse = SparseRows::from_rows(rows.iter().map(|r| r.to_vec()));
    BaseSpace::new(
        sparse,
        0.0,
        5,
        synthetic_vocab("w", rows.len()),
        synthetic_vocab("c", n_contexts),
    )
    .unwrap()
}
