use std::fs::{self, File};
use std::io::Read;
use std::path::{Path, PathBuf};

use flate2::read::MultiGzDecoder;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How raw text is split into documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DocDelimiter {
    /// Every line is one document.
    #[default]
    Line,
    /// The whole input is one document.
    Whole,
}

/// Tokenized corpus. Tokens are lowercased runs of letters, digits and `_`;
/// co-occurrence windows never span two documents.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenStream {
    documents: Vec<Vec<String>>,
    total_tokens: usize,
}

impl TokenStream {
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from pre-split documents. Empty documents are dropped; tokens
    /// are checked against the token invariant.
    pub fn from_documents(documents: Vec<Vec<String>>) -> Result<Self> {
        let mut stream = TokenStream::new();
        for doc in documents {
            if let Some(bad) = doc
                .iter()
                .find(|t| t.is_empty() || t.chars().any(char::is_whitespace))
            {
                return Err(Error::InvalidArgument(format!("invalid token {bad:?}")));
            }
            stream.push_document(doc);
        }
        Ok(stream)
    }

    fn push_document(&mut self, doc: Vec<String>) {
        if !doc.is_empty() {
            self.total_tokens += doc.len();
            self.documents.push(doc);
        }
    }

    pub fn documents(&self) -> &[Vec<String>] {
        &self.documents
    }

    pub fn total_tokens(&self) -> usize {
        self.total_tokens
    }

    pub fn is_empty(&self) -> bool {
        self.total_tokens == 0
    }

    pub fn iter_tokens(&self) -> impl Iterator<Item = &str> {
        self.documents.iter().flatten().map(String::as_str)
    }

    /// Append another stream's documents.
    pub fn extend(&mut self, other: TokenStream) {
        self.total_tokens += other.total_tokens;
        self.documents.extend(other.documents);
    }
}

fn is_token_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn tokenize_into(text: &str, out: &mut Vec<String>) {
    for piece in text.split(|c: char| !is_token_char(c)) {
        if !piece.is_empty() {
            out.push(piece.to_lowercase());
        }
    }
}

/// Tokenize one document's worth of text.
pub fn tokenize_str(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    tokenize_into(text, &mut out);
    out
}

/// Decode UTF-8 input and tokenize it according to `delimiter`.
pub fn tokenize(raw: &[u8], delimiter: DocDelimiter) -> Result<TokenStream> {
    let text = std::str::from_utf8(raw).map_err(|e| Error::Decode {
        path: None,
        offset: e.valid_up_to(),
    })?;
    let mut stream = TokenStream::new();
    match delimiter {
        DocDelimiter::Line => {
            for line in text.lines() {
                stream.push_document(tokenize_str(line));
            }
        }
        DocDelimiter::Whole => stream.push_document(tokenize_str(text)),
    }
    Ok(stream)
}

/// Read a file, transparently gunzipping `*.gz`.
pub fn read_text_file(path: &Path) -> Result<Vec<u8>> {
    let mut file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut buf = Vec::new();
    let res = if path.extension().is_some_and(|e| e == "gz") {
        MultiGzDecoder::new(file).read_to_end(&mut buf)
    } else {
        file.read_to_end(&mut buf)
    };
    res.map_err(|e| Error::io(path, e))?;
    Ok(buf)
}

fn collect_files(dir: &Path, out: &mut Vec<PathBuf>) -> Result<()> {
    let mut entries = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<Vec<_>>>()
        .map_err(|e| Error::io(dir, e))?;
    entries.sort();
    for p in entries {
        if p.is_dir() {
            collect_files(&p, out)?;
        } else {
            out.push(p);
        }
    }
    Ok(())
}

/// Load a corpus from files and directories.
///
/// Plain files are split with `delimiter`. Directories are walked in sorted
/// path order and every file inside becomes exactly one document.
pub fn read_corpus<P: AsRef<Path>>(paths: &[P], delimiter: DocDelimiter) -> Result<TokenStream> {
    let mut stream = TokenStream::new();
    for path in paths {
        let path = path.as_ref();
        let meta = fs::metadata(path).map_err(|e| Error::io(path, e))?;
        if meta.is_dir() {
            let mut files = Vec::new();
            collect_files(path, &mut files)?;
            for f in files {
                let raw = read_text_file(&f)?;
                stream.extend(tokenize(&raw, DocDelimiter::Whole).map_err(|e| at_path(e, &f))?);
            }
        } else {
            let raw = read_text_file(path)?;
            stream.extend(tokenize(&raw, delimiter).map_err(|e| at_path(e, path))?);
        }
    }
    Ok(stream)
}

fn at_path(e: Error, path: &Path) -> Error {
    match e {
        Error::Decode { offset, .. } => Error::Decode {
            path: Some(path.to_path_buf()),
            offset,
        },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        tokenize(s.as_bytes(), DocDelimiter::Whole)
            .unwrap()
            .iter_tokens()
            .map(str::to_owned)
            .collect()
    }

    #[test]
    fn case_fold_and_punctuation() {
        assert_eq!(toks("The cat, the CAT!"), ["the", "cat", "the", "cat"]);
    }

    #[test]
    fn underscore_compounds_survive() {
        assert_eq!(toks("mexican_viagra_viagra"), ["mexican_viagra_viagra"]);
    }

    #[test]
    fn empty_input() {
        let s = tokenize(b"", DocDelimiter::Line).unwrap();
        assert_eq!(s.total_tokens(), 0);
        assert!(s.documents().is_empty());
    }

    #[test]
    fn lines_are_documents_and_empty_ones_drop() {
        let s = tokenize("a b\n\n ,;\nc\n".as_bytes(), DocDelimiter::Line).unwrap();
        assert_eq!(s.documents().len(), 2);
        assert_eq!(s.total_tokens(), 3);
    }

    #[test]
    fn digits_and_unicode_letters() {
        assert_eq!(
            toks("Zürich 1990s, état-civil"),
            ["zürich", "1990s", "état", "civil"]
        );
    }

    #[test]
    fn bad_utf8_reports_offset() {
        let err = tokenize(b"abc \xff def", DocDelimiter::Line).unwrap_err();
        assert!(matches!(err, Error::Decode { offset: 4, .. }));
    }

    #[test]
    fn from_documents_rejects_whitespace_tokens() {
        assert!(TokenStream::from_documents(vec![vec!["a b".into()]]).is_err());
        let s = TokenStream::from_documents(vec![vec![], vec!["x".into()]]).unwrap();
        assert_eq!(s.documents().len(), 1);
    }

    #[test]
    fn directory_files_are_single_documents() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("b.txt"), "two\nlines").unwrap();
        std::fs::write(dir.path().join("a.txt"), "first").unwrap();
        let s = read_corpus(&[dir.path()], DocDelimiter::Line).unwrap();
        assert_eq!(
            s.documents(),
            &[
                vec!["first".to_string()],
                vec!["two".into(), "lines".into()]
            ]
        );
    }
}
