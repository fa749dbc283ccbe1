use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid UTF-8 at byte offset {offset}{}", .path.as_ref().map(|p| format!(" in {}", p.display())).unwrap_or_default())]
    Decode {
        path: Option<PathBuf>,
        offset: usize,
    },

    #[error("space file format error: {0}")]
    Format(String),

    #[error("space file integrity error: {0}")]
    Integrity(String),

    #[error("inconsistent co-occurrence table: {0}")]
    Inconsistent(String),

    #[error("out of vocabulary: {}", .words.join(", "))]
    OutOfVocabulary { words: Vec<String> },

    #[error("no shared context dimension for {}", .words.join(", "))]
    NoSharedContext { words: Vec<String> },

    #[error("degenerate row {row}: values sum to zero")]
    DegenerateRow { row: usize },

    #[error("no candidate words left after exclusion")]
    NoCandidates,

    #[error("degenerate figure: {0}")]
    DegenerateFigure(String),

    #[error("unknown dimension: {0}")]
    UnknownDimension(String),

    #[error("test set line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Short machine-readable tag, used on stderr by the CLI.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Io { .. } => "io",
            Error::Decode { .. } => "decode",
            Error::Format(_) => "format",
            Error::Integrity(_) => "integrity",
            Error::Inconsistent(_) => "inconsistent",
            Error::OutOfVocabulary { .. } => "oov",
            Error::NoSharedContext { .. } => "no-shared-context",
            Error::DegenerateRow { .. } => "degenerate-row",
            Error::NoCandidates => "no-candidates",
            Error::DegenerateFigure(_) => "degenerate-figure",
            Error::UnknownDimension(_) => "unknown-dimension",
            Error::Parse { .. } => "parse",
            Error::InvalidArgument(_) => "invalid-argument",
        }
    }

    /// True for errors that stem from the query or data rather than from
    /// I/O or configuration.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::OutOfVocabulary { .. }
                | Error::NoSharedContext { .. }
                | Error::DegenerateRow { .. }
                | Error::NoCandidates
                | Error::DegenerateFigure(_)
                | Error::UnknownDimension(_)
                | Error::Inconsistent(_)
        )
    }
}
