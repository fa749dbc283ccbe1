use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::{Error, Result};
use crate::projection::AnalogyQuery;

/// One analogy line of a test-set file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestItem {
    pub query: AnalogyQuery,
    pub section: Option<String>,
    /// 1-based line number in the source file.
    pub line: usize,
}

/// Parse the four-words-per-line analogy format. Lines starting with `:`
/// open a new section; blank lines are ignored; words are lowercased.
pub fn parse_testset<R: BufRead>(reader: R) -> Result<Vec<TestItem>> {
    let mut items = Vec::new();
    let mut section = None;
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix(':') {
            section = Some(header.trim().to_owned());
            continue;
        }
        let words: Vec<String> = line.split_whitespace().map(str::to_lowercase).collect();
        if words.len() != 4 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected 4 words, found {}", words.len()),
            });
        }
        let query =
            AnalogyQuery::new(&words[0], &words[1], &words[2], Some(&words[3])).map_err(|e| {
                Error::Parse {
                    line: lineno,
                    message: e.to_string(),
                }
            })?;
        items.push(TestItem {
            query,
            section: section.clone(),
            line: lineno,
        });
    }
    Ok(items)
}

pub fn parse_testset_file(path: impl AsRef<Path>) -> Result<Vec<TestItem>> {
    let path = path.as_ref();
    let f = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_testset(BufReader::new(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_line() {
        let items =
            parse_testset(": capital-common-countries\nAthens Greece Baghdad Iraq\n".as_bytes())
                .unwrap();
        assert_eq!(items.len(), 1);
        assert_eq!(
            items[0].section.as_deref(),
            Some("capital-common-countries")
        );
        assert_eq!(
            items[0].query.words(),
            ["athens", "greece", "baghdad", "iraq"]
        );
        assert_eq!(items[0].line, 2);
    }

    #[test]
    fn empty_file() {
        assert!(parse_testset("".as_bytes()).unwrap().is_empty());
    }

    #[test]
    fn short_line_is_an_error() {
        let err = parse_testset(": s\na b c d\na b c\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }
}
