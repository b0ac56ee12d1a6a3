//! Plain-text instance files: one set per line as ascending, space-separated
//! non-negative integers. Blank lines and lines starting with `#` are
//! ignored. LF and CRLF line endings are both accepted.

use rsumset::{IntSet, SetSequence};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },

    #[error("instance file contains no sets")]
    NoSets,
}

fn at(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Line {
        line,
        message: message.into(),
    }
}

pub fn parse(text: &str) -> Result<SetSequence, ParseError> {
    let mut sets = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut elements = Vec::new();
        for token in content.split_whitespace() {
            let value: usize = token
                .parse()
                .map_err(|_| at(line, format!("'{token}' is not a non-negative integer")))?;
            if elements.last().is_some_and(|&prev| prev >= value) {
                return Err(at(line, "elements must be strictly ascending"));
            }
            elements.push(value);
        }
        let set = IntSet::try_from_elements(elements).map_err(|e| at(line, e.to_string()))?;
        sets.push(set);
    }
    if sets.is_empty() {
        return Err(ParseError::NoSets);
    }
    Ok(SetSequence::new(sets).expect("every parsed set is non-empty"))
}

pub fn format(seq: &SetSequence) -> String {
    let mut out = String::new();
    for s in seq.sets() {
        let line: Vec<String> = s.iter().map(|a| a.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_crlf() {
        let s = parse("# example\r\n0 1 2\r\n\r\n0 1\n  # indented comment\n0 1\n").unwrap();
        assert_eq!(s.to_vecs(), vec![vec![0, 1, 2], vec![0, 1], vec![0, 1]]);
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(
            parse("0 1\n0 x\n"),
            Err(ParseError::Line {
                line: 2,
                message: "'x' is not a non-negative integer".into()
            })
        );
        assert!(matches!(
            parse("0 1\n\n2 1\n"),
            Err(ParseError::Line { line: 3, .. })
        ));
        assert!(matches!(
            parse("0 -1\n"),
            Err(ParseError::Line { line: 1, .. })
        ));
        assert_eq!(parse("# nothing\n\n"), Err(ParseError::NoSets));
    }

    #[test]
    fn format_parses_back() {
        let s = SetSequence::from_vecs(&[vec![0, 3, 70], vec![5]]).unwrap();
        assert_eq!(format(&s), "0 3 70\n5\n");
        assert_eq!(parse(&format(&s)).unwrap(), s);
    }
}
