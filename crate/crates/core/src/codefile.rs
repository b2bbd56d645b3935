//! The `MDSKIT v1` text format.
//!
//! ```text
//! MDSKIT v1
//! q=3 n=4
//! 0 0 0 0
//! 0 1 1 1
//! ...
//! ```
//!
//! One word per line, symbols separated by single spaces, LF line endings.
//! Words are written in lexicographic order.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::code::{Code, CodeError};

pub const MAGIC: &str = "MDSKIT v1";

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line 1: expected `{MAGIC}`")]
    BadMagic,
    #[error("line 2: expected `q=<int> n=<int>`")]
    BadHeader,
    #[error("line {line}: {msg}")]
    BadWord { line: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] CodeError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub fn to_string(code: &Code) -> String {
    let mut out = String::with_capacity(16 + code.len() * (2 * code.n() + 1));
    let _ = writeln!(out, "{MAGIC}");
    let _ = writeln!(out, "q={} n={}", code.q(), code.n());
    for w in code.words() {
        let mut first = true;
        for s in w {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{s}");
        }
        out.push('\n');
    }
    out
}

pub fn parse(text: &str) -> Result<Code, ParseError> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = body.split('\n');
    if lines.next() != Some(MAGIC) {
        return Err(ParseError::BadMagic);
    }
    let (q, n) = lines.next().and_then(parse_header).ok_or(ParseError::BadHeader)?;

    let mut words = Vec::new();
    for (i, line) in lines.enumerate() {
        let lineno = i + 3;
        let word = if line.is_empty() {
            Vec::new()
        } else {
            line.split(' ')
                .map(|tok| {
                    let v: usize = tok
                        .parse()
                        .map_err(|_| ParseError::BadWord { line: lineno, msg: format!("`{tok}` is not a symbol") })?;
                    if v >= q {
                        return Err(ParseError::BadWord {
                            line: lineno,
                            msg: format!("symbol {v} is not below q={q}"),
                        });
                    }
                    Ok(v as u8)
                })
                .collect::<Result<Vec<u8>, _>>()?
        };
        if word.len() != n {
            return Err(ParseError::BadWord {
                line: lineno,
                msg: format!("expected {n} symbols, found {}", word.len()),
            });
        }
        words.push(word);
    }
    Ok(Code::new(q, n, words)?)
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let (q, n) = line.split_once(' ')?;
    let q = q.strip_prefix("q=")?.parse().ok()?;
    let n = n.strip_prefix("n=")?.parse().ok()?;
    Some((q, n))
}

pub fn read(path: impl AsRef<Path>) -> Result<Code, ParseError> {
    parse(&fs::read_to_string(path)?)
}

pub fn write(path: impl AsRef<Path>, code: &Code) -> io::Result<()> {
    fs::write(path, to_string(code))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_sorted_words() {
        let code = Code::new(3, 2, vec![vec![2, 2], vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(to_string(&code), "MDSKIT v1\nq=3 n=2\n0 0\n1 1\n2 2\n");
    }

    #[test]
    fn round_trip() {
        let code = Code::new(4, 3, (0..4).map(|i| vec![i, 3 - i, i]).collect()).unwrap();
        assert_eq!(parse(&to_string(&code)).unwrap(), code);
    }

    #[test]
    fn missing_final_newline_is_accepted() {
        let code = parse("MDSKIT v1\nq=2 n=1\n0\n1").unwrap();
        assert_eq!(code.k(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse("MDSKIT v2\nq=2 n=1\n0\n1\n"), Err(ParseError::BadMagic)));
        assert!(matches!(parse("MDSKIT v1\nq=2\n0\n1\n"), Err(ParseError::BadHeader)));
        assert!(matches!(parse("MDSKIT v1\nq=2 n=x\n"), Err(ParseError::BadHeader)));
        assert!(matches!(parse("MDSKIT v1\nq=2 n=2\n0 0\n1\n"), Err(ParseError::BadWord { line: 4, .. })));
        assert!(matches!(parse("MDSKIT v1\nq=2 n=1\n0\n2\n"), Err(ParseError::BadWord { line: 4, .. })));
        assert!(matches!(parse("MDSKIT v1\nq=2 n=1\n0\n0\n"), Err(ParseError::Invalid(CodeError::DuplicateWord(_)))));
        assert!(matches!(
            parse("MDSKIT v1\nq=3 n=1\n0\n1\n"),
            Err(ParseError::Invalid(CodeError::SizeNotPowerOfQ { .. }))
        ));
        assert!(matches!(parse("MDSKIT v1\nq=2 n=2\n0  1\n1 0\n"), Err(ParseError::BadWord { line: 3, .. })));
        assert!(matches!(parse("MDSKIT v1\nq=2 n=1\n0\n1\n\n"), Err(ParseError::BadWord { line: 5, .. })));
    }
}
