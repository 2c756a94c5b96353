//! Text formats for tournaments.
//!
//! Canonical format: line 1 is `tournament <n>`, then one line per row
//! `i = 0..n-2` holding the bits `b_{i,j}` for `j = i+1..n-1`, where `1`
//! means `i -> j`. Writers emit this form bit-exactly. Readers also accept an
//! edge list (one `u v` pair per line, meaning `u -> v`) which must cover
//! every pair exactly once.

use crate::tournament::{BuildError, Tournament};
use std::io::{self, BufRead, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("io: {0}")]
    Io(#[from] io::Error),
    #[error("line {0}: {1}")]
    Line(usize, String),
    #[error("{0}")]
    Build(#[from] BuildError),
}

/// Writes the canonical format. Emits exactly `n` lines for `n >= 2`
/// (header plus `n - 1` rows), one line for `n <= 1`.
pub fn write_canonical(t: &Tournament, mut out: impl Write) -> io::Result<()> {
    let n = t.n();
    writeln!(out, "tournament {}", n)?;
    let mut row = String::new();
    for i in 0..n.saturating_sub(1) {
        row.clear();
        for j in (i + 1)..n {
            row.push(if t.has_edge(i as u32, j as u32) { '1' } else { '0' });
        }
        writeln!(out, "{}", row)?;
    }
    Ok(())
}

pub fn to_canonical_string(t: &Tournament) -> String {
    let mut buf = Vec::new();
    write_canonical(t, &mut buf).expect("write to Vec cannot fail");
    String::from_utf8(buf).expect("canonical format is ASCII")
}

/// Reads either accepted format, detecting by the header line.
pub fn read_tournament(input: impl BufRead) -> Result<Tournament, ParseError> {
    let mut lines = Vec::new();
    for (no, line) in input.lines().enumerate() {
        let line = line?;
        lines.push((no + 1, line.trim_end().to_string()));
    }
    // drop trailing blank lines only
    while lines.last().is_some_and(|(_, l)| l.is_empty()) {
        lines.pop();
    }
    match lines.first() {
        Some((_, l)) if l.starts_with("tournament ") || l.trim() == "tournament" => {
            parse_canonical(&lines)
        }
        Some(_) => parse_edge_list(&lines),
        None => Err(ParseError::Line(1, "empty input".into())),
    }
}

pub fn from_str(s: &str) -> Result<Tournament, ParseError> {
    read_tournament(s.as_bytes())
}

fn parse_canonical(lines: &[(usize, String)]) -> Result<Tournament, ParseError> {
    let (hno, header) = &lines[0];
    let n: usize = header
        .strip_prefix("tournament ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| ParseError::Line(*hno, format!("bad header {:?}", header)))?;
    let expect_rows = n.saturating_sub(1);
    if lines.len() - 1 != expect_rows {
        return Err(ParseError::Line(
            *hno,
            format!("expected {} rows for n = {}, found {}", expect_rows, n, lines.len() - 1),
        ));
    }
    let mut rows: Vec<Vec<bool>> = Vec::with_capacity(expect_rows);
    for (i, (no, line)) in lines[1..].iter().enumerate() {
        let want = n - 1 - i;
        if line.len() != want {
            return Err(ParseError::Line(
                *no,
                format!("row {} must hold {} bits, found {}", i, want, line.len()),
            ));
        }
        let mut row = Vec::with_capacity(want);
        for ch in line.chars() {
            match ch {
                '0' => row.push(false),
                '1' => row.push(true),
                other => {
                    return Err(ParseError::Line(*no, format!("bad bit {:?}", other)));
                }
            }
        }
        rows.push(row);
    }
    Ok(Tournament::from_orientation(n, |i, j| {
        rows[i as usize][(j - i - 1) as usize]
    }))
}

fn parse_edge_list(lines: &[(usize, String)]) -> Result<Tournament, ParseError> {
    let mut pairs = Vec::with_capacity(lines.len());
    let mut max_id: u32 = 0;
    for (no, line) in lines {
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let (u, v) = match (it.next(), it.next(), it.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => return Err(ParseError::Line(*no, format!("expected `u v`, found {:?}", line))),
        };
        let u: u32 = u
            .parse()
            .map_err(|_| ParseError::Line(*no, format!("bad vertex {:?}", u)))?;
        let v: u32 = v
            .parse()
            .map_err(|_| ParseError::Line(*no, format!("bad vertex {:?}", v)))?;
        max_id = max_id.max(u).max(v);
        pairs.push((u, v));
    }
    if pairs.is_empty() {
        return Err(ParseError::Line(1, "empty edge list".into()));
    }
    Ok(Tournament::build(max_id as usize + 1, &pairs)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_round_trip() {
        for t in [
            Tournament::random(1, 0),
            Tournament::random(2, 1),
            Tournament::random(13, 2),
            Tournament::paley(7).unwrap(),
            Tournament::transitive(6),
        ] {
            let s = to_canonical_string(&t);
            let back = from_str(&s).unwrap();
            assert_eq!(back, t);
            assert_eq!(to_canonical_string(&back), s);
        }
    }

    #[test]
    fn canonical_shape() {
        let t = Tournament::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(to_canonical_string(&t), "tournament 3\n10\n1\n");
        let one = Tournament::random(1, 0);
        assert_eq!(to_canonical_string(&one), "tournament 1\n");
    }

    #[test]
    fn edge_list_accepted() {
        let t = from_str("0 1\n1 2\n2 0\n").unwrap();
        assert!(t.has_edge(0, 1) && t.has_edge(1, 2) && t.has_edge(2, 0));
    }

    #[test]
    fn edge_list_must_be_total() {
        let err = from_str("0 1\n1 2\n").unwrap_err();
        assert!(matches!(err, ParseError::Build(BuildError::MissingPair(0, 2))));
        let err = from_str("0 1\n1 0\n").unwrap_err();
        assert!(matches!(err, ParseError::Build(BuildError::DuplicatePair(0, 1))));
    }

    #[test]
    fn canonical_rejects_malformed() {
        assert!(from_str("tournament 3\n10\n").is_err()); // missing row
        assert!(from_str("tournament 3\n102\n1\n").is_err()); // bad bit / length
        assert!(from_str("tournament x\n").is_err());
    }
}
