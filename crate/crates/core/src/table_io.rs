//! Plain-text multiplication-table files.
//!
//! Line 1 is the order n; the next n lines give the table rows as n
//! space-separated 0-based indices (row i lists the products i·j); an
//! optional final line `labels: l0 l1 ...` names the elements. `#` starts
//! a comment, blank lines are skipped, and both LF and CRLF line endings
//! are accepted.

use thiserror::Error;

use crate::semigroup::{FiniteSemigroup, SemigroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

fn parse_err(line: usize, col: usize, message: impl Into<String>) -> TableError {
    TableError::Parse {
        line,
        col,
        message: message.into(),
    }
}

/// Significant tokens of one line with their 1-based columns; comments and
/// trailing carriage returns stripped.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let line = line.split('#').next().unwrap_or("").trim_end_matches('\r');
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub fn parse_table_file(text: &str) -> Result<FiniteSemigroup, TableError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, tokens(l)))
        .filter(|(_, toks)| !toks.is_empty());

    let (order_line, order_tokens) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "empty file; expected the order on line 1"))?;
    if order_tokens.len() != 1 {
        let (col, _) = order_tokens[1];
        return Err(parse_err(order_line, col, "expected only the order here"));
    }
    let (col, tok) = order_tokens[0];
    let order: usize = tok
        .parse()
        .map_err(|_| parse_err(order_line, col, format!("expected the order, got '{tok}'")))?;
    if order == 0 {
        return Err(parse_err(order_line, col, "order must be positive"));
    }

    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(order);
    for _ in 0..order {
        let (line_no, row_tokens) = lines.next().ok_or_else(|| {
            parse_err(
                order_line,
                1,
                format!("expected {order} table rows, found {}", rows.len()),
            )
        })?;
        if row_tokens.len() != order {
            let col = row_tokens.last().map_or(1, |&(c, t)| c + t.len());
            return Err(parse_err(
                line_no,
                col,
                format!("expected {order} entries, found {}", row_tokens.len()),
            ));
        }
        let mut row = Vec::with_capacity(order);
        for (col, tok) in row_tokens {
            let v: usize = tok.parse().map_err(|_| {
                parse_err(line_no, col, format!("expected an index, got '{tok}'"))
            })?;
            row.push(v);
        }
        rows.push(row);
    }

    let mut labels: Option<Vec<String>> = None;
    if let Some((line_no, toks)) = lines.next() {
        let (col, head) = toks[0];
        if head != "labels:" {
            return Err(parse_err(
                line_no,
                col,
                format!("expected 'labels:' or end of file, got '{head}'"),
            ));
        }
        if toks.len() != order + 1 {
            return Err(parse_err(
                line_no,
                col,
                format!("expected {order} labels, found {}", toks.len() - 1),
            ));
        }
        labels = Some(toks[1..].iter().map(|&(_, t)| t.to_string()).collect());
        if let Some((line_no, toks)) = lines.next() {
            let (col, tok) = toks[0];
            return Err(parse_err(
                line_no,
                col,
                format!("unexpected content after the labels line: '{tok}'"),
            ));
        }
    }

    let mut s = FiniteSemigroup::from_rows(rows)?;
    if let Some(ls) = labels {
        s = s.with_labels(ls)?;
    }
    Ok(s)
}

/// Canonical file form: order, rows, and a labels line when labels exist.
pub fn render_table_file(s: &FiniteSemigroup) -> String {
    let mut out = format!("{}\n", s.order());
    for row in s.table_rows() {
        let rendered: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&rendered.join(" "));
        out.push('\n');
    }
    if let Some(labels) = s.labels() {
        out.push_str("labels: ");
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_spec_shapes() {
        let trivial = parse_table_file("1\n0\n").unwrap();
        assert_eq!(trivial.order(), 1);
        let z2 = parse_table_file("2\n0 1\n1 0\n").unwrap();
        assert_eq!(z2.product(1, 1), 0);
        let null2 = parse_table_file("2\n1 1\n1 1\n").unwrap();
        assert_eq!(null2.zero(), Some(1));
    }

    #[test]
    fn comments_blank_lines_and_crlf() {
        let text = "# a null semigroup\r\n2\r\n\r\n1 1 # row of a\r\n1 1\r\nlabels: a z\r\n";
        let s = parse_table_file(text).unwrap();
        assert_eq!(s.order(), 2);
        assert_eq!(s.label(0), "a");
    }

    #[test]
    fn reports_line_and_column() {
        let err = parse_table_file("2\n0 x\n1 0\n").unwrap_err();
        assert_eq!(
            err,
            TableError::Parse {
                line: 2,
                col: 3,
                message: "expected an index, got 'x'".to_string()
            }
        );
        let err = parse_table_file("2\n0 1\n").unwrap_err();
        assert!(matches!(err, TableError::Parse { line: 1, .. }));
        let err = parse_table_file("2\n0 1 0\n1 0\n").unwrap_err();
        assert!(matches!(err, TableError::Parse { line: 2, .. }));
    }

    #[test]
    fn propagates_table_validation() {
        let err = parse_table_file("2\n1 0\n0 0\n").unwrap_err();
        assert_eq!(
            err,
            TableError::Semigroup(SemigroupError::NotAssociative { i: 0, j: 0, k: 1 })
        );
        let err = parse_table_file("1\n4\n").unwrap_err();
        assert!(matches!(err, TableError::Semigroup(_)));
    }

    #[test]
    fn round_trips() {
        let canonical = "2\n1 1\n1 1\nlabels: a z\n";
        let s = parse_table_file(canonical).unwrap();
        assert_eq!(render_table_file(&s), canonical);
        let bare = "3\n0 1 2\n1 2 0\n2 0 1\n";
        assert_eq!(render_table_file(&parse_table_file(bare).unwrap()), bare);
        // file -> semigroup -> file -> semigroup is the identity on values
        let again = parse_table_file(&render_table_file(&s)).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn rejects_trailing_content() {
        let err = parse_table_file("1\n0\nlabels: e\nextra\n").unwrap_err();
        assert!(matches!(err, TableError::Parse { line: 4, .. }));
        let err = parse_table_file("1\n0\nnonsense\n").unwrap_err();
        assert!(matches!(err, TableError::Parse { line: 3, .. }));
    }
}
