use std::fmt::Write;

use crate::error::{Error, Result};
use crate::girth::LiftedCode;

/// Column-oriented sparse binary matrix, as read from an alist file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    /// 0-based row indices of each column, ascending.
    pub col_entries: Vec<Vec<usize>>,
}

impl SparseMatrix {
    pub fn from_code(code: &LiftedCode) -> Self {
        let col_entries = (0..code.n()).map(|v| code.var_neighbors(v).collect()).collect();
        SparseMatrix {
            rows: code.m(),
            cols: code.n(),
            col_entries,
        }
    }

    pub fn row_entries(&self) -> Vec<Vec<usize>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (v, col) in self.col_entries.iter().enumerate() {
            for &c in col {
                rows[c].push(v);
            }
        }
        rows
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let mut dense = vec![vec![0u8; self.cols]; self.rows];
        for (v, col) in self.col_entries.iter().enumerate() {
            for &c in col {
                dense[c][v] = 1;
            }
        }
        dense
    }
}

fn join(values: impl Iterator<Item = usize>) -> String {
    values.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Text alist: `N M`, the maximum column and row degrees, the degree lists,
/// then 1-based row indices per column and column indices per row. Lists are
/// not zero-padded. Fails on a column without ones.
pub fn export_alist(code: &LiftedCode) -> Result<String> {
    let h = SparseMatrix::from_code(code);
    if let Some(v) = h.col_entries.iter().position(|c| c.is_empty()) {
        return Err(Error::Precondition(format!("column {v} has no ones")));
    }
    let rows = h.row_entries();
    let col_deg: Vec<usize> = h.col_entries.iter().map(Vec::len).collect();
    let row_deg: Vec<usize> = rows.iter().map(Vec::len).collect();
    let mut out = String::new();
    let max = |d: &[usize]| d.iter().copied().max().unwrap_or(0);
    writeln!(out, "{} {}", h.cols, h.rows).unwrap();
    writeln!(out, "{} {}", max(&col_deg), max(&row_deg)).unwrap();
    writeln!(out, "{}", join(col_deg.iter().copied())).unwrap();
    writeln!(out, "{}", join(row_deg.iter().copied())).unwrap();
    for col in &h.col_entries {
        writeln!(out, "{}", join(col.iter().map(|c| c + 1))).unwrap();
    }
    for row in &rows {
        writeln!(out, "{}", join(row.iter().map(|v| v + 1))).unwrap();
    }
    Ok(out)
}

/// Reads an alist file, accepting zero padding. The row lists must agree
/// with the column lists.
pub fn parse_alist(text: &str) -> Result<SparseMatrix> {
    let bad = |msg: String| Error::Parse(msg);
    let mut lines = text.lines();
    let mut numbers = |what: &str| -> Result<Vec<usize>> {
        let line = lines.next().ok_or_else(|| bad(format!("missing {what}")))?;
        line.split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| bad(format!("bad number {t:?} in {what}"))))
            .collect()
    };
    let header = numbers("header")?;
    let [n, m] = header[..] else {
        return Err(bad("header must be `N M`".into()));
    };
    numbers("max degrees")?;
    let col_deg = numbers("column degrees")?;
    let row_deg = numbers("row degrees")?;
    if col_deg.len() != n || row_deg.len() != m {
        return Err(bad("degree list lengths do not match N and M".into()));
    }
    let mut read_lists = |count: usize, bound: usize, degrees: &[usize], what: &str| -> Result<Vec<Vec<usize>>> {
        (0..count)
            .map(|k| {
                let list: Vec<usize> = numbers(what)?.into_iter().filter(|&x| x != 0).collect();
                if list.len() != degrees[k] || list.iter().any(|&x| x > bound) {
                    return Err(bad(format!("{what} {} is inconsistent", k + 1)));
                }
                Ok(list.into_iter().map(|x| x - 1).collect())
            })
            .collect()
    };
    let mut col_entries = read_lists(n, m, &col_deg, "column")?;
    let row_entries = read_lists(m, n, &row_deg, "row")?;
    for col in &mut col_entries {
        col.sort_unstable();
    }
    let h = SparseMatrix {
        rows: m,
        cols: n,
        col_entries,
    };
    let mut rebuilt = h.row_entries();
    let mut given = row_entries;
    for r in rebuilt.iter_mut().chain(given.iter_mut()) {
        r.sort_unstable();
    }
    if rebuilt != given {
        return Err(bad("row and column lists disagree".into()));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::girth::lift;
    use crate::matrix::{BlockMask, ExponentMatrix};

    fn m(rows: Vec<Vec<i64>>) -> ExponentMatrix {
        ExponentMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn identity() {
        let code = lift(&m(vec![vec![0]]), 2, None).unwrap();
        assert_eq!(export_alist(&code).unwrap(), "2 2\n1 1\n1 1\n1 1\n1\n2\n1\n2\n");
    }

    #[test]
    fn round_trip() {
        let code = lift(&m(vec![vec![0, 0], vec![0, 1]]), 2, None).unwrap();
        let parsed = parse_alist(&export_alist(&code).unwrap()).unwrap();
        assert_eq!(parsed.to_dense(), code.to_dense());
        let mask = BlockMask::new(vec![vec![1, 0, 1], vec![1, 1, 1]]).unwrap();
        let code = lift(&m(vec![vec![0, 3, 1], vec![2, 4, 0]]), 5, Some(&mask)).unwrap();
        let parsed = parse_alist(&export_alist(&code).unwrap()).unwrap();
        assert_eq!(parsed.to_dense(), code.to_dense());
    }

    #[test]
    fn padded_input() {
        let text = "2 2\n1 1\n1 1\n1 1\n1 0\n2 0\n1 0\n2 0\n";
        assert_eq!(parse_alist(text).unwrap().to_dense(), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn errors() {
        let mask = BlockMask::new(vec![vec![1, 0]]).unwrap();
        let code = lift(&m(vec![vec![0, 0]]), 2, Some(&mask)).unwrap();
        assert!(export_alist(&code).is_err());
        assert!(parse_alist("2 2\n1 1\n1 1\n1 1\n1\n2\n2\n1\n").is_err());
        assert!(parse_alist("2\n").is_err());
        assert!(parse_alist("").is_err());
    }
}
