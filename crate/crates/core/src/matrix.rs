//! Exponent matrices, block masks and cycle witnesses.
//!
//! An exponent matrix `E = [e(i, r)]` of size `J x L` together with a
//! circulant size `P` describes a QC-LDPC parity-check matrix: block `(i, r)`
//! is the `P x P` identity with its rows cyclically shifted right by
//! `e(i, r) mod P`. Entries are stored as signed integers and only reduced
//! modulo `P` when a code is lifted or a cycle condition is evaluated.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::modp;
use crate::error::{Error, Result};

/// Vertical-symmetry classification of an exponent matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureTag {
    General,
    /// `J` even and row `J/2 + i` is the negation of row `i`.
    VsEven,
    /// `J` odd, row 0 is zero and row `(J-1)/2 + i` is the negation of row `i`.
    VsOdd,
}

impl StructureTag {
    pub fn as_str(self) -> &'static str {
        match self {
            StructureTag::General => "general",
            StructureTag::VsEven => "vs_even",
            StructureTag::VsOdd => "vs_odd",
        }
    }
}

impl fmt::Display for StructureTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A `J x L` integer exponent matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "MatrixDocument", try_from = "MatrixDocument")]
pub struct ExponentMatrix {
    j: usize,
    l: usize,
    entries: Vec<i64>,
    tag: StructureTag,
}

impl ExponentMatrix {
    /// Builds a matrix after checking that `entries` is exactly `j x l`.
    pub fn new(j: usize, l: usize, entries: Vec<Vec<i64>>) -> Result<Self> {
        if j == 0 || l == 0 {
            return Err(Error::Dimension(format!("empty matrix {j}x{l}")));
        }
        if entries.len() != j {
            return Err(Error::Dimension(format!(
                "expected {j} rows, got {}",
                entries.len()
            )));
        }
        if let Some((i, row)) = entries.iter().enumerate().find(|(_, r)| r.len() != l) {
            return Err(Error::Dimension(format!(
                "row {i} has {} entries, expected {l}",
                row.len()
            )));
        }
        let flat: Vec<i64> = entries.into_iter().flatten().collect();
        let tag = classify(j, l, &flat);
        Ok(ExponentMatrix {
            j,
            l,
            entries: flat,
            tag,
        })
    }

    /// Builds a matrix from its rows, inferring the dimensions.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let j = rows.len();
        let l = rows.first().map_or(0, Vec::len);
        Self::new(j, l, rows)
    }

    /// The rank-one matrix `column^T * row`, entry `(i, r) = column[i] * row[r]`.
    pub fn outer(column: &[i64], row: &[i64]) -> Result<Self> {
        let rows = column
            .iter()
            .map(|&a| row.iter().map(|&b| a * b).collect())
            .collect();
        Self::from_rows(rows)
    }

    /// Completes an upper block `E_U` to `[E_U; -E_U]`, or `[0; E_U; -E_U]`
    /// when `zero_row` is set.
    pub fn vs_completion(upper: &[Vec<i64>], zero_row: bool) -> Result<Self> {
        let l = upper.first().map_or(0, Vec::len);
        let mut rows = Vec::with_capacity(2 * upper.len() + 1);
        if zero_row {
            rows.push(vec![0; l]);
        }
        rows.extend(upper.iter().cloned());
        rows.extend(upper.iter().map(|r| r.iter().map(|&x| -x).collect()));
        Self::from_rows(rows)
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn l(&self) -> usize {
        self.l
    }

    #[inline]
    pub fn get(&self, i: usize, r: usize) -> i64 {
        self.entries[i * self.l + r]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.l..(i + 1) * self.l]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i64]> {
        self.entries.chunks(self.l)
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.rows().map(<[i64]>::to_vec).collect()
    }

    /// Structure tag computed when the matrix was built.
    pub fn tag(&self) -> StructureTag {
        self.tag
    }

    /// Entrywise reduction into `[0, p)`.
    pub fn reduced(&self, p: i64) -> ExponentMatrix {
        let entries: Vec<i64> = self.entries.iter().map(|&e| modp(e, p)).collect();
        let tag = classify(self.j, self.l, &entries);
        ExponentMatrix {
            j: self.j,
            l: self.l,
            entries,
            tag,
        }
    }

    /// True when both matrices agree entrywise modulo `p`.
    pub fn congruent(&self, other: &ExponentMatrix, p: i64) -> bool {
        self.j == other.j
            && self.l == other.l
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(&a, &b)| modp(a - b, p) == 0)
    }
}

/// Recomputes the structure tag, testing exact integer negation.
pub fn is_vs(e: &ExponentMatrix) -> StructureTag {
    classify(e.j, e.l, &e.entries)
}

fn classify(j: usize, l: usize, entries: &[i64]) -> StructureTag {
    let row = |i: usize| &entries[i * l..(i + 1) * l];
    let negated = |a: usize, b: usize| row(a).iter().zip(row(b)).all(|(&x, &y)| x == -y);
    if j % 2 == 0 {
        let h = j / 2;
        if (0..h).all(|i| negated(i, h + i)) {
            return StructureTag::VsEven;
        }
    } else {
        let h = (j - 1) / 2;
        if row(0).iter().all(|&x| x == 0) && (1..=h).all(|i| negated(i, h + i)) {
            return StructureTag::VsOdd;
        }
    }
    StructureTag::General
}

impl fmt::Display for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>5}")).collect();
            writeln!(f, "[{}]", cells.join(""))?;
        }
        Ok(())
    }
}

/// On-disk form of an exponent matrix.
///
/// `{"J":..,"L":..,"P":..|null,"rows":[[..],..],"tag":".."}`; rows are
/// written in order without modular reduction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    #[serde(rename = "J")]
    pub j: usize,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "P", default)]
    pub p: Option<i64>,
    pub rows: Vec<Vec<i64>>,
    #[serde(default = "general")]
    pub tag: StructureTag,
}

impl From<ExponentMatrix> for MatrixDocument {
    fn from(e: ExponentMatrix) -> Self {
        MatrixDocument::new(&e, None)
    }
}

impl TryFrom<MatrixDocument> for ExponentMatrix {
    type Error = Error;

    fn try_from(doc: MatrixDocument) -> Result<Self> {
        doc.to_matrix()
    }
}

fn general() -> StructureTag {
    StructureTag::General
}

impl MatrixDocument {
    pub fn new(e: &ExponentMatrix, p: Option<i64>) -> Self {
        MatrixDocument {
            j: e.j(),
            l: e.l(),
            p,
            rows: e.to_rows(),
            tag: e.tag(),
        }
    }

    /// Validates the dimensions; the stored tag is advisory and recomputed.
    pub fn to_matrix(&self) -> Result<ExponentMatrix> {
        ExponentMatrix::new(self.j, self.l, self.rows.clone())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix document serializes")
    }
}

/// Binary `J x L` pattern selecting which circulant blocks are present.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockMask {
    j: usize,
    l: usize,
    bits: Vec<bool>,
}

impl BlockMask {
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Self> {
        let j = rows.len();
        let l = rows.first().map_or(0, Vec::len);
        if j == 0 || l == 0 || rows.iter().any(|r| r.len() != l) {
            return Err(Error::Dimension("mask rows must be non-empty and equal length".into()));
        }
        let mut bits = Vec::with_capacity(j * l);
        for row in rows {
            for v in row {
                match v {
                    0 => bits.push(false),
                    1 => bits.push(true),
                    other => return Err(Error::Parse(format!("mask entry {other} is not 0/1"))),
                }
            }
        }
        Ok(BlockMask { j, l, bits })
    }

    pub fn full(j: usize, l: usize) -> Self {
        BlockMask {
            j,
            l,
            bits: vec![true; j * l],
        }
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn l(&self) -> usize {
        self.l
    }

    #[inline]
    pub fn present(&self, i: usize, r: usize) -> bool {
        self.bits[i * self.l + r]
    }

    pub fn row_weight(&self, i: usize) -> usize {
        (0..self.l).filter(|&r| self.present(i, r)).count()
    }

    pub fn col_weight(&self, r: usize) -> usize {
        (0..self.j).filter(|&i| self.present(i, r)).count()
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.bits
            .chunks(self.l)
            .map(|c| c.iter().map(|&b| u8::from(b)).collect())
            .collect()
    }

    pub(crate) fn check_dims(&self, e: &ExponentMatrix) -> Result<()> {
        if self.j != e.j() || self.l != e.l() {
            return Err(Error::Dimension(format!(
                "mask is {}x{}, matrix is {}x{}",
                self.j,
                self.l,
                e.j(),
                e.l()
            )));
        }
        Ok(())
    }
}

/// A closed block walk `(m_0, n_0), .., (m_{k-1}, n_{k-1})`: variable column
/// `n_t` connects through check row `m_t` to column `n_{t+1}` (indices mod k).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleWitness {
    pub length: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    #[serde(rename = "P")]
    pub p: i64,
    pub residue: i64,
}

impl CycleWitness {
    pub fn new(e: &ExponentMatrix, p: i64, rows: Vec<usize>, cols: Vec<usize>) -> Self {
        let residue = alternating_sum(e, p, &rows, &cols);
        CycleWitness {
            length: 2 * rows.len(),
            rows,
            cols,
            p,
            residue,
        }
    }

    /// Re-checks adjacency, block presence and the zero alternating sum.
    pub fn validate(&self, e: &ExponentMatrix, mask: Option<&BlockMask>) -> bool {
        let k = self.rows.len();
        if k < 2 || self.cols.len() != k || self.length != 2 * k {
            return false;
        }
        if self.rows.iter().any(|&m| m >= e.j()) || self.cols.iter().any(|&n| n >= e.l()) {
            return false;
        }
        for t in 0..k {
            let u = (t + 1) % k;
            if self.rows[t] == self.rows[u] || self.cols[t] == self.cols[u] {
                return false;
            }
            if let Some(mask) = mask {
                if !mask.present(self.rows[t], self.cols[t]) || !mask.present(self.rows[t], self.cols[u]) {
                    return false;
                }
            }
        }
        self.residue == 0 && alternating_sum(e, self.p, &self.rows, &self.cols) == 0
    }
}

/// `sum_t e(m_t, n_t) - e(m_t, n_{t+1})` reduced modulo `p`.
pub fn alternating_sum(e: &ExponentMatrix, p: i64, rows: &[usize], cols: &[usize]) -> i64 {
    let k = rows.len();
    let s: i64 = (0..k)
        .map(|t| e.get(rows[t], cols[t]) - e.get(rows[t], cols[(t + 1) % k]))
        .sum();
    modp(s, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_matrix_tags() {
        let e = ExponentMatrix::new(3, 2, vec![vec![0, 0], vec![0, 1], vec![0, 2]]).unwrap();
        assert_eq!(e.tag(), StructureTag::General);
        let e = ExponentMatrix::new(3, 3, vec![vec![0, 0, 0], vec![0, 1, 3], vec![0, -1, -3]]).unwrap();
        assert_eq!(e.tag(), StructureTag::VsOdd);
        let e = ExponentMatrix::new(4, 2, vec![vec![1, 2], vec![3, 4], vec![-1, -2], vec![-3, -4]])
            .unwrap();
        assert_eq!(e.tag(), StructureTag::VsEven);
    }

    #[test]
    fn is_vs_single_column() {
        let t = |rows: Vec<Vec<i64>>| is_vs(&ExponentMatrix::from_rows(rows).unwrap());
        assert_eq!(t(vec![vec![0], vec![5], vec![-5]]), StructureTag::VsOdd);
        assert_eq!(t(vec![vec![1], vec![-1]]), StructureTag::VsEven);
        assert_eq!(t(vec![vec![0], vec![1], vec![2]]), StructureTag::General);
        // congruence is over the integers, not modulo anything
        assert_eq!(t(vec![vec![0], vec![1], vec![4]]), StructureTag::General);
    }

    #[test]
    fn dimension_errors() {
        assert!(matches!(
            ExponentMatrix::new(3, 2, vec![vec![0, 0], vec![0, 1]]),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            ExponentMatrix::new(2, 2, vec![vec![0, 0], vec![0]]),
            Err(Error::Dimension(_))
        ));
        assert!(ExponentMatrix::from_rows(vec![]).is_err());
    }

    #[test]
    fn document_round_trip_keeps_signs() {
        let e = ExponentMatrix::from_rows(vec![vec![34, 3], vec![-34, -3]]).unwrap();
        let doc = MatrixDocument::new(&e, Some(38));
        let text = doc.to_json();
        assert_eq!(text, r#"{"J":2,"L":2,"P":38,"rows":[[34,3],[-34,-3]],"tag":"vs_even"}"#);
        let back = MatrixDocument::from_json(&text).unwrap().to_matrix().unwrap();
        assert_eq!(back, e);
        let doc = MatrixDocument::from_json(r#"{"J":3,"L":2,"P":null,"rows":[[0,0],[1,2]]}"#).unwrap();
        assert!(doc.to_matrix().is_err());
    }

    #[test]
    fn witness_validation() {
        let e = ExponentMatrix::from_rows(vec![vec![0, 0], vec![0, 0]]).unwrap();
        let w = CycleWitness::new(&e, 5, vec![0, 1], vec![0, 1]);
        assert!(w.validate(&e, None));
        let bad = CycleWitness::new(&e, 5, vec![0, 0], vec![0, 1]);
        assert!(!bad.validate(&e, None));
        let mut mask = BlockMask::full(2, 2);
        mask.bits[3] = false;
        assert!(!w.validate(&e, Some(&mask)));
    }
}
