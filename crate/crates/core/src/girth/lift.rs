use crate::arith::modp;
use crate::error::{Error, Result};
use crate::matrix::{BlockMask, CycleWitness, ExponentMatrix};

/// A `JP x LP` binary parity-check matrix made of `P x P` circulant
/// permutation blocks, stored as one shift (or absence) per block.
///
/// Variable `n*P + x` is column `x` of block column `n`; check `m*P + i` is
/// row `i` of block row `m`. Block `(m, n)` with shift `s` has its ones at
/// `(i, (i + s) mod P)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedCode {
    p: usize,
    j: usize,
    l: usize,
    shifts: Vec<Option<u32>>,
}

/// Replaces every entry `e` by the CPM of shift `e mod P`, or by a zero block
/// where `mask` is 0.
pub fn lift(e: &ExponentMatrix, p: i64, mask: Option<&BlockMask>) -> Result<LiftedCode> {
    if p < 2 || p > u32::MAX as i64 {
        return Err(Error::CirculantSize(p));
    }
    if let Some(mask) = mask {
        mask.check_dims(e)?;
    }
    let mut shifts = Vec::with_capacity(e.j() * e.l());
    for i in 0..e.j() {
        for r in 0..e.l() {
            let on = mask.is_none_or(|m| m.present(i, r));
            shifts.push(on.then(|| modp(e.get(i, r), p) as u32));
        }
    }
    Ok(LiftedCode {
        p: p as usize,
        j: e.j(),
        l: e.l(),
        shifts,
    })
}

impl LiftedCode {
    pub fn circulant_size(&self) -> usize {
        self.p
    }

    pub fn block_rows(&self) -> usize {
        self.j
    }

    pub fn block_cols(&self) -> usize {
        self.l
    }

    /// Number of variable nodes (columns), `L * P`.
    pub fn n(&self) -> usize {
        self.l * self.p
    }

    /// Number of check nodes (rows), `J * P`.
    pub fn m(&self) -> usize {
        self.j * self.p
    }

    #[inline]
    pub fn shift(&self, m: usize, n: usize) -> Option<usize> {
        self.shifts[m * self.l + n].map(|s| s as usize)
    }

    pub fn present_blocks(&self) -> usize {
        self.shifts.iter().filter(|s| s.is_some()).count()
    }

    /// Total number of ones in the parity-check matrix.
    pub fn ones(&self) -> usize {
        self.present_blocks() * self.p
    }

    /// Variables adjacent to check `c`, in increasing order.
    pub fn check_neighbors(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        let (m, i) = (c / self.p, c % self.p);
        (0..self.l).filter_map(move |n| self.shift(m, n).map(|s| n * self.p + (i + s) % self.p))
    }

    /// Checks adjacent to variable `v`, in increasing order.
    pub fn var_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let (n, x) = (v / self.p, v % self.p);
        (0..self.j)
            .filter_map(move |m| self.shift(m, n).map(|s| m * self.p + (x + self.p - s) % self.p))
    }

    pub fn row_weight(&self, c: usize) -> usize {
        self.check_neighbors(c).count()
    }

    pub fn col_weight(&self, v: usize) -> usize {
        self.var_neighbors(v).count()
    }

    /// Dense 0/1 rows; intended for small codes and tests.
    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        (0..self.m())
            .map(|c| {
                let mut row = vec![0u8; self.n()];
                for v in self.check_neighbors(c) {
                    row[v] = 1;
                }
                row
            })
            .collect()
    }

    /// `H x^T` over GF(2) is zero.
    pub fn is_codeword(&self, bits: &[u8]) -> bool {
        bits.len() == self.n()
            && (0..self.m()).all(|c| self.check_neighbors(c).fold(0u8, |acc, v| acc ^ bits[v]) == 0)
    }

    /// Builds a witness from block indices, evaluating the alternating sum
    /// on the stored shifts.
    pub(crate) fn witness(&self, rows: Vec<usize>, cols: Vec<usize>) -> CycleWitness {
        let k = rows.len();
        let p = self.p as i64;
        let s: i64 = (0..k)
            .map(|t| {
                let a = self.shift(rows[t], cols[t]).expect("present block") as i64;
                let b = self.shift(rows[t], cols[(t + 1) % k]).expect("present block") as i64;
                a - b
            })
            .sum();
        CycleWitness {
            length: 2 * k,
            rows,
            cols,
            p,
            residue: modp(s, p),
        }
    }
}
