//! Code materialization and evaluation: alist files, masking, GF(2) rank,
//! sum-product decoding and Monte Carlo simulation.

mod alist;
mod sim;
mod spa;

pub use alist::{export_alist, parse_alist, SparseMatrix};
pub use sim::{code_rate, noise_sigma, simulate, PointStats, SimConfig, SimStats};
pub use spa::{spa_decode, DecodeResult, Decoder, Workspace, CLIP};

use crate::error::{precondition, Result};
use crate::girth::LiftedCode;
use crate::matrix::{BlockMask, ExponentMatrix};

/// Pairs `E` with a mask after checking that no block row or column is
/// masked out entirely. Entries under zeros are kept but never lifted.
pub fn apply_mask(e: &ExponentMatrix, mask: &BlockMask) -> Result<(ExponentMatrix, BlockMask)> {
    mask.check_dims(e)?;
    if let Some(i) = (0..mask.j()).find(|&i| mask.row_weight(i) == 0) {
        return precondition(format!("mask row {i} is all zero"));
    }
    if let Some(r) = (0..mask.l()).find(|&r| mask.col_weight(r) == 0) {
        return precondition(format!("mask column {r} is all zero"));
    }
    Ok((e.clone(), mask.clone()))
}

/// Rank of the parity-check matrix over GF(2).
pub fn gf2_rank(code: &LiftedCode) -> usize {
    let words = code.n().div_ceil(64);
    let mut rows: Vec<Vec<u64>> = (0..code.m())
        .map(|c| {
            let mut row = vec![0u64; words];
            for v in code.check_neighbors(c) {
                row[v / 64] |= 1 << (v % 64);
            }
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..code.n() {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            if row[w] & bit != 0 {
                for (x, y) in row[w..].iter_mut().zip(&pivot_row[w..]) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::girth::lift;

    #[test]
    fn mask_checks() {
        let e = ExponentMatrix::outer(&[1, 2, -1, -2], &[0, 1, 2]).unwrap();
        let full = BlockMask::full(4, 3);
        let (e2, m2) = apply_mask(&e, &full).unwrap();
        assert_eq!(lift(&e2, 7, Some(&m2)).unwrap(), lift(&e, 7, None).unwrap());
        let hole = BlockMask::new(vec![vec![1, 0, 1], vec![1, 0, 1], vec![1, 0, 1], vec![1, 0, 1]]).unwrap();
        assert!(apply_mask(&e, &hole).is_err());
        let empty_row = BlockMask::new(vec![vec![0, 0, 0], vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]]).unwrap();
        assert!(apply_mask(&e, &empty_row).is_err());
        assert!(apply_mask(&e, &BlockMask::full(3, 3)).is_err());
    }

    #[test]
    fn regular_mask_degrees() {
        // each block row keeps 6 of 12 blocks, each block column 3 of 6
        let rows: Vec<Vec<u8>> = (0..6)
            .map(|i| (0..12).map(|r| u8::from((r + i) % 2 == 0)).collect())
            .collect();
        let mask = BlockMask::new(rows).unwrap();
        let e = ExponentMatrix::outer(&[2, 13, 15, -2, -13, -15], &(0..12).collect::<Vec<_>>()).unwrap();
        let (e, mask) = apply_mask(&e, &mask).unwrap();
        let code = lift(&e, 19, Some(&mask)).unwrap();
        assert!((0..code.m()).all(|c| code.row_weight(c) == 6));
        assert!((0..code.n()).all(|v| code.col_weight(v) == 3));
        assert_eq!(code.ones(), 36 * 19);
    }

    #[test]
    fn rank_against_elimination_by_hand() {
        // two identical block rows: rank P
        let e = ExponentMatrix::from_rows(vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert_eq!(gf2_rank(&lift(&e, 5, None).unwrap()), 5);
        // [0,0],[0,1] at P = 3: the all-ones vector on the checks of both
        // block rows sums to zero, so rank is 2P - 1
        let e = ExponentMatrix::from_rows(vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(gf2_rank(&lift(&e, 3, None).unwrap()), 5);
        let e = ExponentMatrix::from_rows(vec![vec![0]]).unwrap();
        assert_eq!(gf2_rank(&lift(&e, 4, None).unwrap()), 4);
    }
}
