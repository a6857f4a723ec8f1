//! Two independent girth engines and the lifting that connects them.
//!
//! [`girth_exponent`] evaluates the cycle conditions on the exponent matrix;
//! [`girth_bfs`] searches the explicit lifted Tanner graph. They share no
//! code beyond the matrix types, so agreement between them is evidence.

mod bfs;
mod equations;
mod lift;
mod residues;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use bfs::girth_bfs;
pub use equations::{count_cycles, has_cycle};
pub use lift::{lift, LiftedCode};

use crate::error::{precondition, Result};
use crate::matrix::{BlockMask, CycleWitness, ExponentMatrix};

pub const DEFAULT_CAP: usize = 12;

/// Girth value relative to the largest cycle length examined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Girth {
    Exact(usize),
    /// No cycle of length up to the cap exists.
    AboveCap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GirthReport {
    pub girth: Girth,
    pub cap: usize,
    pub witness: Option<CycleWitness>,
}

impl GirthReport {
    pub fn is_exactly(&self, g: usize) -> bool {
        self.girth == Girth::Exact(g)
    }

    /// True when the girth is provably at least `g`.
    pub fn at_least(&self, g: usize) -> bool {
        match self.girth {
            Girth::Exact(x) => x >= g,
            Girth::AboveCap => self.cap + 2 >= g,
        }
    }

    /// The exact girth, if it is within the cap.
    pub fn value(&self) -> Option<usize> {
        match self.girth {
            Girth::Exact(x) => Some(x),
            Girth::AboveCap => None,
        }
    }
}

impl fmt::Display for GirthReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.girth {
            Girth::Exact(g) => write!(f, "{g}"),
            Girth::AboveCap => write!(f, ">{}", self.cap),
        }
    }
}

/// Smallest `2k <= cap` admitting a zero-sum closed block walk.
pub fn girth_exponent(e: &ExponentMatrix, p: i64, cap: usize, mask: Option<&BlockMask>) -> Result<GirthReport> {
    if cap < 4 {
        return precondition(format!("cap must be at least 4, got {cap}"));
    }
    for k in 2..=cap / 2 {
        if let Some(w) = has_cycle(e, p, k, mask)? {
            return Ok(GirthReport {
                girth: Girth::Exact(2 * k),
                cap,
                witness: Some(w),
            });
        }
    }
    Ok(GirthReport {
        girth: Girth::AboveCap,
        cap,
        witness: None,
    })
}

/// True iff the lifted code has no 4- or 6-cycles and does have an 8-cycle.
pub fn is_girth8(e: &ExponentMatrix, p: i64, mask: Option<&BlockMask>) -> Result<bool> {
    Ok(girth_exponent(e, p, 8, mask)?.is_exactly(8))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix_girth_four() {
        let e = ExponentMatrix::from_rows(vec![vec![0, 0], vec![0, 0]]).unwrap();
        let r = girth_exponent(&e, 7, DEFAULT_CAP, None).unwrap();
        assert!(r.is_exactly(4));
        let b = girth_bfs(&lift(&e, 7, None).unwrap(), DEFAULT_CAP);
        assert_eq!(b.girth, r.girth);
        assert!(girth_exponent(&e, 7, 2, None).is_err());
    }

    #[test]
    fn table_one_row_eight() {
        // J = 4, L = 8, [alpha_1, beta] = [23, 3], P = 53
        let p = 53i64;
        let upper: Vec<Vec<i64>> = [1i64, 23]
            .iter()
            .map(|&a| (0..8).map(|r| a * crate::arith::pow_mod(3, r, p) % p).collect())
            .collect();
        let e = ExponentMatrix::vs_completion(&upper, false).unwrap();
        assert!(girth_exponent(&e, p, DEFAULT_CAP, None).unwrap().is_exactly(8));
        assert!(girth_bfs(&lift(&e, p, None).unwrap(), DEFAULT_CAP).is_exactly(8));
    }
}
