//! Integer sequences behind the explicit `J = 3` and `J = 4` constructions.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::arith::{first_duplicate_mod, modp};
use crate::error::{Error, Result};

/// Which column sequence a `[0, 1, -1]^T betas` matrix is built from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceKind {
    Es,
    Td,
    Custom(Vec<i64>),
}

impl SequenceKind {
    /// First `l` terms. Custom sequences must have at least `l` entries.
    pub fn terms(&self, l: usize) -> Result<Vec<i64>> {
        match self {
            SequenceKind::Es => Ok((0..l as u64).map(es).collect()),
            SequenceKind::Td => Ok((0..l as u64).map(td).collect()),
            SequenceKind::Custom(v) if v.len() >= l => Ok(v[..l].to_vec()),
            SequenceKind::Custom(v) => Err(Error::Dimension(format!(
                "custom sequence has {} terms, {l} needed",
                v.len()
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SequenceKind::Es => "es",
            SequenceKind::Td => "td",
            SequenceKind::Custom(_) => "custom",
        }
    }
}

/// Earliest sequence: `s(0) = 0`, `s(2m) = 3 s(m)`, `s(2m+1) = s(2m) + 1`.
///
/// Equivalently, the binary digits of `n` read in base 3.
pub fn es(n: u64) -> i64 {
    match n {
        0 => 0,
        n if n % 2 == 0 => 3 * es(n / 2),
        n => es(n - 1) + 1,
    }
}

/// Two-direction sequence: `(-1)^(n+1) (6 es(n / 4) + n mod 4)`.
pub fn td(n: u64) -> i64 {
    let magnitude = 6 * es(n / 4) + (n % 4) as i64;
    if n % 2 == 0 {
        -magnitude
    } else {
        magnitude
    }
}

/// Circulant size paired with the first `l` TD terms: `P(2) = 3`,
/// `P(l) = 3 P(l/2)` for even `l`, `P(l) = 3 P((l+1)/2) + (l mod 4) - 5` for odd `l`.
pub fn td_circ_size(l: u64) -> Result<i64> {
    if l < 2 {
        return Err(Error::Precondition(format!("P(L) is defined for L >= 2, got {l}")));
    }
    Ok(td_p(l))
}

fn td_p(l: u64) -> i64 {
    match l {
        2 => 3,
        l if l % 2 == 0 => 3 * td_p(l / 2),
        l => 3 * td_p(l.div_ceil(2)) + (l % 4) as i64 - 5,
    }
}

/// All pairwise sums `s_i + s_j` (`i <= j`) distinct modulo `p`.
pub fn is_sidon(seq: &[i64], p: i64) -> Result<bool> {
    check_modulus(p)?;
    if let Some(value) = first_duplicate_mod(seq, p) {
        return Err(Error::Duplicate { value, modulus: p });
    }
    let mut sums = HashSet::with_capacity(seq.len() * (seq.len() + 1) / 2);
    for i in 0..seq.len() {
        for j in i..seq.len() {
            if !sums.insert(modp(seq[i] + seq[j], p)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Two sets whose `2 L (L-1)` internal differences `x - y` (`x != y`, both
/// from the same set) are jointly distinct modulo `p`.
pub fn is_dds(d1: &[i64], d2: &[i64], p: i64) -> Result<bool> {
    check_modulus(p)?;
    if d1.len() != d2.len() {
        return Err(Error::Dimension(format!(
            "sets have sizes {} and {}",
            d1.len(),
            d2.len()
        )));
    }
    for set in [d1, d2] {
        if let Some(value) = first_duplicate_mod(set, p) {
            return Err(Error::Duplicate { value, modulus: p });
        }
    }
    let mut diffs = HashSet::new();
    for set in [d1, d2] {
        for (a, &x) in set.iter().enumerate() {
            for (b, &y) in set.iter().enumerate() {
                if a != b && !diffs.insert(modp(x - y, p)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn check_modulus(p: i64) -> Result<()> {
    if p < 1 {
        return Err(Error::CirculantSize(p));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn es_values() {
        assert_eq!(es(0), 0);
        assert_eq!(es(8), 27);
        assert_eq!(es(10), 30);
        let first: Vec<i64> = (0..9).map(es).collect();
        assert_eq!(first, vec![0, 1, 3, 4, 9, 10, 12, 13, 27]);
    }

    #[test]
    fn td_values() {
        assert_eq!(td(0), 0);
        assert_eq!(td(4), -6);
        assert_eq!(td(7), 9);
        let first: Vec<i64> = (0..9).map(td).collect();
        assert_eq!(first, vec![0, 1, -2, 3, -6, 7, -8, 9, -18]);
    }

    #[test]
    fn td_sizes() {
        assert_eq!(td_circ_size(2).unwrap(), 3);
        assert_eq!(td_circ_size(3).unwrap(), 7);
        assert_eq!(td_circ_size(5).unwrap(), 17);
        assert_eq!(td_circ_size(8).unwrap(), 27);
        assert_eq!(td_circ_size(9).unwrap(), 47);
        assert!(td_circ_size(1).is_err());
    }

    #[test]
    fn monotonicity() {
        for n in 1..2000u64 {
            assert!(es(n) > es(n - 1));
            assert!(td(n + 1).abs() > td(n).abs());
            assert_eq!(td(n).signum(), if n % 2 == 1 { 1 } else { -1 });
        }
    }

    #[test]
    fn sidon() {
        assert!(is_sidon(&[0, 1, 3], 7).unwrap());
        assert!(!is_sidon(&[0, 1, 2], 7).unwrap());
        assert!(is_sidon(&[0], 5).unwrap());
        assert!(matches!(is_sidon(&[0, 7], 7), Err(Error::Duplicate { .. })));
    }

    #[test]
    fn dds() {
        let d1 = [0, 31, 37, 55, 56, 83, 97, 99];
        let d2 = [0, 12, 17, 21, 47, 50, 57, 70];
        assert!(is_dds(&d1, &d2, 131).unwrap());
        assert!(is_dds(&[0, 1], &[0, 2], 9).unwrap());
        assert!(!is_dds(&[0, 1], &[0, 1], 5).unwrap());
        assert!(is_dds(&[0, 1], &[0], 5).is_err());
        assert!(is_dds(&[0, 5], &[0, 1], 5).is_err());
    }
}
