//! Cycle-preserving transforms that bring exponent matrices into vertically
//! symmetric form, and the row-level Shifting / Reversion / Division moves on
//! matrices of the shape `[a_0, .., a_i]^T [0, 1, .., L-1]`.
//!
//! Every transform here is a composition of three moves that leave the cycle
//! structure of the lifted code untouched: adding a constant to a column,
//! permuting rows, and multiplying the whole matrix by a unit modulo `P`.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, modp};
use crate::error::{precondition, Error, Result};
use crate::matrix::ExponentMatrix;

/// VS form of `E = alphas^T betas` for odd `J >= 3` whose row multipliers are
/// symmetric about the middle one: `alpha_i + alpha_{J-1-i} = 2 alpha_mid`.
///
/// Returns `[0, a, -a]^T betas` with `a_k = alpha_{mid+1+k} - alpha_mid`.
pub fn vs_from_lemma1(alphas: &[i64], betas: &[i64]) -> Result<ExponentMatrix> {
    let j = alphas.len();
    if j < 3 || j % 2 == 0 {
        return precondition(format!("odd J >= 3 required, got J = {j}"));
    }
    let mid = (j - 1) / 2;
    for i in 0..mid {
        if alphas[i] + alphas[j - 1 - i] != 2 * alphas[mid] {
            return precondition(format!(
                "alpha_{i} + alpha_{} = {} differs from 2*alpha_{mid} = {}",
                j - 1 - i,
                alphas[i] + alphas[j - 1 - i],
                2 * alphas[mid]
            ));
        }
    }
    let a: Vec<i64> = alphas[mid + 1..].iter().map(|&x| x - alphas[mid]).collect();
    let mut column = vec![0];
    column.extend(&a);
    column.extend(a.iter().map(|&x| -x));
    ExponentMatrix::outer(&column, betas)
}

/// VS form of `E = alphas^T betas` for even `J >= 4` when every pair sum
/// `alpha_i + alpha_{J-1-i}` equals the same even constant `2x`.
///
/// Returns `[a, -a]^T betas` with `a_k = alpha_{J/2+k} - x`. An odd common
/// sum is rejected: no integer `x` exists.
pub fn vs_from_lemma2(alphas: &[i64], betas: &[i64]) -> Result<ExponentMatrix> {
    let j = alphas.len();
    if j < 4 || j % 2 == 1 {
        return precondition(format!("even J >= 4 required, got J = {j}"));
    }
    let sum = alphas[0] + alphas[j - 1];
    if let Some(i) = (1..j / 2).find(|&i| alphas[i] + alphas[j - 1 - i] != sum) {
        return precondition(format!(
            "pair sums differ: alpha_0 + alpha_{} = {sum}, alpha_{i} + alpha_{} = {}",
            j - 1,
            j - 1 - i,
            alphas[i] + alphas[j - 1 - i]
        ));
    }
    if sum % 2 != 0 {
        return precondition(format!("common pair sum {sum} is odd"));
    }
    let x = sum / 2;
    let a: Vec<i64> = alphas[j / 2..].iter().map(|&v| v - x).collect();
    let mut column = a.clone();
    column.extend(a.iter().map(|&v| -v));
    ExponentMatrix::outer(&column, betas)
}

/// VS form of the `4 x L` matrix with rows `[0, row1, row2, row1 + row2]`.
///
/// Column `r` is shifted by `-(row1[r] + row2[r]) / 2` when that sum is even,
/// and by `-(P + row1[r] + row2[r]) / 2` otherwise (only licensed for odd
/// `P`). The result is `[a; b; -a; -b]`, with `a` and `b` reduced into
/// `[0, P)` and the lower half written as literal negations.
pub fn vs_from_lemma3(row1: &[i64], row2: &[i64], p: i64) -> Result<ExponentMatrix> {
    if row1.len() != row2.len() || row1.is_empty() {
        return Err(Error::Dimension(format!(
            "rows have lengths {} and {}",
            row1.len(),
            row2.len()
        )));
    }
    if p < 1 {
        return Err(Error::CirculantSize(p));
    }
    let mut a = Vec::with_capacity(row1.len());
    let mut b = Vec::with_capacity(row1.len());
    for (r, (&x, &y)) in row1.iter().zip(row2).enumerate() {
        let s = x + y;
        let (ar, br) = if s % 2 == 0 {
            (-s / 2, (x - y) / 2)
        } else if p % 2 == 1 {
            (-(p + s) / 2, (x - y - p) / 2)
        } else {
            return precondition(format!(
                "column {r} has odd sum {s} and P = {p} is even"
            ));
        };
        a.push(modp(ar, p));
        b.push(modp(br, p));
    }
    let neg = |v: &[i64]| v.iter().map(|&x| -x).collect::<Vec<_>>();
    let rows = vec![a.clone(), b.clone(), neg(&a), neg(&b)];
    ExponentMatrix::from_rows(rows)
}

/// The `4 x L` source matrix `[0; row1; row2; row1 + row2]` that
/// [`vs_from_lemma3`] transforms.
pub fn lemma3_source(row1: &[i64], row2: &[i64]) -> Result<ExponentMatrix> {
    let sum: Vec<i64> = row1.iter().zip(row2).map(|(a, b)| a + b).collect();
    ExponentMatrix::from_rows(vec![vec![0; row1.len()], row1.to_vec(), row2.to_vec(), sum])
}

/// The matrix `[a_0, .., a_i]^T [0, 1, .., L-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialRowMatrix {
    pub shifts: Vec<i64>,
    pub l: usize,
}

impl MonomialRowMatrix {
    pub fn new(shifts: Vec<i64>, l: usize) -> Result<Self> {
        if shifts.is_empty() {
            return precondition("at least one row multiplier required");
        }
        if l == 0 {
            return Err(Error::Dimension("L must be positive".into()));
        }
        Ok(MonomialRowMatrix { shifts, l })
    }

    /// Entry `(m, r) = a_m * r`.
    pub fn to_matrix(&self) -> ExponentMatrix {
        let cols: Vec<i64> = (0..self.l as i64).collect();
        ExponentMatrix::outer(&self.shifts, &cols).expect("non-empty by construction")
    }

    fn with_shifts(&self, shifts: Vec<i64>) -> Self {
        MonomialRowMatrix { shifts, l: self.l }
    }
}

/// Shifting: subtract `a_0` from every multiplier.
pub fn shift_t(m: &MonomialRowMatrix) -> MonomialRowMatrix {
    let a0 = m.shifts[0];
    m.with_shifts(m.shifts.iter().map(|&a| a - a0).collect())
}

/// Reversion: `[a_i - a_i, a_i - a_{i-1}, .., a_i - a_0]`.
pub fn reverse_t(m: &MonomialRowMatrix) -> MonomialRowMatrix {
    let last = *m.shifts.last().expect("non-empty");
    m.with_shifts(m.shifts.iter().rev().map(|&a| last - a).collect())
}

/// Division by `d` with `gcd(d, P) = 1`; every multiplier must be divisible by `d`.
pub fn divide_t(m: &MonomialRowMatrix, d: i64, p: i64) -> Result<MonomialRowMatrix> {
    if d <= 0 {
        return precondition(format!("divisor must be positive, got {d}"));
    }
    if gcd(d, p) != 1 {
        return precondition(format!("gcd({d}, {p}) != 1"));
    }
    if let Some(&a) = m.shifts.iter().find(|&&a| a % d != 0) {
        return precondition(format!("{a} is not divisible by {d}"));
    }
    Ok(m.with_shifts(m.shifts.iter().map(|&a| a / d).collect()))
}

/// `[0, a, b]^T [0..L-1]` is 6-cycle free for `P >= b(L-1) + 1` when
/// `0 < a < b` and `b / gcd(b, a) >= L`.
pub fn check_p0(a: i64, b: i64, l: i64, p: i64) -> bool {
    0 < a && a < b && b / gcd(b, a) >= l && p > b * (l - 1)
}

/// `[0, a, b]^T [0..L-1]` is 6-cycle free when `c | a`, `gcd(b, c) = 1`
/// and `c | P`.
pub fn check_p1(a: i64, b: i64, c: i64, p: i64) -> bool {
    c != 0 && gcd(a, c) == c.abs() && gcd(b, c) == 1 && gcd(p, c) == c.abs()
}
