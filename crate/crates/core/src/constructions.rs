//! Explicit VS exponent matrices and their circulant sizes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{first_duplicate_mod, modp};
use crate::equivalence::{vs_from_lemma2, vs_from_lemma3};
use crate::error::{precondition, Error, Result};
use crate::girth::{girth_exponent, GirthReport, DEFAULT_CAP};
use crate::matrix::ExponentMatrix;
use crate::sequences::{es, is_dds, is_sidon, td_circ_size, SequenceKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Sidon,
    Es,
    Td,
    GcdJ4,
    DdsJ4,
    MaxfnJ4,
    Theorem2J6,
    Custom,
}

/// Parameters a result was built from.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Provenance {
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    /// Girth check attached to conjectural constructions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub girth: Option<GirthReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionResult {
    pub matrix: ExponentMatrix,
    #[serde(rename = "P")]
    pub p: i64,
    pub method: Method,
    pub provenance: Provenance,
}

impl ConstructionResult {
    fn new(matrix: ExponentMatrix, p: i64, method: Method, provenance: Provenance) -> Self {
        ConstructionResult { matrix, p, method, provenance }
    }

    /// Girth with the default cap of 12.
    pub fn girth(&self) -> Result<GirthReport> {
        girth_exponent(&self.matrix, self.p, DEFAULT_CAP, None)
    }
}

fn three_row(betas: &[i64]) -> Result<ExponentMatrix> {
    ExponentMatrix::outer(&[0, 1, -1], betas)
}

/// `2 b_i != 2 b_j` for `i < j`, and `2 b_k != b_i + b_j` for distinct
/// `i, j, k`, all modulo `P`.
pub fn check_theorem1_conditions(betas: &[i64], p: i64) -> Result<bool> {
    if p < 1 {
        return Err(Error::CirculantSize(p));
    }
    if let Some(value) = first_duplicate_mod(betas, p) {
        return Err(Error::Duplicate { value, modulus: p });
    }
    let doubled: Vec<i64> = betas.iter().map(|&b| modp(2 * b, p)).collect();
    if first_duplicate_mod(&doubled, p).is_some() {
        return Ok(false);
    }
    // 2 b_k == b_i + b_j with i < j and k outside {i, j}
    let mut owner = std::collections::HashMap::with_capacity(doubled.len());
    for (k, &d) in doubled.iter().enumerate() {
        owner.insert(d, k);
    }
    for i in 0..betas.len() {
        for j in i + 1..betas.len() {
            if let Some(&k) = owner.get(&modp(betas[i] + betas[j], p)) {
                if k != i && k != j {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `[0, 1, -1]^T betas` at circulant size `P`.
pub fn construct_theorem1(betas: &[i64], p: i64) -> Result<ConstructionResult> {
    if betas.len() < 3 {
        return precondition(format!("need L >= 3 betas, got {}", betas.len()));
    }
    if !check_theorem1_conditions(betas, p)? {
        return precondition(format!("betas violate the girth-8 conditions at P = {p}"));
    }
    let method = if is_sidon(betas, p)? { Method::Sidon } else { Method::Custom };
    let provenance = Provenance {
        l: betas.len(),
        sequence: Some(if method == Method::Sidon { "sidon" } else { "custom" }.into()),
        ..Default::default()
    };
    Ok(ConstructionResult::new(three_row(betas)?, p, method, provenance))
}

/// Circulant size `2 es(L-1) + 1`.
pub fn es_circ_size(l: usize) -> i64 {
    2 * es(l as u64 - 1) + 1
}

/// First `L` terms of the earliest sequence at `P = 2 es(L-1) + 1`.
pub fn construct_es(l: usize) -> Result<ConstructionResult> {
    if l < 3 {
        return precondition(format!("need L >= 3, got {l}"));
    }
    let betas = SequenceKind::Es.terms(l)?;
    let provenance = Provenance {
        l,
        sequence: Some("es".into()),
        ..Default::default()
    };
    Ok(ConstructionResult::new(three_row(&betas)?, es_circ_size(l), Method::Es, provenance))
}

/// First `L` terms of the two-direction sequence at `P(L)`. The girth-8
/// claim is conjectural, so the result carries the girth check instead of
/// failing when it does not hold.
pub fn construct_td(l: usize) -> Result<ConstructionResult> {
    if l < 3 {
        return precondition(format!("need L >= 3, got {l}"));
    }
    let betas = SequenceKind::Td.terms(l)?;
    let p = td_circ_size(l as u64)?;
    let matrix = three_row(&betas)?;
    let girth = girth_exponent(&matrix, p, DEFAULT_CAP, None)?;
    let provenance = Provenance {
        l,
        sequence: Some("td".into()),
        girth: Some(girth),
        ..Default::default()
    };
    Ok(ConstructionResult::new(matrix, p, Method::Td, provenance))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepFailure {
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "P")]
    pub p: i64,
    pub report: GirthReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub checks: usize,
    pub failures: Vec<SweepFailure>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn collect(results: Vec<(usize, i64, GirthReport)>) -> Self {
        let checks = results.len();
        let failures = results
            .into_iter()
            .filter(|(_, _, g)| !g.is_exactly(8))
            .map(|(l, p, report)| SweepFailure { l, p, report })
            .collect();
        SweepReport { checks, failures }
    }

    fn merge(mut self, other: SweepReport) -> Self {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self
    }
}

fn girth8_cap(e: &ExponentMatrix, p: i64) -> Result<GirthReport> {
    girth_exponent(e, p, 8, None)
}

/// Checks the two-direction construction for every `L` in the range.
pub fn verify_conjecture1(l_min: usize, l_max: usize) -> Result<SweepReport> {
    let results: Result<Vec<_>> = (l_min.max(3)..=l_max)
        .into_par_iter()
        .map(|l| {
            let betas = SequenceKind::Td.terms(l)?;
            let p = td_circ_size(l as u64)?;
            Ok((l, p, girth8_cap(&three_row(&betas)?, p)?))
        })
        .collect();
    Ok(SweepReport::collect(results?))
}

/// Checks `[0, 1, -1]^T [s(0) .. s(L-1)]` at every odd `P` in `[P_x, P_hi]`
/// with `P_x = 2 es(L-1) + 1`.
pub fn verify_conjecture2(l: usize, seq: &SequenceKind, p_hi: i64) -> Result<SweepReport> {
    if l < 3 {
        return precondition(format!("need L >= 3, got {l}"));
    }
    let matrix = three_row(&seq.terms(l)?)?;
    let p_x = es_circ_size(l);
    let sizes: Vec<i64> = (p_x..=p_hi).step_by(2).collect();
    let results: Result<Vec<_>> = sizes
        .into_par_iter()
        .map(|p| Ok((l, p, girth8_cap(&matrix, p)?)))
        .collect();
    Ok(SweepReport::collect(results?))
}

/// The odd-`P` sweep over `L` in `[l_min, l_max]` with `P` in `[P_x, 2 P_x)`.
pub fn verify_conjecture2_range(l_min: usize, l_max: usize, seq: &SequenceKind) -> Result<SweepReport> {
    let mut total = SweepReport { checks: 0, failures: Vec::new() };
    for l in l_min.max(3)..=l_max {
        total = total.merge(verify_conjecture2(l, seq, 2 * es_circ_size(l) - 1)?);
    }
    Ok(total)
}

/// `[a, -a]^T [0 .. L-1]` with `a = [(L-1)/2, (L+1)/2]`, obtained from
/// `[0, 1, L, L+1]^T [0 .. L-1]`; girth 8 for `P >= L^2`.
pub fn construct_gcd_j4(l: usize, p: i64) -> Result<ConstructionResult> {
    if l < 3 || l % 2 == 0 {
        return precondition(format!("L must be odd and at least 3, got {l}"));
    }
    let li = l as i64;
    if p < li * li {
        return precondition(format!("P = {p} is below L^2 = {}", li * li));
    }
    let cols: Vec<i64> = (0..li).collect();
    let matrix = vs_from_lemma2(&[0, 1, li, li + 1], &cols)?;
    let provenance = Provenance { l, ..Default::default() };
    Ok(ConstructionResult::new(matrix, p, Method::GcdJ4, provenance))
}

/// VS form of `[0; d1; d2; d1 + d2]` for a DDS pair at odd `P`.
pub fn construct_dds_j4(d1: &[i64], d2: &[i64], p: i64) -> Result<ConstructionResult> {
    if p % 2 == 0 {
        return precondition(format!("P must be odd, got {p}"));
    }
    if !is_dds(d1, d2, p)? {
        return precondition(format!("the sets do not form a DDS modulo {p}"));
    }
    let matrix = vs_from_lemma3(d1, d2, p)?;
    let provenance = Provenance { l: d1.len(), ..Default::default() };
    Ok(ConstructionResult::new(matrix, p, Method::DdsJ4, provenance))
}

/// Rows `e(1, r) = r` and `e(2, r)` with `e(2, r+1) = e(2, r) + max(r+2, L-r)`.
pub fn maxfn_rows(l: usize) -> (Vec<i64>, Vec<i64>) {
    let li = l as i64;
    let row1: Vec<i64> = (0..li).collect();
    let mut row2 = Vec::with_capacity(l);
    let mut acc = 0;
    for r in 0..li {
        row2.push(acc);
        acc += (r + 2).max(li - r);
    }
    (row1, row2)
}

/// Smallest admissible size: the least odd `P >= ceil(3 L^2 / 4) + L - 1`.
pub fn maxfn_min_p(l: usize) -> i64 {
    let li = l as i64;
    let bound = (3 * li * li + 3) / 4 + li - 1;
    bound | 1
}

/// VS form of the max-function matrix at odd `P >= ceil(3 L^2 / 4) + L - 1`.
pub fn construct_maxfn_j4(l: usize, p: i64) -> Result<ConstructionResult> {
    if l < 2 {
        return precondition(format!("need L >= 2, got {l}"));
    }
    if p % 2 == 0 {
        return precondition(format!("P must be odd, got {p}"));
    }
    let li = l as i64;
    let bound = (3 * li * li + 3) / 4 + li - 1;
    if p < bound {
        return precondition(format!("P = {p} is below the bound {bound}"));
    }
    let (row1, row2) = maxfn_rows(l);
    let matrix = vs_from_lemma3(&row1, &row2, p)?;
    let provenance = Provenance { l, ..Default::default() };
    Ok(ConstructionResult::new(matrix, p, Method::MaxfnJ4, provenance))
}

/// Multipliers `a` and circulant size for the `J = 6` construction.
pub fn theorem2_params(l: usize) -> ([i64; 3], i64, &'static str) {
    let li = l as i64;
    match l % 6 {
        0 | 2 => ([2, li + 1, li + 3], (li + 2) * (li + 2) + 3, "i"),
        1 | 3 => ([2, li, li + 2], (li + 1) * (li + 1) + 3, "ii"),
        4 => ([2, li + 3, li + 5], (li + 1) * (li + 5), "iii"),
        _ => ([2, li + 2, li + 4], li * (li + 4), "iv"),
    }
}

/// `[a, -a]^T [0 .. L-1]` with the case chosen by `mod(L, 6)`.
pub fn construct_theorem2_j6(l: usize) -> Result<ConstructionResult> {
    if l < 7 {
        return precondition(format!("need L >= 7, got {l}"));
    }
    let (a, p, case) = theorem2_params(l);
    let column = [a[0], a[1], a[2], -a[0], -a[1], -a[2]];
    let cols: Vec<i64> = (0..l as i64).collect();
    let matrix = ExponentMatrix::outer(&column, &cols)?;
    let provenance = Provenance {
        l,
        case: Some(case.into()),
        ..Default::default()
    };
    Ok(ConstructionResult::new(matrix, p, Method::Theorem2J6, provenance))
}

/// Girth-8 checks for a batch of constructions, in parallel and in order.
pub fn verify_results(results: &[ConstructionResult]) -> Result<SweepReport> {
    let checked: Result<Vec<_>> = results
        .par_iter()
        .map(|c| Ok((c.matrix.l(), c.p, girth8_cap(&c.matrix, c.p)?)))
        .collect();
    Ok(SweepReport::collect(checked?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::girth::{girth_bfs, lift};
    use crate::matrix::StructureTag;

    fn both_engines_girth8(c: &ConstructionResult) -> bool {
        let eq = c.girth().unwrap();
        let bfs = girth_bfs(&lift(&c.matrix, c.p, None).unwrap(), DEFAULT_CAP);
        eq.is_exactly(8) && bfs.is_exactly(8)
    }

    #[test]
    fn theorem1_conditions() {
        assert!(check_theorem1_conditions(&[0, 1, 3], 7).unwrap());
        assert!(!check_theorem1_conditions(&[0, 1, 2], 9).unwrap());
        assert!(check_theorem1_conditions(&[0, 1], 5).unwrap());
        // 2*0 == 2*2 mod 4
        assert!(!check_theorem1_conditions(&[0, 1, 2], 4).unwrap());
        assert!(check_theorem1_conditions(&[0, 5], 5).is_err());
    }

    #[test]
    fn theorem1_construction() {
        let c = construct_theorem1(&[0, 1, 3], 7).unwrap();
        assert_eq!(c.method, Method::Sidon);
        assert!(both_engines_girth8(&c));
        let es9: Vec<i64> = (0..9).map(es).collect();
        let c = construct_theorem1(&es9, 55).unwrap();
        assert!(both_engines_girth8(&c));
        assert!(construct_theorem1(&[0, 1, 2], 9).is_err());
    }

    #[test]
    fn es_sizes() {
        assert_eq!(construct_es(7).unwrap().p, 25);
        assert_eq!(construct_es(9).unwrap().p, 55);
        assert_eq!(construct_es(3).unwrap().p, 7);
        assert!(both_engines_girth8(&construct_es(9).unwrap()));
        assert!(construct_es(2).is_err());
    }

    #[test]
    fn td_results() {
        let c = construct_td(9).unwrap();
        assert_eq!(c.p, 47);
        assert!(c.provenance.girth.as_ref().unwrap().is_exactly(8));
        assert!(both_engines_girth8(&c));
        assert_eq!(construct_td(8).unwrap().p, 27);
        let c = construct_td(3).unwrap();
        assert_eq!(c.p, 7);
        assert!(c.provenance.girth.unwrap().is_exactly(8));
    }

    #[test]
    fn conjecture2_small() {
        let r = verify_conjecture2(10, &SequenceKind::Es, 2 * es_circ_size(10) - 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.checks, (es_circ_size(10) as usize + 1) / 2);
        let r = verify_conjecture2(3, &SequenceKind::Es, 7).unwrap();
        assert_eq!((r.checks, r.passed()), (1, true));
        let r = verify_conjecture2(10, &SequenceKind::Es, es_circ_size(10) - 2).unwrap();
        assert_eq!(r.checks, 0);
    }

    #[test]
    fn gcd() {
        let c = construct_gcd_j4(5, 25).unwrap();
        assert_eq!(c.matrix.row(0), &[0, 2, 4, 6, 8]);
        assert_eq!(c.matrix.row(1), &[0, 3, 6, 9, 12]);
        assert_eq!(c.matrix.tag(), StructureTag::VsEven);
        assert!(both_engines_girth8(&c));
        assert!(both_engines_girth8(&construct_gcd_j4(9, 81).unwrap()));
        assert!(construct_gcd_j4(4, 16).is_err());
        assert!(construct_gcd_j4(5, 24).is_err());
    }

    #[test]
    fn dds() {
        let c = construct_dds_j4(&[0, 1], &[0, 3], 15).unwrap();
        assert_eq!(c.matrix.j(), 4);
        assert!(c.girth().unwrap().at_least(8));
        assert!(construct_dds_j4(&[0, 0], &[0, 3], 15).is_err());
        assert!(construct_dds_j4(&[0, 1], &[0, 3], 16).is_err());
        assert!(construct_dds_j4(&[0, 1], &[0, 1], 15).is_err());
    }

    #[test]
    fn maxfn() {
        let (r1, r2) = maxfn_rows(4);
        assert_eq!(r2, vec![0, 4, 7, 11]);
        let sum: Vec<i64> = r1.iter().zip(&r2).map(|(a, b)| a + b).collect();
        assert_eq!(sum, vec![0, 5, 9, 14]);
        assert_eq!(maxfn_min_p(4), 15);
        assert_eq!(maxfn_min_p(8), 55);
        assert!(both_engines_girth8(&construct_maxfn_j4(4, 15).unwrap()));
        assert!(both_engines_girth8(&construct_maxfn_j4(8, 55).unwrap()));
        assert!(construct_maxfn_j4(8, 54).is_err());
        assert!(construct_maxfn_j4(8, 53).is_err());
    }

    #[test]
    fn theorem2() {
        for (l, a, p) in [(11, [2, 13, 15], 165), (12, [2, 13, 15], 199), (10, [2, 13, 15], 165)] {
            let c = construct_theorem2_j6(l).unwrap();
            assert_eq!(c.p, p);
            assert_eq!(c.matrix.row(1)[1], a[1]);
            assert_eq!(c.matrix.row(2)[1], a[2]);
            assert_eq!(c.matrix.tag(), StructureTag::VsEven);
            assert!(both_engines_girth8(&c));
        }
        assert_eq!(theorem2_params(7).1, 67);
        assert!(construct_theorem2_j6(6).is_err());
    }
}
