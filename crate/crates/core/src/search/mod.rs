//! Minimum-`P` search over VS matrices whose upper part is `[alpha_i * beta^r]`.
//!
//! With `alpha_0 = 1` only `J0 = floor((J-2)/2)` multipliers and `beta` are
//! free. Circulant sizes are tried in ascending order; within one `P` the
//! tuples `(alpha_1, .., alpha_J0, beta)` are enumerated lexicographically,
//! so the result does not depend on the number of worker threads.

mod governing;
mod tables;

use std::sync::atomic::{AtomicI64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use governing::{alpha_count, beta_powers, upper_rows, vs_search_4cycle_free, vs_search_6cycle_free, Coefficients, Sieve};
pub use tables::{published_rows, reproduce_tables, PublishedRow, TableComparison};

use crate::error::{precondition, Result};
use crate::girth::{girth_bfs, lift, GirthReport, DEFAULT_CAP};
use crate::matrix::ExponentMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopRule {
    /// Lexicographically first tuple at the smallest `P`.
    FirstHit,
    /// Every tuple at the smallest `P`.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    #[serde(rename = "J")]
    pub j: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub p_min: i64,
    pub p_max: i64,
    /// Inclusive range for each `alpha_i`, `i >= 1`; defaults to `2..=P-1`.
    pub alpha_domain: Option<(i64, i64)>,
    /// Inclusive range for `beta`; defaults to `2..=P-1`.
    pub beta_domain: Option<(i64, i64)>,
    pub stop: StopRule,
}

impl SearchSpec {
    pub fn new(j: usize, l: usize, p_min: i64, p_max: i64) -> Self {
        SearchSpec {
            j,
            l,
            p_min,
            p_max,
            alpha_domain: None,
            beta_domain: None,
            stop: StopRule::FirstHit,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(4..=7).contains(&self.j) {
            return precondition(format!("J must be in 4..=7, got {}", self.j));
        }
        if self.l < 2 {
            return precondition(format!("L must be at least 2, got {}", self.l));
        }
        if self.p_min < 2 {
            return precondition(format!("P range must start at 2 or above, got {}", self.p_min));
        }
        Ok(())
    }

    fn domain(range: Option<(i64, i64)>, p: i64) -> (i64, i64) {
        let (lo, hi) = range.unwrap_or((2, p - 1));
        (lo.max(0), hi.min(p - 1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    #[serde(rename = "P")]
    pub p: i64,
    /// `[1, alpha_1, .., alpha_J0]`.
    pub alphas: Vec<i64>,
    pub beta: i64,
    pub matrix: ExponentMatrix,
    /// Tanner-graph girth of the lifted code.
    pub girth: GirthReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub hit: Option<SearchHit>,
    /// All hits at `hit.p` for [`StopRule::Exhaustive`]; otherwise the single hit.
    pub hits: Vec<SearchHit>,
    /// Largest `P` known to be exhausted without success.
    pub exhausted_up_to: Option<i64>,
    /// Tuples that passed the equations but not the graph check. Always zero
    /// unless the equations are wrong; kept so a discrepancy is visible.
    pub oracle_rejections: usize,
}

/// VS completion of `E_U`: zero row on top when `J` is odd, then `E_U`, then `-E_U`.
pub fn vs_matrix(alphas: &[i64], beta: i64, j: usize, l: usize, p: i64) -> Result<ExponentMatrix> {
    ExponentMatrix::vs_completion(&upper_rows(alphas, beta, l, p), j % 2 == 1)
}

/// Both equation families pass; the literal forms.
pub fn vs_search_girth8(alphas: &[i64], beta: i64, j: usize, l: usize, p: i64) -> bool {
    vs_search_4cycle_free(alphas, beta, j, l, p) && vs_search_6cycle_free(alphas, beta, j, l, p)
}

struct PerP {
    hits: Vec<SearchHit>,
    rejections: usize,
    cancelled: bool,
}

/// Odometer over `count` digits in `[lo, hi]`; with `increasing` only
/// strictly increasing tuples are produced.
struct Tuples {
    digits: Vec<i64>,
    lo: i64,
    hi: i64,
    increasing: bool,
    done: bool,
}

impl Tuples {
    fn new(count: usize, lo: i64, hi: i64, increasing: bool) -> Self {
        let digits: Vec<i64> = if increasing {
            (0..count as i64).map(|k| lo + k).collect()
        } else {
            vec![lo; count]
        };
        let done = digits.last().is_some_and(|&d| d > hi) || lo > hi;
        Tuples { digits, lo, hi, increasing, done }
    }

    fn next(&mut self) -> Option<&[i64]> {
        if self.done {
            return None;
        }
        Some(&self.digits)
    }

    fn advance(&mut self) {
        let n = self.digits.len();
        for pos in (0..n).rev() {
            // largest value this digit may take while leaving room for the rest
            let cap = if self.increasing { self.hi - (n - 1 - pos) as i64 } else { self.hi };
            if self.digits[pos] < cap {
                self.digits[pos] += 1;
                for k in pos + 1..n {
                    self.digits[k] = if self.increasing { self.digits[k - 1] + 1 } else { self.lo };
                }
                return;
            }
        }
        self.done = true;
    }
}

fn search_one_p(spec: &SearchSpec, p: i64, best: &AtomicI64) -> Result<PerP> {
    let (alo, ahi) = SearchSpec::domain(spec.alpha_domain, p);
    let (blo, bhi) = SearchSpec::domain(spec.beta_domain, p);
    let sieves: Vec<(i64, Sieve)> = (blo..=bhi)
        .map(|b| (b, Sieve::new(b, spec.l, p)))
        .filter(|(_, s)| s.distinct())
        .collect();
    let mut out = PerP {
        hits: Vec::new(),
        rejections: 0,
        cancelled: false,
    };
    if sieves.is_empty() {
        return Ok(out);
    }
    let free = alpha_count(spec.j) - 1;
    // swapping two alphas permutes rows, so the first hit is increasing
    let increasing = spec.stop == StopRule::FirstHit;
    let mut tuples = Tuples::new(free, alo, ahi, increasing);
    let mut alphas = vec![1i64; free + 1];
    let mut since_check = 0u32;
    while let Some(t) = tuples.next() {
        alphas[1..].copy_from_slice(t);
        tuples.advance();
        since_check += 1;
        if since_check >= 64 {
            since_check = 0;
            if best.load(Ordering::Relaxed) < p {
                out.cancelled = true;
                return Ok(out);
            }
        }
        let coeffs = Coefficients::new(&alphas, spec.j, p);
        if coeffs.degenerate() {
            continue;
        }
        for (beta, sieve) in &sieves {
            if !sieve.cycle_free(&coeffs) {
                continue;
            }
            let matrix = vs_matrix(&alphas, *beta, spec.j, spec.l, p)?;
            let girth = girth_bfs(&lift(&matrix, p, None)?, DEFAULT_CAP);
            if !girth.at_least(8) {
                out.rejections += 1;
                continue;
            }
            out.hits.push(SearchHit {
                p,
                alphas: alphas.clone(),
                beta: *beta,
                matrix,
                girth,
            });
            if spec.stop == StopRule::FirstHit {
                best.fetch_min(p, Ordering::Relaxed);
                return Ok(out);
            }
        }
    }
    if !out.hits.is_empty() {
        best.fetch_min(p, Ordering::Relaxed);
    }
    Ok(out)
}

/// Smallest `P` in the spec's range admitting a VS matrix with no 4- or
/// 6-cycles, confirmed on the lifted graph.
pub fn search_min_p(spec: &SearchSpec) -> Result<SearchOutcome> {
    spec.validate()?;
    let best = AtomicI64::new(i64::MAX);
    let batch = (rayon::current_num_threads() as i64).max(1) * 2;
    let mut rejections = 0;
    let mut exhausted_up_to = None;
    let mut start = spec.p_min;
    while start <= spec.p_max {
        let end = (start + batch - 1).min(spec.p_max);
        let results: Result<Vec<PerP>> = (start..=end)
            .into_par_iter()
            .map(|p| search_one_p(spec, p, &best))
            .collect();
        for (p, r) in (start..=end).zip(results?) {
            rejections += r.rejections;
            if !r.hits.is_empty() {
                return Ok(SearchOutcome {
                    hit: r.hits.first().cloned(),
                    hits: r.hits,
                    exhausted_up_to,
                    oracle_rejections: rejections,
                });
            }
            if r.cancelled {
                break;
            }
            exhausted_up_to = Some(p);
        }
        start = end + 1;
    }
    Ok(SearchOutcome {
        hit: None,
        hits: Vec::new(),
        exhausted_up_to,
        oracle_rejections: rejections,
    })
}
