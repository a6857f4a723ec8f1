//! Cycle detection directly on the exponent matrix.
//!
//! A `2k`-cycle of the lifted code corresponds to a closed block walk
//! `(m_0, n_0), .., (m_{k-1}, n_{k-1})` with `m_t != m_{t+1}`,
//! `n_t != n_{t+1}` (indices mod k) and
//! `sum_t e(m_t, n_t) - e(m_t, n_{t+1}) = 0 (mod P)`.
//!
//! Walks are canonicalized so that `m_0` is the smallest row on the walk.
//! The reported witness is the first one in the order
//! `(m_0, n_0, n_1, m_1, n_2, m_2, ..)`, i.e. walk order.
//!
//! For `k >= 4` a zero-sum walk need not be a simple cycle, but it always
//! contains one of length at most `2k`; scanning `k` upwards therefore yields
//! the exact girth.

use super::residues::ResidueSet;
use crate::arith::modp;
use crate::error::{precondition, Result};
use crate::matrix::{BlockMask, CycleWitness, ExponentMatrix};

/// Reduced block residues and presence flags.
pub(crate) struct Blocks {
    j: usize,
    l: usize,
    p: usize,
    res: Vec<usize>,
    present: Vec<bool>,
}

impl Blocks {
    pub fn new(e: &ExponentMatrix, p: i64, mask: Option<&BlockMask>) -> Result<Self> {
        if p < 2 {
            return Err(crate::Error::CirculantSize(p));
        }
        if let Some(mask) = mask {
            mask.check_dims(e)?;
        }
        let (j, l) = (e.j(), e.l());
        let mut res = Vec::with_capacity(j * l);
        let mut present = Vec::with_capacity(j * l);
        for i in 0..j {
            for r in 0..l {
                res.push(modp(e.get(i, r), p) as usize);
                present.push(mask.is_none_or(|m| m.present(i, r)));
            }
        }
        Ok(Blocks {
            j,
            l,
            p: p as usize,
            res,
            present,
        })
    }

    #[inline]
    fn r(&self, m: usize, n: usize) -> usize {
        self.res[m * self.l + n]
    }

    #[inline]
    fn on(&self, m: usize, n: usize) -> bool {
        self.present[m * self.l + n]
    }

    /// `(e(a, n) - e(b, n)) mod P`.
    #[inline]
    fn diff(&self, a: usize, b: usize, n: usize) -> usize {
        (self.r(a, n) + self.p - self.r(b, n)) % self.p
    }
}

/// Searches for a closed block walk of length `2k` with zero alternating sum.
///
/// Returns the first witness in walk order, or `None`. For `k` in `{2, 3}` a
/// witness is always a genuine cycle of the lifted graph.
pub fn has_cycle(
    e: &ExponentMatrix,
    p: i64,
    k: usize,
    mask: Option<&BlockMask>,
) -> Result<Option<CycleWitness>> {
    if k < 2 {
        return precondition(format!("cycle half-length k must be >= 2, got {k}"));
    }
    let b = Blocks::new(e, p, mask)?;
    let exists = match k {
        2 => four_cycle_exists(&b),
        3 => six_cycle_exists(&b),
        _ => true,
    };
    if !exists {
        return Ok(None);
    }
    Ok(first_walk(&b, k).map(|(rows, cols)| CycleWitness::new(e, p, rows, cols)))
}

/// Number of `2k`-cycles in the lifted graph for `k` in `{2, 3}`.
///
/// Each zero-sum block cycle lifts to exactly `P` distinct cycles.
pub fn count_cycles(e: &ExponentMatrix, p: i64, k: usize, mask: Option<&BlockMask>) -> Result<u64> {
    let b = Blocks::new(e, p, mask)?;
    let classes = match k {
        2 => count_four(&b),
        3 => count_six(&b),
        _ => return precondition(format!("cycle counting supports k = 2 or 3, got {k}")),
    };
    Ok(classes * b.p as u64)
}

/// Stamped table of column buckets keyed by residue.
struct Buckets {
    stamp: Vec<u32>,
    head: Vec<u32>,
    next: Vec<u32>,
    cur: u32,
}

const NIL: u32 = u32::MAX;

impl Buckets {
    fn new(p: usize, l: usize) -> Self {
        Buckets {
            stamp: vec![0; p],
            head: vec![NIL; p],
            next: vec![NIL; l],
            cur: 0,
        }
    }

    fn reset(&mut self) {
        self.cur += 1;
    }

    fn push(&mut self, key: usize, n: usize) {
        if self.stamp[key] != self.cur {
            self.stamp[key] = self.cur;
            self.head[key] = NIL;
        }
        self.next[n] = self.head[key];
        self.head[key] = n as u32;
    }

    fn iter(&self, key: usize) -> impl Iterator<Item = usize> + '_ {
        let mut at = if self.stamp[key] == self.cur {
            self.head[key]
        } else {
            NIL
        };
        std::iter::from_fn(move || {
            (at != NIL).then(|| {
                let n = at as usize;
                at = self.next[n];
                n
            })
        })
    }
}

fn four_cycle_exists(b: &Blocks) -> bool {
    let mut seen = vec![u32::MAX; b.p];
    let mut stamp = 0u32;
    for m0 in 0..b.j {
        for m1 in m0 + 1..b.j {
            stamp += 1;
            for n in 0..b.l {
                if b.on(m0, n) && b.on(m1, n) {
                    let d = b.diff(m0, m1, n);
                    if seen[d] == stamp {
                        return true;
                    }
                    seen[d] = stamp;
                }
            }
        }
    }
    false
}

fn count_four(b: &Blocks) -> u64 {
    let mut total = 0u64;
    let mut counts = vec![0u64; b.p];
    for m0 in 0..b.j {
        for m1 in m0 + 1..b.j {
            let keys: Vec<usize> = (0..b.l)
                .filter(|&n| b.on(m0, n) && b.on(m1, n))
                .map(|n| b.diff(m0, m1, n))
                .collect();
            for &d in &keys {
                total += counts[d];
                counts[d] += 1;
            }
            for &d in &keys {
                counts[d] = 0;
            }
        }
    }
    total
}

/// Visits every canonical 6-walk `(m0 < m1, m2; n0, n1, n2)` with zero sum.
/// The sum splits as `D_02(n0) + D_10(n1) + D_21(n2)` with
/// `D_ab(n) = e(a, n) - e(b, n)`.
fn for_each_six(b: &Blocks, mut visit: impl FnMut() -> bool) {
    let mut buckets = Buckets::new(b.p, b.l);
    for m0 in 0..b.j {
        for m1 in m0 + 1..b.j {
            for m2 in m0 + 1..b.j {
                if m2 == m1 {
                    continue;
                }
                buckets.reset();
                for n2 in 0..b.l {
                    if b.on(m2, n2) && b.on(m1, n2) {
                        buckets.push(b.diff(m2, m1, n2), n2);
                    }
                }
                for n0 in 0..b.l {
                    if !(b.on(m0, n0) && b.on(m2, n0)) {
                        continue;
                    }
                    let d02 = b.diff(m0, m2, n0);
                    for n1 in 0..b.l {
                        if n1 == n0 || !(b.on(m1, n1) && b.on(m0, n1)) {
                            continue;
                        }
                        let s = (d02 + b.diff(m1, m0, n1)) % b.p;
                        let target = (b.p - s) % b.p;
                        for n2 in buckets.iter(target) {
                            if n2 != n0 && n2 != n1 && visit() {
                                return;
                            }
                        }
                    }
                }
            }
        }
    }
}

fn six_cycle_exists(b: &Blocks) -> bool {
    let mut found = false;
    for_each_six(b, || {
        found = true;
        true
    });
    found
}

fn count_six(b: &Blocks) -> u64 {
    let mut n = 0u64;
    for_each_six(b, || {
        n += 1;
        false
    });
    // each cycle is seen once per orientation
    n / 2
}

/// Residue tables for walks anchored at `(m0, n0)`.
///
/// `tables[t][n * J + mp]` holds every residue reachable by the remainder of
/// the walk `sum_{u >= t} e(m_u, n_u) - e(m_u, n_{u+1})` given that the walk
/// sits on column `n_t = n` having arrived from row `m_{t-1} = mp`.
struct WalkTables {
    k: usize,
    m0: usize,
    n0: usize,
    tables: Vec<Vec<ResidueSet>>,
}

impl WalkTables {
    fn build(b: &Blocks, k: usize, m0: usize, n0: usize) -> Self {
        let (j, l, p) = (b.j, b.l, b.p);
        let empty = || vec![ResidueSet::new(p); l * j];
        let mut tables: Vec<Vec<ResidueSet>> = (0..k).map(|_| Vec::new()).collect();

        let mut last = empty();
        for n in (0..l).filter(|&n| n != n0) {
            for m in (m0 + 1..j).filter(|&m| b.on(m, n) && b.on(m, n0)) {
                let v = (b.r(m, n) + p - b.r(m, n0)) % p;
                for mp in (m0..j).filter(|&mp| mp != m) {
                    last[n * j + mp].insert(v);
                }
            }
        }
        tables[k - 1] = last;

        let mut g = vec![ResidueSet::new(p); l * j];
        for t in (1..k - 1).rev() {
            for set in g.iter_mut() {
                set.clear();
            }
            let next = &tables[t + 1];
            for n in 0..l {
                for m in (m0..j).filter(|&m| b.on(m, n)) {
                    let slot = &mut g[n * j + m];
                    for n2 in (0..l).filter(|&n2| n2 != n && b.on(m, n2)) {
                        let src = &next[n2 * j + m];
                        if !src.is_empty() {
                            let shift = (b.r(m, n) + p - b.r(m, n2)) % p;
                            slot.union_translated(src, shift);
                        }
                    }
                }
            }
            let mut cur = empty();
            for n in 0..l {
                for mp in m0..j {
                    let dst = &mut cur[n * j + mp];
                    for m in (m0..j).filter(|&m| m != mp) {
                        dst.union_with(&g[n * j + m]);
                    }
                }
            }
            tables[t] = cur;
        }
        WalkTables { k, m0, n0, tables }
    }

    fn reachable(&self, t: usize, n: usize, mp: usize, j: usize, x: usize) -> bool {
        self.tables[t][n * j + mp].contains(x)
    }

    /// Completes a walk from column `n` at step `t` whose remainder must sum
    /// to `target`. Only called when the tables say it is possible.
    fn descend(&self, b: &Blocks, t: usize, n: usize, mp: usize, target: usize, rows: &mut Vec<usize>, cols: &mut Vec<usize>) -> bool {
        let (j, l, p) = (b.j, b.l, b.p);
        for m in (self.m0..j).filter(|&m| m != mp && b.on(m, n)) {
            if t == self.k - 1 {
                if m != self.m0 && n != self.n0 && b.on(m, self.n0) && (b.r(m, n) + p - b.r(m, self.n0)) % p == target {
                    rows.push(m);
                    return true;
                }
                continue;
            }
            for n2 in (0..l).filter(|&n2| n2 != n && b.on(m, n2)) {
                let step = (b.r(m, n) + p - b.r(m, n2)) % p;
                let rest = (target + p - step) % p;
                if self.reachable(t + 1, n2, m, j, rest) {
                    rows.push(m);
                    cols.push(n2);
                    if self.descend(b, t + 1, n2, m, rest, rows, cols) {
                        return true;
                    }
                    rows.pop();
                    cols.pop();
                }
            }
        }
        false
    }
}

/// First zero-sum closed walk of length `2k` in walk order.
pub(crate) fn first_walk(b: &Blocks, k: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let p = b.p;
    for m0 in 0..b.j {
        for n0 in (0..b.l).filter(|&n0| b.on(m0, n0)) {
            let tables = WalkTables::build(b, k, m0, n0);
            for n1 in (0..b.l).filter(|&n1| n1 != n0 && b.on(m0, n1)) {
                let step = (b.r(m0, n0) + p - b.r(m0, n1)) % p;
                let target = (p - step) % p;
                if tables.reachable(1, n1, m0, b.j, target) {
                    let mut rows = vec![m0];
                    let mut cols = vec![n0, n1];
                    let done = tables.descend(b, 1, n1, m0, target, &mut rows, &mut cols);
                    debug_assert!(done, "tables promised a walk");
                    if done {
                        return Some((rows, cols));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::alternating_sum;

    fn m(rows: Vec<Vec<i64>>) -> ExponentMatrix {
        ExponentMatrix::from_rows(rows).unwrap()
    }

    /// Every closed block walk of length 2k, enumerated without pruning.
    fn brute_force(e: &ExponentMatrix, p: i64, k: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
        let (j, l) = (e.j(), e.l());
        let mut out = Vec::new();
        let total_rows = j.pow(k as u32);
        let total_cols = l.pow(k as u32);
        for rc in 0..total_rows {
            let rows: Vec<usize> = (0..k).map(|t| rc / j.pow(t as u32) % j).collect();
            if (0..k).any(|t| rows[t] == rows[(t + 1) % k]) {
                continue;
            }
            for cc in 0..total_cols {
                let cols: Vec<usize> = (0..k).map(|t| cc / l.pow(t as u32) % l).collect();
                if (0..k).any(|t| cols[t] == cols[(t + 1) % k]) {
                    continue;
                }
                if alternating_sum(e, p, &rows, &cols) == 0 {
                    out.push((rows.clone(), cols));
                }
            }
        }
        out
    }

    #[test]
    fn small_examples() {
        let zeros = m(vec![vec![0, 0], vec![0, 0]]);
        let w = has_cycle(&zeros, 5, 2, None).unwrap().unwrap();
        assert_eq!((w.rows.clone(), w.cols.clone()), (vec![0, 1], vec![0, 1]));
        assert!(w.validate(&zeros, None));

        let e = m(vec![vec![0, 0], vec![0, 1]]);
        assert!(has_cycle(&e, 3, 2, None).unwrap().is_none());
        // two rows cannot carry a walk of odd half-length
        assert!(has_cycle(&e, 3, 3, None).unwrap().is_none());
        assert!(brute_force(&e, 3, 3).is_empty());
        let w = has_cycle(&e, 3, 6, None).unwrap().unwrap();
        assert_eq!(w.rows, vec![0, 1, 0, 1, 0, 1]);
        assert!(w.validate(&e, None));
        assert!(has_cycle(&e, 3, 1, None).is_err());
    }

    #[test]
    fn agrees_with_brute_force_on_fixed_matrices() {
        let mats = [
            (m(vec![vec![0, 1, 2], vec![0, 3, 5], vec![0, 4, 1]]), 7),
            (m(vec![vec![0, 0, 0, 0], vec![0, 1, 3, 7], vec![0, 2, 6, 14]]), 11),
            (m(vec![vec![0, 1, 2], vec![0, 2, 4]]), 6),
        ];
        for (e, p) in &mats {
            for k in 2..=4 {
                let all = brute_force(e, *p, k);
                let got = has_cycle(e, *p, k, None).unwrap();
                assert_eq!(got.is_some(), !all.is_empty(), "k={k} p={p}");
            }
            for k in 2..=3 {
                let all = brute_force(e, *p, k);
                // ordered walks: k rotations x 2 orientations per cycle
                let classes = all.len() as u64 / (2 * k as u64);
                assert_eq!(count_cycles(e, *p, k, None).unwrap(), classes * *p as u64);
            }
        }
    }

    #[test]
    fn witness_is_first_in_walk_order() {
        let e = m(vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 4]]);
        for p in [3, 4, 5] {
            for k in 2..=4 {
                let mut all: Vec<_> = brute_force(&e, p, k)
                    .into_iter()
                    .filter(|(rows, _)| rows.iter().all(|&r| r >= rows[0]))
                    .map(|(rows, cols)| {
                        let mut key = vec![rows[0], cols[0]];
                        for t in 1..k {
                            key.push(cols[t]);
                            key.push(rows[t]);
                        }
                        (key, rows, cols)
                    })
                    .collect();
                all.sort();
                let got = has_cycle(&e, p, k, None).unwrap();
                match all.first() {
                    None => assert!(got.is_none()),
                    Some((_, rows, cols)) => {
                        let w = got.unwrap();
                        assert_eq!((&w.rows, &w.cols), (rows, cols), "p={p} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn masked_blocks_are_skipped() {
        let zeros = m(vec![vec![0, 0, 0], vec![0, 0, 0]]);
        let mask = BlockMask::new(vec![vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        assert!(has_cycle(&zeros, 5, 2, Some(&mask)).unwrap().is_none());
        assert_eq!(count_cycles(&zeros, 5, 2, Some(&mask)).unwrap(), 0);
        assert_eq!(count_cycles(&zeros, 5, 2, None).unwrap(), 3 * 5);
    }
}
