//! Girth of the lifted Tanner graph by truncated breadth-first search.
//!
//! Works on the explicit `LP + JP` vertex graph and never looks at the
//! cycle equations. Because shifting every circulant index by one is a graph
//! automorphism, each cycle can be moved onto variable `n * P` of some block
//! column `n`, so it suffices to root a search at those `L` vertices.

use super::lift::LiftedCode;
use super::{Girth, GirthReport};
use crate::matrix::CycleWitness;

const UNSEEN: u32 = u32::MAX;

struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Adjacency {
    fn new(code: &LiftedCode) -> Self {
        let n = code.n();
        let total = n + code.m();
        let mut offsets = Vec::with_capacity(total + 1);
        let mut targets = Vec::with_capacity(2 * code.ones());
        offsets.push(0);
        for v in 0..n {
            targets.extend(code.var_neighbors(v).map(|c| (n + c) as u32));
            offsets.push(targets.len());
        }
        for c in 0..code.m() {
            targets.extend(code.check_neighbors(c).map(|v| v as u32));
            offsets.push(targets.len());
        }
        Adjacency { offsets, targets }
    }

    #[inline]
    fn neighbors(&self, u: usize) -> &[u32] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }
}

struct Search {
    dist: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
}

impl Search {
    /// BFS from `root`; returns the shortest closing edge `(len, u, w)` with
    /// `len < bound`. The tree is left in place for witness extraction.
    fn run(&mut self, adj: &Adjacency, root: usize, max_depth: u32, bound: usize) -> Option<(usize, usize, usize)> {
        let mut found: Option<(usize, usize, usize)> = None;
        self.dist[root] = 0;
        self.queue.push(root as u32);
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head] as usize;
            head += 1;
            let du = self.dist[u];
            let limit = found.map_or(bound, |f| f.0);
            // every cycle closed from here on is at least 2*du + 1 long
            if 2 * du as usize + 1 >= limit {
                break;
            }
            let pu = self.parent[u];
            for &w in adj.neighbors(u) {
                if w == pu {
                    continue;
                }
                let w = w as usize;
                if self.dist[w] == UNSEEN {
                    if du < max_depth {
                        self.dist[w] = du + 1;
                        self.parent[w] = u as u32;
                        self.queue.push(w as u32);
                    }
                } else {
                    let len = (du + self.dist[w] + 1) as usize;
                    if len < found.map_or(bound, |f| f.0) {
                        found = Some((len, u, w));
                    }
                }
            }
        }
        found
    }

    fn path_to_root(&self, mut v: usize) -> Vec<usize> {
        let mut path = vec![v];
        while self.parent[v] != UNSEEN {
            v = self.parent[v] as usize;
            path.push(v);
        }
        path.reverse();
        path
    }

    fn reset(&mut self) {
        for &v in &self.queue {
            self.dist[v as usize] = UNSEEN;
            self.parent[v as usize] = UNSEEN;
        }
        self.queue.clear();
    }
}

/// Exact girth up to `cap`; the witness comes from the search that attained it.
pub fn girth_bfs(code: &LiftedCode, cap: usize) -> GirthReport {
    let cap = cap.max(4);
    let adj = Adjacency::new(code);
    let total = code.n() + code.m();
    let mut search = Search {
        dist: vec![UNSEEN; total],
        parent: vec![UNSEEN; total],
        queue: Vec::with_capacity(total),
    };
    let max_depth = (cap / 2) as u32;
    let mut best: Option<(usize, CycleWitness)> = None;

    for n in 0..code.block_cols() {
        let root = n * code.circulant_size();
        let bound = best.as_ref().map_or(cap + 1, |b| b.0);
        if let Some((len, u, w)) = search.run(&adj, root, max_depth, bound) {
            let witness = to_witness(code, &search.path_to_root(u), &search.path_to_root(w));
            best = Some((len, witness));
        }
        search.reset();
        if best.as_ref().is_some_and(|b| b.0 == 4) {
            break;
        }
    }
    match best {
        Some((len, w)) => GirthReport {
            girth: Girth::Exact(len),
            cap,
            witness: Some(w),
        },
        None => GirthReport {
            girth: Girth::AboveCap,
            cap,
            witness: None,
        },
    }
}

/// Converts the closed walk `root .. u, w .. root` into block indices.
fn to_witness(code: &LiftedCode, to_u: &[usize], to_w: &[usize]) -> CycleWitness {
    let mut cycle: Vec<usize> = to_u.to_vec();
    cycle.extend(to_w.iter().rev().take(to_w.len() - 1));
    let (n_vars, p) = (code.n(), code.circulant_size());
    // cycle starts at a variable node and alternates
    let mut rows = Vec::with_capacity(cycle.len() / 2);
    let mut cols = Vec::with_capacity(cycle.len() / 2);
    for pair in cycle.chunks(2) {
        cols.push(pair[0] / p);
        rows.push((pair[1] - n_vars) / p);
    }
    code.witness(rows, cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::girth::lift;
    use crate::matrix::ExponentMatrix;

    fn m(rows: Vec<Vec<i64>>) -> ExponentMatrix {
        ExponentMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn all_zero_block_pair_has_girth_four() {
        let e = m(vec![vec![0, 0], vec![0, 0]]);
        let r = girth_bfs(&lift(&e, 5, None).unwrap(), 12);
        assert_eq!(r.girth, Girth::Exact(4));
        assert!(r.witness.unwrap().validate(&e, None));
    }

    #[test]
    fn tree_like_codes_exceed_cap() {
        let e = m(vec![vec![0, 1, 2]]);
        let r = girth_bfs(&lift(&e, 7, None).unwrap(), 12);
        assert_eq!(r.girth, Girth::AboveCap);
        assert!(r.witness.is_none());
    }

    #[test]
    fn two_rows_wind_around_three_times() {
        // the base graph is a single 4-cycle with sum 1, so the lift is a
        // union of 12-cycles
        let e = m(vec![vec![0, 0], vec![0, 1]]);
        let code = lift(&e, 3, None).unwrap();
        assert_eq!(girth_bfs(&code, 10).girth, Girth::AboveCap);
        let r = girth_bfs(&code, 12);
        assert_eq!(r.girth, Girth::Exact(12));
        assert!(r.witness.unwrap().validate(&e, None));
    }
}
