//! 4- and 6-cycle conditions for `E_U = [alpha_i * beta^r]` and its VS
//! completion, written directly in terms of the `alpha`s and `beta`.
//!
//! [`vs_search_4cycle_free`] and [`vs_search_6cycle_free`] spell out each
//! family over its printed index ranges. [`Sieve`] answers the same questions
//! faster: every 6-cycle family has the shape `X b^p + Y b^q + Z b^u = 0`
//! with `X + Y + Z = 0` over distinct `p, q, u`, so once one coefficient is
//! invertible the third exponent is found by a table lookup.

use std::collections::HashSet;

use crate::arith::{gcd, inv_mod, modp};

/// `beta^0 .. beta^(L-1)` modulo `P`.
pub fn beta_powers(beta: i64, l: usize, p: i64) -> Vec<i64> {
    let b = modp(beta, p);
    let mut out = Vec::with_capacity(l);
    let mut x = modp(1, p);
    for _ in 0..l {
        out.push(x);
        x = x * b % p;
    }
    out
}

#[inline]
fn mulm(a: i64, b: i64, p: i64) -> i64 {
    ((a as i128 * b as i128).rem_euclid(p as i128)) as i64
}

/// Number of multipliers `J0 + 1` for `J` rows.
pub fn alpha_count(j: usize) -> usize {
    (j - 2) / 2 + 1
}

/// No family (1), (2) or, for odd `J`, (3) of 4-cycle equations has a
/// solution modulo `P`. `alphas` includes `alpha_0`.
pub fn vs_search_4cycle_free(alphas: &[i64], beta: i64, j: usize, l: usize, p: i64) -> bool {
    let pw = beta_powers(beta, l, p);
    let odd = j % 2 == 1;
    let n = alphas.len();
    for r in 0..l {
        for s in r + 1..l {
            let d = pw[r] - pw[s];
            for i in 0..n {
                for jj in i..n {
                    if i < jj && mulm(alphas[i] - alphas[jj], d, p) == 0 {
                        return false;
                    }
                    if mulm(alphas[i] + alphas[jj], d, p) == 0 {
                        return false;
                    }
                }
                if odd && mulm(alphas[i], d, p) == 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// No family (1), (2a), (2b) or, for odd `J`, (3a), (3b) of 6-cycle
/// equations has a solution with `r, s, t` pairwise distinct.
pub fn vs_search_6cycle_free(alphas: &[i64], beta: i64, j: usize, l: usize, p: i64) -> bool {
    let pw = beta_powers(beta, l, p);
    let odd = j % 2 == 1;
    let a = alphas;
    let n = a.len();
    let zero = |x: i128| x.rem_euclid(p as i128) == 0;
    for r in 0..l {
        for s in 0..l {
            for t in 0..l {
                if r == s || s == t || r == t {
                    continue;
                }
                let (br, bs, bt) = (pw[r] as i128, pw[s] as i128, pw[t] as i128);
                for i in 0..n {
                    let ai = a[i] as i128;
                    for jj in 0..n {
                        let aj = a[jj] as i128;
                        for k in 0..n {
                            let ak = a[k] as i128;
                            // (1)
                            if i < jj && jj < k && zero((ai - aj) * bs + (aj - ak) * br + (ak - ai) * bt) {
                                return false;
                            }
                            // (2a)
                            if i < jj && zero((ai - aj) * bs + (aj + ak) * br - (ak + ai) * bt) {
                                return false;
                            }
                            // (2b)
                            if jj < k && zero((ai + aj) * bs + (ak - aj) * br - (ak + ai) * bt) {
                                return false;
                            }
                        }
                        if odd {
                            // (3a)
                            if i < jj && zero(ai * (br - bs) + aj * (bt - br)) {
                                return false;
                            }
                            // (3b)
                            if zero(ai * (br - bs) - aj * (bt - br)) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

/// Coefficients of the 4-cycle equations `c (b^r - b^s) = 0`.
fn four_coefficients(alphas: &[i64], odd: bool) -> Vec<i64> {
    let n = alphas.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            if i < j {
                out.push(alphas[i] - alphas[j]);
            }
            out.push(alphas[i] + alphas[j]);
        }
        if odd {
            out.push(alphas[i]);
        }
    }
    out
}

/// Coefficient triples `(X, Y, Z)` of the 6-cycle equations.
fn six_coefficients(alphas: &[i64], odd: bool) -> Vec<[i64; 3]> {
    let a = alphas;
    let n = a.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i < j && j < k {
                    out.push([a[i] - a[j], a[j] - a[k], a[k] - a[i]]);
                }
                if i < j {
                    out.push([a[i] - a[j], a[j] + a[k], -(a[k] + a[i])]);
                }
                if j < k {
                    out.push([a[i] + a[j], a[k] - a[j], -(a[k] + a[i])]);
                }
            }
            if odd {
                if i < j {
                    out.push([a[i] - a[j], -a[i], a[j]]);
                }
                out.push([a[i] + a[j], -a[i], -a[j]]);
            }
        }
    }
    out
}

/// All equation coefficients for one choice of `alpha`s, reduced modulo `P`.
#[derive(Debug, Clone)]
pub struct Coefficients {
    four: Vec<i64>,
    six: Vec<[i64; 3]>,
}

impl Coefficients {
    pub fn new(alphas: &[i64], j: usize, p: i64) -> Self {
        let odd = j % 2 == 1;
        Coefficients {
            four: four_coefficients(alphas, odd).into_iter().map(|x| modp(x, p)).collect(),
            six: six_coefficients(alphas, odd).into_iter().map(|t| t.map(|x| modp(x, p))).collect(),
        }
    }

    /// Some 4-cycle coefficient vanishes, so every `beta` fails once `L >= 2`.
    pub fn degenerate(&self) -> bool {
        self.four.contains(&0)
    }
}

const NONE: u32 = u32::MAX;

/// Powers of one `beta` with an inverse lookup table.
#[derive(Debug, Clone)]
pub struct Sieve {
    p: i64,
    pw: Vec<i64>,
    /// `pos[x] = r` when `beta^r = x`; only valid when the powers are distinct.
    pos: Vec<u32>,
    distinct: bool,
}

impl Sieve {
    pub fn new(beta: i64, l: usize, p: i64) -> Self {
        let pw = beta_powers(beta, l, p);
        let mut pos = vec![NONE; p as usize];
        let mut distinct = true;
        for (r, &x) in pw.iter().enumerate() {
            if pos[x as usize] != NONE {
                distinct = false;
            }
            pos[x as usize] = r as u32;
        }
        Sieve { p, pw, pos, distinct }
    }

    /// `beta^0 .. beta^(L-1)` are distinct modulo `P`.
    pub fn distinct(&self) -> bool {
        self.distinct
    }

    pub fn powers(&self) -> &[i64] {
        &self.pw
    }

    pub fn four_free(&self, alphas: &[i64], j: usize) -> bool {
        self.four_free_with(&Coefficients::new(alphas, j, self.p))
    }

    pub fn six_free(&self, alphas: &[i64], j: usize) -> bool {
        self.six_free_with(&Coefficients::new(alphas, j, self.p))
    }

    pub fn four_free_with(&self, c: &Coefficients) -> bool {
        c.four.iter().all(|&x| self.four_instance_free(x))
    }

    pub fn six_free_with(&self, c: &Coefficients) -> bool {
        c.six.iter().all(|&x| self.six_instance_free(x))
    }

    /// Neither 4- nor 6-cycles.
    pub fn cycle_free(&self, c: &Coefficients) -> bool {
        self.four_free_with(c) && self.six_free_with(c)
    }

    fn four_instance_free(&self, c: i64) -> bool {
        let g = gcd(modp(c, self.p), self.p);
        if g == 1 {
            return self.distinct;
        }
        // c (x - y) = 0 mod P  iff  x = y mod P/g
        let m = self.p / g;
        let mut seen = HashSet::with_capacity(self.pw.len());
        self.pw.iter().all(|&x| seen.insert(x % m))
    }

    fn six_instance_free(&self, coeffs: [i64; 3]) -> bool {
        let p = self.p;
        let l = self.pw.len();
        let c = coeffs.map(|x| modp(x, p));
        if l < 3 {
            return true;
        }
        if c == [0, 0, 0] {
            return false;
        }
        if self.distinct {
            // solve for the exponent carrying an invertible coefficient
            for slot in 0..3 {
                if let Some(inv) = inv_mod(c[slot], p) {
                    let (u, w) = (c[(slot + 1) % 3], c[(slot + 2) % 3]);
                    return !self.solve(inv, u, w);
                }
            }
        }
        for a in 0..l {
            for b in 0..l {
                for d in 0..l {
                    if a != b && b != d && a != d {
                        let v = (c[0] as i128 * self.pw[a] as i128
                            + c[1] as i128 * self.pw[b] as i128
                            + c[2] as i128 * self.pw[d] as i128)
                            .rem_euclid(p as i128);
                        if v == 0 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Some distinct `q, a, b` with `x b^q + u b^a + w b^b = 0`, where `inv = x^-1`.
    fn solve(&self, inv: i64, u: i64, w: i64) -> bool {
        let p = self.p;
        let l = self.pw.len();
        let nu = mulm(p - u, inv, p);
        let nw = mulm(p - w, inv, p);
        for a in 0..l {
            let base = mulm(nu, self.pw[a], p);
            for b in 0..l {
                if a == b {
                    continue;
                }
                let target = (base + mulm(nw, self.pw[b], p)) % p;
                let q = self.pos[target as usize];
                if q != NONE && q as usize != a && q as usize != b {
                    return true;
                }
            }
        }
        false
    }
}

/// `alpha_i * beta^r mod P` for `0 <= i <= J0`.
pub fn upper_rows(alphas: &[i64], beta: i64, l: usize, p: i64) -> Vec<Vec<i64>> {
    let pw = beta_powers(beta, l, p);
    alphas.iter().map(|&a| pw.iter().map(|&x| mulm(a, x, p)).collect()).collect()
}
