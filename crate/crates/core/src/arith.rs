//! Small integer helpers shared by the constructions and the cycle checkers.

/// Least non-negative residue of `x` modulo `p`.
#[inline]
pub fn modp(x: i64, p: i64) -> i64 {
    x.rem_euclid(p)
}

/// Greatest common divisor of `|a|` and `|b|`; `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

/// `base^exp mod p`.
pub fn pow_mod(base: i64, mut exp: u64, p: i64) -> i64 {
    let m = p as i128;
    let mut b = modp(base, p) as i128;
    let mut acc: i128 = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as i64
}

/// Multiplicative inverse of `a` modulo `p`, if `gcd(a, p) = 1`.
pub fn inv_mod(a: i64, p: i64) -> Option<i64> {
    let (mut old_r, mut r) = (modp(a, p), p);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| modp(old_s, p))
}

/// Returns the first value occurring twice modulo `p`, if any.
pub(crate) fn first_duplicate_mod(values: &[i64], p: i64) -> Option<i64> {
    let mut seen = std::collections::HashSet::with_capacity(values.len());
    values.iter().map(|&v| modp(v, p)).find(|&v| !seen.insert(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_gcd() {
        assert_eq!(gcd(12, -18), 6);
        assert_eq!(gcd(0, 7), 7);
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(6, 9), None);
        assert_eq!(pow_mod(19, 11, 169), (0..11).fold(1, |a, _| a * 19 % 169));
        assert_eq!(modp(-34, 38), 4);
    }
}
