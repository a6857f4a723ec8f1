/// A subset of `Z_P` stored as a bitset, with cyclic translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ResidueSet {
    p: usize,
    words: Vec<u64>,
}

impl ResidueSet {
    pub fn new(p: usize) -> Self {
        ResidueSet {
            p,
            words: vec![0; p.div_ceil(64)],
        }
    }

    #[inline]
    pub fn insert(&mut self, x: usize) {
        debug_assert!(x < self.p);
        self.words[x / 64] |= 1 << (x % 64);
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.words[x / 64] >> (x % 64) & 1 == 1
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &ResidueSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// `self |= { (x + shift) mod P : x in src }`.
    pub fn union_translated(&mut self, src: &ResidueSet, shift: usize) {
        debug_assert!(shift < self.p);
        let p = self.p;
        or_range(&mut self.words, &src.words, 0, shift, p - shift);
        if shift > 0 {
            or_range(&mut self.words, &src.words, p - shift, 0, shift);
        }
    }
}

#[inline]
fn read_bits(src: &[u64], pos: usize, n: usize) -> u64 {
    let (w, b) = (pos / 64, pos % 64);
    let mut v = src[w] >> b;
    if b > 0 && w + 1 < src.len() {
        v |= src[w + 1] << (64 - b);
    }
    if n < 64 {
        v &= (1u64 << n) - 1;
    }
    v
}

#[inline]
fn or_bits(dst: &mut [u64], pos: usize, bits: u64, n: usize) {
    let (w, b) = (pos / 64, pos % 64);
    dst[w] |= bits << b;
    if b > 0 && b + n > 64 {
        dst[w + 1] |= bits >> (64 - b);
    }
}

fn or_range(dst: &mut [u64], src: &[u64], src_pos: usize, dst_pos: usize, len: usize) {
    let mut i = 0;
    while i < len {
        let n = (len - i).min(64);
        let bits = read_bits(src, src_pos + i, n);
        if bits != 0 {
            or_bits(dst, dst_pos + i, bits, n);
        }
        i += n;
    }
}
