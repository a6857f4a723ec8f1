//! Log-domain flooding sum-product decoding.

use crate::girth::LiftedCode;

/// Magnitude limit for check-to-variable messages.
pub const CLIP: f64 = 30.0;

/// Edge layout of a parity-check matrix, shared by all decodes of one code.
#[derive(Debug, Clone)]
pub struct Decoder {
    n: usize,
    /// Edges are numbered check by check; `check_start[c]..check_start[c+1]`.
    check_start: Vec<usize>,
    edge_var: Vec<u32>,
    /// Edge ids grouped by variable.
    var_start: Vec<usize>,
    var_edges: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    pub bits: Vec<u8>,
    /// Zero syndrome with every posterior strictly signed.
    pub converged: bool,
    pub iterations: usize,
}

/// Scratch buffers; one per worker.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    v2c: Vec<f64>,
    c2v: Vec<f64>,
    post: Vec<f64>,
    tanh: Vec<f64>,
    prefix: Vec<f64>,
}

impl Decoder {
    pub fn new(code: &LiftedCode) -> Self {
        let (n, m) = (code.n(), code.m());
        let mut check_start = Vec::with_capacity(m + 1);
        let mut edge_var = Vec::with_capacity(code.ones());
        check_start.push(0);
        for c in 0..m {
            edge_var.extend(code.check_neighbors(c).map(|v| v as u32));
            check_start.push(edge_var.len());
        }
        let mut degree = vec![0usize; n];
        for &v in &edge_var {
            degree[v as usize] += 1;
        }
        let mut var_start = Vec::with_capacity(n + 1);
        var_start.push(0);
        for d in &degree {
            var_start.push(var_start.last().unwrap() + d);
        }
        let mut fill = var_start.clone();
        let mut var_edges = vec![0u32; edge_var.len()];
        for (e, &v) in edge_var.iter().enumerate() {
            var_edges[fill[v as usize]] = e as u32;
            fill[v as usize] += 1;
        }
        Decoder {
            n,
            check_start,
            edge_var,
            var_start,
            var_edges,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn checks(&self) -> usize {
        self.check_start.len() - 1
    }

    pub fn decode(&self, llr: &[f64], max_iters: usize) -> DecodeResult {
        self.decode_with(llr, max_iters, &mut Workspace::default())
    }

    /// Positive LLR favours bit 0. Stops after the first iteration whose hard
    /// decision satisfies every check.
    pub fn decode_with(&self, llr: &[f64], max_iters: usize, ws: &mut Workspace) -> DecodeResult {
        assert_eq!(llr.len(), self.n, "LLR length must equal the code length");
        let edges = self.edge_var.len();
        ws.v2c.clear();
        ws.v2c.extend(self.edge_var.iter().map(|&v| llr[v as usize]));
        ws.c2v.clear();
        ws.c2v.resize(edges, 0.0);
        ws.post.clear();
        ws.post.extend_from_slice(llr);
        let mut bits = vec![0u8; self.n];
        let mut iterations = 0;
        let mut converged = false;
        while iterations < max_iters.max(1) {
            iterations += 1;
            self.check_update(ws);
            self.var_update(llr, ws);
            for (b, &x) in bits.iter_mut().zip(&ws.post) {
                *b = u8::from(x < 0.0);
            }
            if ws.post.iter().all(|&x| x != 0.0) && self.syndrome_zero(&bits) {
                converged = true;
                break;
            }
        }
        DecodeResult {
            bits,
            converged,
            iterations,
        }
    }

    fn check_update(&self, ws: &mut Workspace) {
        for c in 0..self.checks() {
            let (lo, hi) = (self.check_start[c], self.check_start[c + 1]);
            // products of tanh(x/2) excluding each edge, via prefix and suffix
            ws.tanh.clear();
            ws.tanh.extend(ws.v2c[lo..hi].iter().map(|&x| (x / 2.0).tanh()));
            ws.prefix.clear();
            let mut acc = 1.0;
            for &t in &ws.tanh {
                ws.prefix.push(acc);
                acc *= t;
            }
            let mut suffix = 1.0;
            for k in (0..hi - lo).rev() {
                let t = ws.prefix[k] * suffix;
                suffix *= ws.tanh[k];
                ws.c2v[lo + k] = (2.0 * t.atanh()).clamp(-CLIP, CLIP);
            }
        }
    }

    fn var_update(&self, llr: &[f64], ws: &mut Workspace) {
        for v in 0..self.n {
            let ids = &self.var_edges[self.var_start[v]..self.var_start[v + 1]];
            let total = llr[v] + ids.iter().map(|&e| ws.c2v[e as usize]).sum::<f64>();
            ws.post[v] = total;
            for &e in ids {
                ws.v2c[e as usize] = total - ws.c2v[e as usize];
            }
        }
    }

    pub fn syndrome_zero(&self, bits: &[u8]) -> bool {
        (0..self.checks()).all(|c| {
            self.edge_var[self.check_start[c]..self.check_start[c + 1]]
                .iter()
                .fold(0u8, |acc, &v| acc ^ bits[v as usize])
                == 0
        })
    }
}

/// One-shot decode of `llr` on `code`.
pub fn spa_decode(llr: &[f64], code: &LiftedCode, max_iters: usize) -> DecodeResult {
    Decoder::new(code).decode(llr, max_iters)
}
