//! BPSK over AWGN with sum-product decoding of the all-zero codeword.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::spa::{Decoder, Workspace};
use crate::error::{precondition, Result};
use crate::girth::LiftedCode;

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub code: LiftedCode,
    /// `Eb/N0` values in dB.
    pub snr_db_points: Vec<f64>,
    pub max_iterations: usize,
    pub max_frames: u64,
    /// Stop a point once this many block errors are counted.
    pub target_errors: Option<u64>,
    pub rng_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointStats {
    pub snr_db: f64,
    pub frames: u64,
    pub bit_errors: u64,
    pub block_errors: u64,
    pub ber: f64,
    pub bler: f64,
    pub avg_iters: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimStats {
    /// Rate used to convert `Eb/N0` to the noise variance.
    pub rate: f64,
    pub points: Vec<PointStats>,
}

/// Design rate `(L - J) / L` when every block is present, otherwise
/// `(N - rank H) / N` over GF(2).
pub fn code_rate(code: &LiftedCode) -> f64 {
    let n = code.n() as f64;
    if code.present_blocks() == code.block_rows() * code.block_cols() {
        (code.n() as f64 - code.m() as f64) / n
    } else {
        (n - super::gf2_rank(code) as f64) / n
    }
}

/// Noise standard deviation for BPSK at `Eb/N0 = snr_db` and code rate `rate`:
/// `sigma^2 = 1 / (2 R Eb/N0)`.
pub fn noise_sigma(snr_db: f64, rate: f64) -> f64 {
    let ebn0 = 10f64.powf(snr_db / 10.0);
    (1.0 / (2.0 * rate * ebn0)).sqrt()
}

/// RNG stream for one frame; depends only on the seed, point and frame index.
fn frame_rng(seed: u64, point: usize, frame: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(point as u64).to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(frame);
    rng
}

struct Frame {
    bit_errors: u64,
    iterations: usize,
}

const CHUNK: u64 = 64;

/// Runs every SNR point; frames are decoded in parallel chunks and counted
/// in frame order, so the result does not depend on the thread count.
pub fn simulate(cfg: &SimConfig) -> Result<SimStats> {
    if cfg.max_iterations == 0 {
        return precondition("max_iterations must be at least 1");
    }
    if let Some(bad) = cfg.snr_db_points.iter().find(|x| !x.is_finite()) {
        return precondition(format!("SNR point {bad} is not finite"));
    }
    let rate = code_rate(&cfg.code);
    if rate <= 0.0 {
        return precondition(format!("code rate {rate} leaves no information bits"));
    }
    let decoder = Decoder::new(&cfg.code);
    let n = decoder.n();
    let mut points = Vec::with_capacity(cfg.snr_db_points.len());
    for (idx, &snr_db) in cfg.snr_db_points.iter().enumerate() {
        let sigma = noise_sigma(snr_db, rate);
        let noise = Normal::new(0.0, sigma).expect("finite positive sigma");
        let scale = 2.0 / (sigma * sigma);
        let (mut frames, mut bit_errors, mut block_errors, mut iters) = (0u64, 0u64, 0u64, 0u64);
        let mut next = 0u64;
        'point: while next < cfg.max_frames {
            let end = (next + CHUNK).min(cfg.max_frames);
            let batch: Vec<Frame> = (next..end)
                .into_par_iter()
                .map_init(
                    || (Workspace::default(), vec![0.0f64; n]),
                    |(ws, llr), f| {
                        let mut rng = frame_rng(cfg.rng_seed, idx, f);
                        for x in llr.iter_mut() {
                            *x = scale * (1.0 + noise.sample(&mut rng));
                        }
                        let r = decoder.decode_with(llr, cfg.max_iterations, ws);
                        Frame {
                            bit_errors: r.bits.iter().map(|&b| b as u64).sum(),
                            iterations: r.iterations,
                        }
                    },
                )
                .collect();
            next = end;
            for f in batch {
                frames += 1;
                bit_errors += f.bit_errors;
                block_errors += u64::from(f.bit_errors > 0);
                iters += f.iterations as u64;
                if cfg.target_errors.is_some_and(|t| block_errors >= t) {
                    break 'point;
                }
            }
        }
        let denom = frames.max(1) as f64;
        points.push(PointStats {
            snr_db,
            frames,
            bit_errors,
            block_errors,
            ber: bit_errors as f64 / (denom * n as f64),
            bler: block_errors as f64 / denom,
            avg_iters: iters as f64 / denom,
        });
    }
    Ok(SimStats { rate, points })
}
