use std::path::Path;

use anyhow::{bail, Context, Result};
use vsldpc::{BlockMask, ExponentMatrix, MatrixDocument};

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// A matrix document, or a bare array of rows. Returns the stored `P`, if any.
pub fn load_matrix(path: &Path) -> Result<(ExponentMatrix, Option<i64>)> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        let doc: MatrixDocument =
            serde_json::from_str(&text).with_context(|| format!("{} is not a matrix document", path.display()))?;
        let e = doc.to_matrix().with_context(|| format!("matrix in {}", path.display()))?;
        return Ok((e, doc.p));
    }
    let rows: Vec<Vec<i64>> =
        serde_json::from_str(&text).with_context(|| format!("{} is not a JSON array of rows", path.display()))?;
    Ok((ExponentMatrix::from_rows(rows)?, None))
}

pub fn load_mask(path: &Path) -> Result<BlockMask> {
    let rows: Vec<Vec<u8>> = serde_json::from_str(&read(path)?)
        .with_context(|| format!("{} is not a JSON array of 0/1 rows", path.display()))?;
    Ok(BlockMask::new(rows)?)
}

pub fn circulant_size(flag: Option<i64>, stored: Option<i64>) -> Result<i64> {
    match flag.or(stored) {
        Some(p) if p >= 1 => Ok(p),
        Some(p) => bail!("circulant size must be positive, got {p}"),
        None => bail!("no circulant size: pass --P or store \"P\" in the matrix file"),
    }
}

/// `lo..hi`, inclusive at both ends.
pub fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound in {s:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound in {s:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok((lo, hi))
}
