//! Flat binary storage for fields.
//!
//! Layout: four little-endian `u64` header words `n, T, m, N`, then for each
//! node in row-major order the `N` components as `(re, im)` little-endian
//! `f64` pairs. A JSON sidecar next to the file records the same header and
//! the band tag.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::field::SampledVectorField;
use super::grid::TorusGrid;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldSidecar {
    pub grid: TorusGrid,
    #[serde(rename = "N")]
    pub dim: usize,
    pub band_radius: Option<f64>,
    pub layout: String,
}

const LAYOUT: &str = "header u64le[n,T,m,N]; node-major complex f64le (re, im)";

pub fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("json")
}

pub fn encode_field(f: &SampledVectorField) -> Vec<u8> {
    let g = f.grid();
    let mut out = Vec::with_capacity(32 + 16 * f.values().len());
    for w in [g.n, g.period, g.m, f.dim()] {
        out.extend_from_slice(&(w as u64).to_le_bytes());
    }
    for v in f.values() {
        out.extend_from_slice(&v.re.to_le_bytes());
        out.extend_from_slice(&v.im.to_le_bytes());
    }
    out
}

pub fn decode_field(bytes: &[u8]) -> Result<SampledVectorField> {
    if bytes.len() < 32 {
        return Err(Error::Format("field file shorter than its header".into()));
    }
    let word = |i: usize| u64::from_le_bytes(bytes[8 * i..8 * i + 8].try_into().expect("8 bytes")) as usize;
    let grid = TorusGrid::new(word(0), word(1), word(2))?;
    let dim = word(3);
    let body = &bytes[32..];
    let expected = grid.len().checked_mul(dim).and_then(|v| v.checked_mul(16));
    if expected != Some(body.len()) {
        return Err(Error::Format(format!(
            "field body has {} bytes, header implies {:?}",
            body.len(),
            expected
        )));
    }
    let values = body
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().expect("8 bytes"));
            let im = f64::from_le_bytes(c[8..].try_into().expect("8 bytes"));
            Complex64::new(re, im)
        })
        .collect();
    SampledVectorField::new(grid, dim, values)
}

/// Writes the binary file and its JSON sidecar.
pub fn write_field(path: &Path, f: &SampledVectorField) -> Result<()> {
    fs::write(path, encode_field(f))?;
    let side = FieldSidecar {
        grid: f.grid().clone(),
        dim: f.dim(),
        band_radius: f.band_radius(),
        layout: LAYOUT.into(),
    };
    let text = serde_json::to_string_pretty(&side).map_err(|e| Error::Format(e.to_string()))?;
    fs::write(sidecar_path(path), text)?;
    Ok(())
}

/// Reads a field; the band tag comes from the sidecar when one exists.
pub fn read_field(path: &Path) -> Result<SampledVectorField> {
    let f = decode_field(&fs::read(path)?)?;
    let side = sidecar_path(path);
    if !side.exists() {
        return Ok(f);
    }
    let meta: FieldSidecar =
        serde_json::from_str(&fs::read_to_string(side)?).map_err(|e| Error::Format(e.to_string()))?;
    if meta.grid != *f.grid() || meta.dim != f.dim() {
        return Err(Error::Format("sidecar disagrees with the binary header".into()));
    }
    Ok(f.with_band_radius(meta.band_radius))
}
