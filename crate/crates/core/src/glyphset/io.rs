//! GCDS dataset files and CSV export.
//!
//! Layout (little-endian): magic `GCDS`, version `u32`, tile size `u32`,
//! feature mode `u8`, charset length `u32` followed by one `u8` code per
//! class, sample count `u64`, then per sample: label `u32`, feature length
//! `u32`, features as `f32`.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::types::{Charset, Dataset, FeatureMode, Sample};

pub const MAGIC: &[u8; 4] = b"GCDS";
pub const VERSION: u32 = 1;

pub fn encode(d: &Dataset) -> Vec<u8> {
    let mut out = Vec::with_capacity(32 + d.len() * (8 + 4 * d.dim()));
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(d.tile_size() as u32).to_le_bytes());
    out.push(d.feature_mode().to_byte());
    out.extend_from_slice(&(d.charset().len() as u32).to_le_bytes());
    out.extend_from_slice(d.charset().codes());
    out.extend_from_slice(&(d.len() as u64).to_le_bytes());
    for s in d.samples() {
        out.extend_from_slice(&(s.label as u32).to_le_bytes());
        out.extend_from_slice(&(s.features.len() as u32).to_le_bytes());
        for f in &s.features {
            out.extend_from_slice(&f.to_le_bytes());
        }
    }
    out
}

pub fn decode(bytes: &[u8]) -> Result<Dataset> {
    let mut r = Reader::new(bytes);
    if r.take(4)? != MAGIC {
        return Err(Error::Format("not a GCDS dataset".into()));
    }
    let version = r.u32()?;
    if version != VERSION {
        return Err(Error::Format(format!(
            "unsupported dataset version {version}"
        )));
    }
    let tile_size = r.u32()? as usize;
    let mode = FeatureMode::from_byte(r.u8()?)?;
    let classes = r.u32()? as usize;
    let charset = Charset::new(r.take(classes)?.to_vec())?;
    let count = r.u64()? as usize;
    let mut samples = Vec::with_capacity(count.min(1 << 24));
    for _ in 0..count {
        let label = r.u32()? as usize;
        let len = r.u32()? as usize;
        let raw = r.take(len * 4)?;
        let features = raw
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect();
        samples.push(Sample { features, label });
    }
    if !r.is_empty() {
        return Err(Error::Format("trailing bytes after samples".into()));
    }
    Dataset::new(samples, tile_size, mode, charset, None)
}

pub fn write(d: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(&encode(d))?;
    Ok(())
}

pub fn read(path: impl AsRef<Path>) -> Result<Dataset> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut bytes)?;
    decode(&bytes)
}

/// `label,f0,f1,...` rows, where `label` is the decimal character code.
pub fn to_csv(d: &Dataset) -> String {
    let mut out = String::from("label");
    for i in 0..d.dim() {
        out.push_str(&format!(",f{i}"));
    }
    out.push('\n');
    for s in d.samples() {
        out.push_str(&d.charset().code(s.label).unwrap_or(0).to_string());
        for f in &s.features {
            out.push(',');
            out.push_str(&f.to_string());
        }
        out.push('\n');
    }
    out
}

pub(crate) struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub(crate) fn new(bytes: &'a [u8]) -> Self {
        Self { bytes, pos: 0 }
    }

    pub(crate) fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| Error::Format("unexpected end of file".into()))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    pub(crate) fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    pub(crate) fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    pub(crate) fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    pub(crate) fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    pub(crate) fn f32(&mut self) -> Result<f32> {
        Ok(f32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    pub(crate) fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.pos == self.bytes.len()
    }
}
