//! Little-endian helpers for model payloads.

use crate::error::{Error, Result};
pub(crate) use crate::glyphset::io::Reader;

#[derive(Default)]
pub(crate) struct Writer {
    pub(crate) bytes: Vec<u8>,
}

impl Writer {
    pub(crate) fn u32(&mut self, v: usize) -> &mut Self {
        self.bytes.extend_from_slice(&(v as u32).to_le_bytes());
        self
    }

    pub(crate) fn f32s(&mut self, vs: &[f32]) -> &mut Self {
        for v in vs {
            self.bytes.extend_from_slice(&v.to_le_bytes());
        }
        self
    }

    /// Length-prefixed list of `u32`.
    pub(crate) fn u32s(&mut self, vs: &[usize]) -> &mut Self {
        self.u32(vs.len());
        for &v in vs {
            self.u32(v);
        }
        self
    }

    pub(crate) fn finish(&mut self) -> Vec<u8> {
        std::mem::take(&mut self.bytes)
    }
}

impl Reader<'_> {
    pub(crate) fn count(&mut self) -> Result<usize> {
        Ok(self.u32()? as usize)
    }

    pub(crate) fn f32s(&mut self, n: usize) -> Result<Vec<f32>> {
        let raw = self.take(
            n.checked_mul(4)
                .ok_or_else(|| Error::Format("length overflow".into()))?,
        )?;
        Ok(raw
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect())
    }

    pub(crate) fn u32s(&mut self) -> Result<Vec<usize>> {
        let n = self.count()?;
        (0..n).map(|_| self.count()).collect()
    }

    pub(crate) fn done(&self) -> Result<()> {
        if self.is_empty() {
            Ok(())
        } else {
            Err(Error::Format("trailing bytes in payload".into()))
        }
    }
}

/// Classes seen during training, ascending; a model never predicts others.
pub(crate) fn present_classes(
    labels: impl IntoIterator<Item = usize>,
    classes: usize,
) -> Vec<usize> {
    let mut seen = vec![false; classes];
    for l in labels {
        seen[l] = true;
    }
    (0..classes).filter(|&c| seen[c]).collect()
}

pub(crate) fn check_classes(list: &[usize], classes: usize) -> Result<()> {
    if list.is_empty()
        || list.windows(2).any(|w| w[0] >= w[1])
        || list.iter().any(|&c| c >= classes)
    {
        return Err(Error::Format("invalid class list in payload".into()));
    }
    Ok(())
}
