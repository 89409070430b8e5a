//! Alignment-insensitive glyph matching: the tile's log-polar histogram is
//! compared against the histogram of every clean glyph, and the closest
//! glyph (L2) wins. Nothing is learned.
//!
//! Payload: `radial u32, angular u32, classes u32`, then one histogram of
//! `radial * angular` f32 values per class.

use super::payload::{Reader, Writer};
use crate::error::{Error, Result};
use crate::features::{FeatureExtractor, HogConfig, LogPolarConfig};
use crate::glyphset::render_glyph;
use crate::types::{Charset, FeatureMode};

#[derive(Debug, Clone)]
pub(crate) struct Aiss {
    cfg: LogPolarConfig,
    references: Vec<Vec<f32>>,
}

impl Aiss {
    pub(crate) fn build(charset: &Charset, tile_size: usize, cfg: LogPolarConfig) -> Result<Self> {
        let ex = FeatureExtractor::with_configs(
            FeatureMode::LogPolar,
            tile_size,
            HogConfig::for_tile(tile_size),
            cfg,
        )?;
        let references = charset
            .codes()
            .iter()
            .map(|&c| Ok(ex.extract(&render_glyph(c, tile_size)?)))
            .collect::<Result<_>>()?;
        Ok(Self { cfg, references })
    }

    pub(crate) fn config(&self) -> LogPolarConfig {
        self.cfg
    }

    pub(crate) fn dim(&self) -> usize {
        self.cfg.dim()
    }

    pub(crate) fn encode(&self) -> Vec<u8> {
        let mut w = Writer::default();
        w.u32(self.cfg.radial_bins)
            .u32(self.cfg.angular_bins)
            .u32(self.references.len());
        for r in &self.references {
            w.f32s(r);
        }
        w.finish()
    }

    pub(crate) fn decode(bytes: &[u8], classes: usize) -> Result<Self> {
        let mut r = Reader::new(bytes);
        let cfg = LogPolarConfig {
            radial_bins: r.count()?,
            angular_bins: r.count()?,
        };
        let count = r.count()?;
        if count != classes || cfg.dim() == 0 {
            return Err(Error::Format(
                "AISS payload does not match the charset".into(),
            ));
        }
        let references = (0..count)
            .map(|_| r.f32s(cfg.dim()))
            .collect::<Result<_>>()?;
        r.done()?;
        Ok(Self { cfg, references })
    }

    pub(crate) fn predict(&self, x: &[f32]) -> usize {
        let mut best = (f64::INFINITY, 0);
        for (class, r) in self.references.iter().enumerate() {
            let d: f64 = r
                .iter()
                .zip(x)
                .map(|(a, b)| {
                    let t = (*a - *b) as f64;
                    t * t
                })
                .sum();
            if d < best.0 {
                best = (d, class);
            }
        }
        best.1
    }
}
