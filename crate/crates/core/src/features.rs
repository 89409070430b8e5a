//! Tile descriptors: raw pixels, HoG, and log-polar shape histograms.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::types::{FeatureMode, Tile};

pub fn raw(tile: &Tile) -> Vec<f64> {
    tile.values().to_vec()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HogConfig {
    pub cell_size: usize,
    /// Block side, in cells. Blocks step by one cell.
    pub block: usize,
    pub bins: usize,
}

impl HogConfig {
    /// Two cells per side with 1x1 blocks and 9 bins, so 36 values at n = 10.
    /// Odd tile sizes fall back to a single cell.
    pub fn for_tile(n: usize) -> Self {
        Self {
            cell_size: if n.is_multiple_of(2) { n / 2 } else { n },
            block: 1,
            bins: 9,
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.cell_size == 0 || self.bins < 2 || self.block == 0 {
            return Err(Error::InvalidParameter(format!("bad HoG config {self:?}")));
        }
        if !n.is_multiple_of(self.cell_size) {
            return Err(Error::CellSize {
                cell_size: self.cell_size,
                tile_size: n,
            });
        }
        if self.block > n / self.cell_size {
            return Err(Error::InvalidParameter(format!(
                "block of {} cells exceeds the {} cells per side",
                self.block,
                n / self.cell_size
            )));
        }
        Ok(())
    }

    pub fn dim(&self, n: usize) -> usize {
        let cells = n / self.cell_size;
        let blocks = cells + 1 - self.block;
        blocks * blocks * self.block * self.block * self.bins
    }
}

const HOG_EPS: f64 = 1e-6;
const HOG_CLIP: f64 = 0.2;

/// Histogram of oriented gradients.
///
/// Gradients are central differences (zero on the border rows/columns along
/// the differentiated axis). Unsigned orientations in `[0, 180)` degrees are
/// split between the two nearest bins, bin `b` being centered on
/// `b * 180 / bins`. Blocks are L2-Hys normalized.
pub fn hog(tile: &Tile, cfg: &HogConfig) -> Result<Vec<f64>> {
    let n = tile.n();
    cfg.check(n)?;
    let cells = n / cfg.cell_size;
    let width = 180.0 / cfg.bins as f64;

    let mut hist = vec![0.0; cells * cells * cfg.bins];
    for y in 0..n {
        for x in 0..n {
            let gx = if x == 0 || x == n - 1 {
                0.0
            } else {
                tile.get(x + 1, y) - tile.get(x - 1, y)
            };
            let gy = if y == 0 || y == n - 1 {
                0.0
            } else {
                tile.get(x, y + 1) - tile.get(x, y - 1)
            };
            let mag = gx.hypot(gy);
            if mag == 0.0 {
                continue;
            }
            let mut angle = gy.atan2(gx).to_degrees();
            if angle < 0.0 {
                angle += 180.0;
            }
            if angle >= 180.0 {
                angle -= 180.0;
            }
            let pos = angle / width;
            let lo = pos.floor();
            let frac = pos - lo;
            let lo = lo as usize % cfg.bins;
            let hi = (lo + 1) % cfg.bins;
            let base = ((y / cfg.cell_size) * cells + x / cfg.cell_size) * cfg.bins;
            hist[base + lo] += mag * (1.0 - frac);
            hist[base + hi] += mag * frac;
        }
    }

    let blocks = cells + 1 - cfg.block;
    let mut out = Vec::with_capacity(cfg.dim(n));
    for by in 0..blocks {
        for bx in 0..blocks {
            let mut block = Vec::with_capacity(cfg.block * cfg.block * cfg.bins);
            for cy in by..by + cfg.block {
                for cx in bx..bx + cfg.block {
                    let base = (cy * cells + cx) * cfg.bins;
                    block.extend_from_slice(&hist[base..base + cfg.bins]);
                }
            }
            l2_hys(&mut block);
            out.extend(block);
        }
    }
    Ok(out)
}

fn l2_hys(v: &mut [f64]) {
    let norm = |v: &[f64]| (v.iter().map(|x| x * x).sum::<f64>() + HOG_EPS * HOG_EPS).sqrt();
    let n = norm(v);
    v.iter_mut().for_each(|x| *x = (*x / n).min(HOG_CLIP));
    let n = norm(v);
    v.iter_mut().for_each(|x| *x /= n);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LogPolarConfig {
    pub radial_bins: usize,
    pub angular_bins: usize,
}

impl Default for LogPolarConfig {
    fn default() -> Self {
        Self {
            radial_bins: 5,
            angular_bins: 12,
        }
    }
}

impl LogPolarConfig {
    pub fn dim(&self) -> usize {
        self.radial_bins * self.angular_bins
    }
}

/// Log-polar histogram of stroke mass around the tile center.
///
/// Radius is measured from the geometric center to each pixel center. The
/// innermost ring covers `r < n/8`; the remaining rings split
/// `[n/8, n*sqrt(2)/2]` (out to the corners) at logarithmically spaced edges.
/// Angle is `atan2(dy, dx)` in `[0, 2pi)`, split into equal sectors. The
/// histogram is L1-normalized; a blank tile yields all zeros.
pub fn log_polar_histogram(tile: &Tile, cfg: &LogPolarConfig) -> Result<Vec<f64>> {
    if cfg.radial_bins == 0 || cfg.angular_bins == 0 {
        return Err(Error::InvalidParameter(
            "log-polar bin counts must be >= 1".into(),
        ));
    }
    let n = tile.n();
    let center = n as f64 / 2.0;
    let inner = n as f64 / 8.0;
    let outer = n as f64 * std::f64::consts::SQRT_2 / 2.0;
    let log_span = (outer / inner).ln();
    let rings = cfg.radial_bins;

    let mut hist = vec![0.0; cfg.dim()];
    for y in 0..n {
        for x in 0..n {
            let v = tile.get(x, y);
            if v <= 0.0 {
                continue;
            }
            let dx = x as f64 + 0.5 - center;
            let dy = y as f64 + 0.5 - center;
            let r = dx.hypot(dy);
            let ring = if r < inner || rings == 1 {
                0
            } else {
                let t = (r / inner).ln() / log_span;
                (1 + (t * (rings - 1) as f64).floor() as usize).min(rings - 1)
            };
            let mut theta = dy.atan2(dx);
            if theta < 0.0 {
                theta += 2.0 * PI;
            }
            let sector =
                ((theta / (2.0 * PI) * cfg.angular_bins as f64) as usize).min(cfg.angular_bins - 1);
            hist[ring * cfg.angular_bins + sector] += v;
        }
    }
    let total: f64 = hist.iter().sum();
    if total > 0.0 {
        hist.iter_mut().for_each(|h| *h /= total);
    }
    Ok(hist)
}

/// Maps tiles to the `f32` feature vectors stored in datasets and fed to
/// classifiers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureExtractor {
    mode: FeatureMode,
    n: usize,
    hog: HogConfig,
    log_polar: LogPolarConfig,
}

impl FeatureExtractor {
    pub fn new(mode: FeatureMode, n: usize) -> Result<Self> {
        Self::with_configs(mode, n, HogConfig::for_tile(n), LogPolarConfig::default())
    }

    pub fn with_configs(
        mode: FeatureMode,
        n: usize,
        hog: HogConfig,
        log_polar: LogPolarConfig,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "tile size {n} must be >= 2"
            )));
        }
        if mode == FeatureMode::Hog {
            hog.check(n)?;
        }
        Ok(Self {
            mode,
            n,
            hog,
            log_polar,
        })
    }

    pub fn mode(&self) -> FeatureMode {
        self.mode
    }

    pub fn tile_size(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        match self.mode {
            FeatureMode::Raw => self.n * self.n,
            FeatureMode::Hog => self.hog.dim(self.n),
            FeatureMode::LogPolar => self.log_polar.dim(),
        }
    }

    /// Panics if the tile side differs from the extractor's.
    pub fn extract(&self, tile: &Tile) -> Vec<f32> {
        assert_eq!(tile.n(), self.n, "tile size mismatch");
        let v = match self.mode {
            FeatureMode::Raw => raw(tile),
            FeatureMode::Hog => hog(tile, &self.hog).expect("config checked at construction"),
            FeatureMode::LogPolar => {
                log_polar_histogram(tile, &self.log_polar).expect("config checked at construction")
            }
        };
        v.into_iter().map(|x| x as f32).collect()
    }
}
