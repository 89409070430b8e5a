//! Structural similarity with Gaussian-weighted local statistics.

use crate::error::{Error, Result};
use crate::types::GrayImage;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SsimConfig {
    pub window: usize,
    pub sigma: f64,
    pub k1: f64,
    pub k2: f64,
    pub dynamic_range: f64,
}

impl Default for SsimConfig {
    fn default() -> Self {
        Self {
            window: 11,
            sigma: 1.5,
            k1: 0.01,
            k2: 0.03,
            dynamic_range: 255.0,
        }
    }
}

impl SsimConfig {
    pub fn check(&self) -> Result<()> {
        if self.window < 3 || self.window.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "ssim window {} must be odd and at least 3",
                self.window
            )));
        }
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !(positive(self.k1)
            && positive(self.k2)
            && positive(self.sigma)
            && positive(self.dynamic_range))
        {
            return Err(Error::InvalidParameter(
                "ssim constants must be positive".into(),
            ));
        }
        Ok(())
    }

    fn kernel(&self) -> Vec<f64> {
        let r = (self.window / 2) as f64;
        let k: Vec<f64> = (0..self.window)
            .map(|i| (-(i as f64 - r).powi(2) / (2.0 * self.sigma * self.sigma)).exp())
            .collect();
        let sum: f64 = k.iter().sum();
        k.into_iter().map(|v| v / sum).collect()
    }
}

/// Separable weighted sum over every fully contained window. Output is
/// `(w - win + 1) x (h - win + 1)`, row major.
fn filter_valid(src: &[f64], w: usize, h: usize, k: &[f64]) -> Vec<f64> {
    let win = k.len();
    let (ow, oh) = (w - win + 1, h - win + 1);
    let mut rows = vec![0.0; ow * h];
    for y in 0..h {
        let line = &src[y * w..(y + 1) * w];
        for x in 0..ow {
            rows[y * ow + x] = k.iter().zip(&line[x..x + win]).map(|(a, b)| a * b).sum();
        }
    }
    let mut out = vec![0.0; ow * oh];
    for y in 0..oh {
        for x in 0..ow {
            out[y * ow + x] = k
                .iter()
                .enumerate()
                .map(|(i, kv)| kv * rows[(y + i) * ow + x])
                .sum();
        }
    }
    out
}

/// Mean SSIM over all window positions that lie inside both images.
pub fn ssim(a: &GrayImage, b: &GrayImage, cfg: &SsimConfig) -> Result<f64> {
    cfg.check()?;
    if (a.width(), a.height()) != (b.width(), b.height()) {
        return Err(Error::DimensionMismatch {
            expected: a.width() * a.height(),
            got: b.width() * b.height(),
        });
    }
    let (w, h) = (a.width(), a.height());
    if w < cfg.window || h < cfg.window {
        return Err(Error::ImageTooSmall {
            width: w,
            height: h,
            window: cfg.window,
        });
    }
    let k = cfg.kernel();
    let x: Vec<f64> = a.pixels().iter().map(|&p| p as f64).collect();
    let y: Vec<f64> = b.pixels().iter().map(|&p| p as f64).collect();
    let prod = |p: &[f64], q: &[f64]| -> Vec<f64> { p.iter().zip(q).map(|(u, v)| u * v).collect() };

    let mx = filter_valid(&x, w, h, &k);
    let my = filter_valid(&y, w, h, &k);
    let mxx = filter_valid(&prod(&x, &x), w, h, &k);
    let myy = filter_valid(&prod(&y, &y), w, h, &k);
    let mxy = filter_valid(&prod(&x, &y), w, h, &k);

    let c1 = (cfg.k1 * cfg.dynamic_range).powi(2);
    let c2 = (cfg.k2 * cfg.dynamic_range).powi(2);
    let total: f64 = (0..mx.len())
        .map(|i| {
            let (ux, uy) = (mx[i], my[i]);
            let vx = mxx[i] - ux * ux;
            let vy = myy[i] - uy * uy;
            let cxy = mxy[i] - ux * uy;
            ((2.0 * ux * uy + c1) * (2.0 * cxy + c2)) / ((ux * ux + uy * uy + c1) * (vx + vy + c2))
        })
        .sum();
    Ok(total / mx.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ramp(w: usize, h: usize) -> GrayImage {
        GrayImage::from_fn(w, h, |x, y| ((x * 13 + y * 7) % 256) as u8).unwrap()
    }

    #[test]
    fn identical_images_score_one() {
        let img = ramp(20, 17);
        assert!((ssim(&img, &img, &SsimConfig::default()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn inversion_lowers_score() {
        let img = ramp(20, 20);
        let inv = GrayImage::from_fn(20, 20, |x, y| 255 - img.get(x, y)).unwrap();
        assert!(ssim(&img, &inv, &SsimConfig::default()).unwrap() < 0.5);
    }

    #[test]
    fn rejects_bad_inputs() {
        let cfg = SsimConfig::default();
        assert!(matches!(
            ssim(&ramp(10, 10), &ramp(10, 10), &cfg),
            Err(Error::ImageTooSmall { .. })
        ));
        assert!(matches!(
            ssim(&ramp(12, 12), &ramp(13, 12), &cfg),
            Err(Error::DimensionMismatch { .. })
        ));
        let even = SsimConfig { window: 10, ..cfg };
        assert!(ssim(&ramp(12, 12), &ramp(12, 12), &even).is_err());
    }

    #[test]
    fn kernel_is_normalized_and_symmetric() {
        let k = SsimConfig::default().kernel();
        assert_eq!(k.len(), 11);
        assert!((k.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        for i in 0..5 {
            assert_eq!(k[i], k[10 - i]);
        }
    }
}
