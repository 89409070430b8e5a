//! Image loading, grayscale conversion, aspect-corrected rescaling and tiling.

use std::path::Path;

use crate::error::{Error, Result};
use crate::types::{GrayImage, Tile};

/// Default binarization threshold.
pub const DEFAULT_THRESHOLD: u8 = 128;

/// BT.601 luma of a packed RGB buffer.
pub fn to_grayscale(rgb: &[u8], width: usize, height: usize) -> Result<GrayImage> {
    if width == 0 || height == 0 {
        return Err(Error::EmptyImage);
    }
    if rgb.len() != width * height * 3 {
        return Err(Error::InvalidImage(format!(
            "{} bytes for a {width}x{height} RGB image",
            rgb.len()
        )));
    }
    let pixels = rgb
        .chunks_exact(3)
        .map(|p| {
            let luma = 0.299 * p[0] as f64 + 0.587 * p[1] as f64 + 0.114 * p[2] as f64;
            luma.round().clamp(0.0, 255.0) as u8
        })
        .collect();
    GrayImage::new(width, height, pixels)
}

/// Decodes a PNG or JPEG file into a grayscale image.
pub fn load_image(path: impl AsRef<Path>) -> Result<GrayImage> {
    let decoded = image::open(path)?;
    let rgb = decoded.to_rgb8();
    to_grayscale(rgb.as_raw(), rgb.width() as usize, rgb.height() as usize)
}

pub fn save_png(img: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let buf = image::GrayImage::from_raw(
        img.width() as u32,
        img.height() as u32,
        img.pixels().to_vec(),
    )
    .ok_or_else(|| Error::InvalidImage("buffer size mismatch".into()))?;
    buf.save_with_format(path, image::ImageFormat::Png)?;
    Ok(())
}

/// Rescales by `scale` and halves the height so text rows keep the source
/// aspect ratio.
pub fn rescale(img: &GrayImage, scale: f64) -> Result<GrayImage> {
    rescale_with(img, scale, true)
}

/// [`rescale`] with the height-halving made optional.
pub fn rescale_with(img: &GrayImage, scale: f64, aspect_correction: bool) -> Result<GrayImage> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::DegenerateScale(scale));
    }
    let width = (img.width() as f64 * scale).round();
    let height_factor = if aspect_correction {
        scale / 2.0
    } else {
        scale
    };
    let height = (img.height() as f64 * height_factor).round();
    if width < 1.0 || height < 1.0 {
        return Err(Error::DegenerateScale(scale));
    }
    resize_bilinear(img, width as usize, height as usize)
}

/// Bilinear resampling with pixel-center alignment. Same-size resizing is the
/// identity.
pub fn resize_bilinear(img: &GrayImage, width: usize, height: usize) -> Result<GrayImage> {
    if width == 0 || height == 0 {
        return Err(Error::EmptyImage);
    }
    if width == img.width() && height == img.height() {
        return Ok(img.clone());
    }
    let sx = img.width() as f64 / width as f64;
    let sy = img.height() as f64 / height as f64;
    let max_x = (img.width() - 1) as f64;
    let max_y = (img.height() - 1) as f64;

    let axis = |dst: usize, ratio: f64, max: f64| {
        let src = ((dst as f64 + 0.5) * ratio - 0.5).clamp(0.0, max);
        let lo = src.floor();
        (lo as usize, (lo as usize + 1).min(max as usize), src - lo)
    };

    let xs: Vec<_> = (0..width).map(|x| axis(x, sx, max_x)).collect();
    let mut pixels = Vec::with_capacity(width * height);
    for y in 0..height {
        let (y0, y1, fy) = axis(y, sy, max_y);
        for &(x0, x1, fx) in &xs {
            let top = img.get(x0, y0) as f64 * (1.0 - fx) + img.get(x1, y0) as f64 * fx;
            let bottom = img.get(x0, y1) as f64 * (1.0 - fx) + img.get(x1, y1) as f64 * fx;
            let v = top * (1.0 - fy) + bottom * fy;
            pixels.push(v.round().clamp(0.0, 255.0) as u8);
        }
    }
    GrayImage::new(width, height, pixels)
}

/// Real-valued image in tile polarity (stroke 1.0, background 0.0).
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedImage {
    pub width: usize,
    pub height: usize,
    pub values: Vec<f64>,
}

impl NormalizedImage {
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[y * self.width + x]
    }
}

/// Thresholds to stroke/background. Without `invert`, pixels darker than
/// `threshold` are stroke; with it, pixels brighter than `threshold` are.
pub fn binarize_normalize(img: &GrayImage, threshold: u8, invert: bool) -> NormalizedImage {
    let values = img
        .pixels()
        .iter()
        .map(|&p| {
            let stroke = if invert { p > threshold } else { p < threshold };
            if stroke {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    NormalizedImage {
        width: img.width(),
        height: img.height(),
        values,
    }
}

/// Light-on-dark images (mean below mid-gray) get inverted.
pub fn auto_invert(img: &GrayImage) -> bool {
    img.mean() < 128.0
}

/// Row-major grid of tiles covering an image.
#[derive(Debug, Clone, PartialEq)]
pub struct TileGrid {
    pub rows: usize,
    pub cols: usize,
    pub n: usize,
    pub tiles: Vec<Tile>,
}

/// Cuts an image into `n x n` tiles; partial tiles on the right and bottom
/// edges are padded with background.
pub fn tile(img: &NormalizedImage, n: usize) -> Result<TileGrid> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "tile size {n} must be >= 2"
        )));
    }
    let rows = img.height.div_ceil(n);
    let cols = img.width.div_ceil(n);
    let mut tiles = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let mut values = vec![0.0; n * n];
            for ty in 0..n {
                let y = r * n + ty;
                if y >= img.height {
                    break;
                }
                for tx in 0..n {
                    let x = c * n + tx;
                    if x >= img.width {
                        break;
                    }
                    values[ty * n + tx] = img.get(x, y);
                }
            }
            tiles.push(Tile::from_clamped(n, values));
        }
    }
    Ok(TileGrid {
        rows,
        cols,
        n,
        tiles,
    })
}

/// Reassembles tiles into a `width x height` image, dropping edge padding.
pub fn untile(grid: &TileGrid, width: usize, height: usize) -> NormalizedImage {
    let n = grid.n;
    let mut values = vec![0.0; width * height];
    for y in 0..height.min(grid.rows * n) {
        for x in 0..width.min(grid.cols * n) {
            let t = &grid.tiles[(y / n) * grid.cols + x / n];
            values[y * width + x] = t.get(x % n, y % n);
        }
    }
    NormalizedImage {
        width,
        height,
        values,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gray(rgb: [u8; 3]) -> u8 {
        to_grayscale(&rgb, 1, 1).unwrap().get(0, 0)
    }

    #[test]
    fn grayscale_reference_colors() {
        assert_eq!(gray([255, 255, 255]), 255);
        assert_eq!(gray([0, 0, 0]), 0);
        assert_eq!(gray([255, 0, 0]), 76);
    }

    #[test]
    fn grayscale_rejects_empty() {
        assert!(matches!(to_grayscale(&[], 0, 5), Err(Error::EmptyImage)));
    }

    #[test]
    fn rescale_halves_height() {
        let img = GrayImage::filled(100, 100, 9).unwrap();
        let a = rescale(&img, 1.0).unwrap();
        assert_eq!((a.width(), a.height()), (100, 50));
        let b = rescale(&img, 0.5).unwrap();
        assert_eq!((b.width(), b.height()), (50, 25));
        assert!(b.pixels().iter().all(|&p| p == 9));
    }

    #[test]
    fn rescale_rejects_degenerate() {
        let img = GrayImage::filled(3, 3, 0).unwrap();
        assert!(matches!(rescale(&img, 0.1), Err(Error::DegenerateScale(_))));
        assert!(matches!(rescale(&img, 0.0), Err(Error::DegenerateScale(_))));
        assert!(matches!(
            rescale(&img, f64::NAN),
            Err(Error::DegenerateScale(_))
        ));
    }

    #[test]
    fn rescale_without_correction_at_unit_scale_is_identity() {
        let img = GrayImage::from_fn(7, 5, |x, y| (x * 31 + y * 17) as u8).unwrap();
        assert_eq!(rescale_with(&img, 1.0, false).unwrap(), img);
    }

    #[test]
    fn binarize_examples() {
        let white = GrayImage::filled(4, 4, 255).unwrap();
        assert!(binarize_normalize(&white, 128, false)
            .values
            .iter()
            .all(|&v| v == 0.0));
        let black = GrayImage::filled(4, 4, 0).unwrap();
        assert!(binarize_normalize(&black, 128, false)
            .values
            .iter()
            .all(|&v| v == 1.0));
        let checker =
            GrayImage::from_fn(4, 4, |x, y| if (x + y) % 2 == 0 { 0 } else { 255 }).unwrap();
        let n = binarize_normalize(&checker, 128, false);
        for y in 0..4 {
            for x in 0..4 {
                assert_eq!(n.get(x, y), if (x + y) % 2 == 0 { 1.0 } else { 0.0 });
            }
        }
        let inv = binarize_normalize(&checker, 128, true);
        assert_eq!(inv.get(0, 0), 0.0);
        assert_eq!(inv.get(1, 0), 1.0);
    }

    fn plane(width: usize, height: usize) -> NormalizedImage {
        NormalizedImage {
            width,
            height,
            values: (0..width * height).map(|i| (i % 7) as f64 / 6.0).collect(),
        }
    }

    #[test]
    fn tile_counts() {
        let g = tile(&plane(30, 20), 10).unwrap();
        assert_eq!((g.rows, g.cols), (2, 3));

        let p = plane(25, 15);
        let g = tile(&p, 10).unwrap();
        assert_eq!((g.rows, g.cols), (2, 3));
        let corner = &g.tiles[5];
        assert_eq!(corner.get(4, 4), p.get(24, 14));
        assert_eq!(corner.get(5, 0), 0.0);
        assert_eq!(corner.get(0, 5), 0.0);

        let p = plane(10, 10);
        let g = tile(&p, 10).unwrap();
        assert_eq!(g.tiles.len(), 1);
        assert_eq!(g.tiles[0].values(), &p.values[..]);
    }

    #[test]
    fn tile_rejects_small_side() {
        assert!(tile(&plane(4, 4), 1).is_err());
    }

    proptest! {
        #[test]
        fn untile_inverts_tile(w in 1usize..40, h in 1usize..40, n in 2usize..12) {
            let p = plane(w, h);
            let g = tile(&p, n).unwrap();
            prop_assert_eq!(untile(&g, w, h), p);
        }

        #[test]
        fn gray_rgb_is_channel_permutation_invariant(v in any::<u8>()) {
            prop_assert_eq!(gray([v, v, v]), v);
        }

        #[test]
        fn constant_images_stay_constant(v in any::<u8>(), w in 1usize..30, h in 2usize..30, s in 0.2f64..3.0) {
            let img = GrayImage::filled(w, h, v).unwrap();
            if let Ok(out) = rescale(&img, s) {
                prop_assert!(out.pixels().iter().all(|&p| p == v));
            }
        }

        #[test]
        fn unit_scale_keeps_width(w in 1usize..50, h in 2usize..50) {
            let img = GrayImage::filled(w, h, 3).unwrap();
            let out = rescale(&img, 1.0).unwrap();
            prop_assert_eq!(out.width(), w);
            prop_assert_eq!(out.height(), ((h as f64) / 2.0).round() as usize);
        }
    }
}
