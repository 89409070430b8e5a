//! End-to-end conversion of a structure image into an [`AsciiGrid`], and
//! rendering of grids back to text or pixels.

use rayon::prelude::*;

use crate::classify::Classifier;
use crate::error::{Error, Result};
use crate::glyphset::render_glyph;
use crate::preprocess::{self, DEFAULT_THRESHOLD};
use crate::types::{AsciiGrid, GrayImage, ModelArtifact};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvertOptions {
    pub scale: f64,
    /// Halve the height so the text output is not stretched vertically.
    pub aspect_correction: bool,
    pub threshold: u8,
    /// `None` picks the polarity from the image mean.
    pub invert: Option<bool>,
}

impl Default for ConvertOptions {
    fn default() -> Self {
        Self {
            scale: 1.0,
            aspect_correction: true,
            threshold: DEFAULT_THRESHOLD,
            invert: None,
        }
    }
}

impl ConvertOptions {
    /// Geometry-preserving settings used when the output is compared with the
    /// input pixel for pixel.
    pub fn evaluation() -> Self {
        Self {
            aspect_correction: false,
            ..Self::default()
        }
    }
}

/// The image a conversion actually tiles: rescaled, still grayscale.
pub fn prepare(img: &GrayImage, opts: &ConvertOptions) -> Result<GrayImage> {
    preprocess::rescale_with(img, opts.scale, opts.aspect_correction)
}

pub fn convert_image(
    img: &GrayImage,
    clf: &Classifier,
    opts: &ConvertOptions,
) -> Result<AsciiGrid> {
    let n = clf.extractor().tile_size();
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "tile size {n} must be >= 2"
        )));
    }
    let scaled = prepare(img, opts)?;
    let invert = opts
        .invert
        .unwrap_or_else(|| preprocess::auto_invert(&scaled));
    let plane = preprocess::binarize_normalize(&scaled, opts.threshold, invert);
    let tiles = preprocess::tile(&plane, n)?;
    let features: Vec<Vec<f32>> = tiles
        .tiles
        .par_iter()
        .map(|t| clf.extractor().extract(t))
        .collect();
    let cells = clf.predict_batch(&features)?;
    AsciiGrid::new(tiles.rows, tiles.cols, cells, clf.charset().clone())
}

/// Decodes the artifact and converts in one step.
pub fn convert_with_artifact(
    img: &GrayImage,
    artifact: &ModelArtifact,
    opts: &ConvertOptions,
) -> Result<AsciiGrid> {
    convert_image(img, &Classifier::from_artifact(artifact)?, opts)
}

/// Rows joined by `\n`, no trailing newline.
pub fn grid_to_text(g: &AsciiGrid) -> String {
    let mut out = String::with_capacity(g.rows * (g.cols + 1));
    for r in 0..g.rows {
        if r > 0 {
            out.push('\n');
        }
        for c in 0..g.cols {
            out.push(g.charset.code(g.get(r, c)).unwrap_or(b'?') as char);
        }
    }
    out
}

/// Stroke coverage to 8-bit intensity. Flooring puts a half-covered pixel at
/// 127, on the stroke side of the default threshold.
pub fn to_gray(coverage: f64) -> u8 {
    (255.0 * (1.0 - coverage.clamp(0.0, 1.0))).floor() as u8
}

/// Draws each cell's glyph as dark strokes on a white background.
pub fn grid_to_image(g: &AsciiGrid, n: usize) -> Result<GrayImage> {
    let glyphs: Vec<Vec<u8>> = g
        .charset
        .codes()
        .iter()
        .map(|&code| {
            Ok(render_glyph(code, n)?
                .values()
                .iter()
                .map(|&v| to_gray(v))
                .collect())
        })
        .collect::<Result<_>>()?;
    GrayImage::from_fn(g.cols * n, g.rows * n, |x, y| {
        glyphs[g.get(y / n, x / n)][(y % n) * n + x % n]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Charset;

    fn grid(rows: usize, cols: usize, codes: &[u8]) -> AsciiGrid {
        let cs = Charset::default();
        let cells = codes.iter().map(|&c| cs.class_of(c).unwrap()).collect();
        AsciiGrid::new(rows, cols, cells, cs).unwrap()
    }

    #[test]
    fn text_layout() {
        assert_eq!(grid_to_text(&grid(1, 3, b" - ")), " - ");
        assert_eq!(grid_to_text(&grid(2, 1, b"||")), "|\n|");
        let t = grid_to_text(&grid(2, 3, b"ab/\\_="));
        assert!(t.lines().all(|l| l.len() == 3));
        assert_eq!(t.lines().count(), 2);
    }

    #[test]
    fn image_rendering() {
        let blank = grid_to_image(&grid(2, 2, b"    "), 10).unwrap();
        assert!(blank.pixels().iter().all(|&p| p == 255));

        let dash = grid_to_image(&grid(1, 1, b"-"), 10).unwrap();
        let glyph = render_glyph(b'-', 10).unwrap();
        for (p, v) in dash.pixels().iter().zip(glyph.values()) {
            assert_eq!(*p, to_gray(*v));
        }

        assert_eq!((to_gray(0.0), to_gray(0.5), to_gray(1.0)), (255, 127, 0));

        let img = grid_to_image(&grid(3, 4, b"abcdefghijkl"), 10).unwrap();
        assert_eq!((img.width(), img.height()), (40, 30));
    }
}
