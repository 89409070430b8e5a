//! Domain types shared by every stage of the pipeline.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 8-bit grayscale image, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage);
        }
        if pixels.len() != width * height {
            return Err(Error::InvalidImage(format!(
                "{} pixels for a {width}x{height} image",
                pixels.len()
            )));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> u8) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    pub fn mean(&self) -> f64 {
        self.pixels.iter().map(|&p| p as f64).sum::<f64>() / self.pixels.len() as f64
    }

    /// Top-left `width x height` region, padding with `fill` where the crop
    /// extends past the image.
    pub fn crop_or_pad(&self, width: usize, height: usize, fill: u8) -> Result<GrayImage> {
        GrayImage::from_fn(width, height, |x, y| {
            if x < self.width && y < self.height {
                self.get(x, y)
            } else {
                fill
            }
        })
    }
}

/// An `n x n` block of intensities in `[0, 1]`; stroke is 1.0, background 0.0.
#[derive(Debug, Clone, PartialEq)]
pub struct Tile {
    n: usize,
    values: Vec<f64>,
}

impl Tile {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        if n == 0 || values.len() != n * n {
            return Err(Error::InvalidParameter(format!(
                "tile of side {n} needs {} values, got {}",
                n * n,
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidParameter(format!(
                "tile value {v} outside [0, 1]"
            )));
        }
        Ok(Self { n, values })
    }

    pub fn blank(n: usize) -> Self {
        Self {
            n,
            values: vec![0.0; n * n],
        }
    }

    /// Builds a tile from values that are already known to be in range.
    pub(crate) fn from_clamped(n: usize, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), n * n);
        Self { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[y * self.n + x]
    }
}

/// Ordered set of characters eligible for tile replacement. The class index of
/// a character is its position in the set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Charset {
    codes: Vec<u8>,
}

impl Charset {
    pub const SPACE: u8 = 32;

    /// Builds a charset from printable ASCII codes (32..=126). Codes must be
    /// strictly increasing and include the space.
    pub fn new(codes: Vec<u8>) -> Result<Self> {
        if codes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidCharset(
                "codes must be strictly increasing".into(),
            ));
        }
        if let Some(c) = codes.iter().find(|c| !(32..=126).contains(*c)) {
            return Err(Error::InvalidCharset(format!(
                "code {c} is not printable ASCII"
            )));
        }
        if !codes.contains(&Self::SPACE) {
            return Err(Error::InvalidCharset("space (32) is required".into()));
        }
        Ok(Self { codes })
    }

    pub fn printable_ascii() -> Self {
        Self {
            codes: (32..=126).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn codes(&self) -> &[u8] {
        &self.codes
    }

    pub fn code(&self, class: usize) -> Option<u8> {
        self.codes.get(class).copied()
    }

    pub fn class_of(&self, code: u8) -> Option<usize> {
        self.codes.binary_search(&code).ok()
    }

    pub fn space_class(&self) -> usize {
        self.class_of(Self::SPACE)
            .expect("charset invariant: space is present")
    }
}

impl Default for Charset {
    fn default() -> Self {
        Self::printable_ascii()
    }
}

/// Output of a conversion: one class index per tile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsciiGrid {
    pub rows: usize,
    pub cols: usize,
    pub cells: Vec<usize>,
    pub charset: Charset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridViolation {
    CellCount {
        expected: usize,
        got: usize,
    },
    ClassIndex {
        position: usize,
        class: usize,
        classes: usize,
    },
}

impl fmt::Display for GridViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridViolation::CellCount { expected, got } => {
                write!(
                    f,
                    "cell count {got} does not match rows x cols = {expected}"
                )
            }
            GridViolation::ClassIndex {
                position,
                class,
                classes,
            } => write!(
                f,
                "class index {class} at cell {position} is out of range for {classes} classes"
            ),
        }
    }
}

impl AsciiGrid {
    pub fn new(rows: usize, cols: usize, cells: Vec<usize>, charset: Charset) -> Result<Self> {
        let grid = Self {
            rows,
            cols,
            cells,
            charset,
        };
        grid.validate()
            .map_err(|v| Error::InvalidParameter(v.to_string()))?;
        Ok(grid)
    }

    /// Returns the first invariant violation, if any.
    pub fn validate(&self) -> Result<(), GridViolation> {
        let expected = self.rows * self.cols;
        if self.cells.len() != expected {
            return Err(GridViolation::CellCount {
                expected,
                got: self.cells.len(),
            });
        }
        let classes = self.charset.len();
        if let Some((position, &class)) = self.cells.iter().enumerate().find(|(_, &c)| c >= classes)
        {
            return Err(GridViolation::ClassIndex {
                position,
                class,
                classes,
            });
        }
        Ok(())
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.cols + col]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureMode {
    Raw,
    Hog,
    LogPolar,
}

impl FeatureMode {
    pub fn as_str(self) -> &'static str {
        match self {
            FeatureMode::Raw => "raw",
            FeatureMode::Hog => "hog",
            FeatureMode::LogPolar => "logpolar",
        }
    }

    pub(crate) fn to_byte(self) -> u8 {
        match self {
            FeatureMode::Raw => 0,
            FeatureMode::Hog => 1,
            FeatureMode::LogPolar => 2,
        }
    }

    pub(crate) fn from_byte(b: u8) -> Result<Self> {
        match b {
            0 => Ok(FeatureMode::Raw),
            1 => Ok(FeatureMode::Hog),
            2 => Ok(FeatureMode::LogPolar),
            _ => Err(Error::Format(format!("unknown feature mode tag {b}"))),
        }
    }
}

impl fmt::Display for FeatureMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FeatureMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(FeatureMode::Raw),
            "hog" => Ok(FeatureMode::Hog),
            "logpolar" | "log-polar" => Ok(FeatureMode::LogPolar),
            _ => Err(Error::InvalidParameter(format!(
                "unknown feature mode `{s}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub features: Vec<f32>,
    pub label: usize,
}

/// Labeled feature vectors sharing one feature mode and tile size.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    samples: Vec<Sample>,
    tile_size: usize,
    feature_mode: FeatureMode,
    charset: Charset,
    /// Synthesis seed; unknown for datasets read back from disk.
    seed: Option<u64>,
}

impl Dataset {
    pub fn new(
        samples: Vec<Sample>,
        tile_size: usize,
        feature_mode: FeatureMode,
        charset: Charset,
        seed: Option<u64>,
    ) -> Result<Self> {
        if let Some(first) = samples.first() {
            let dim = first.features.len();
            for s in &samples {
                if s.features.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: s.features.len(),
                    });
                }
                if s.label >= charset.len() {
                    return Err(Error::InvalidParameter(format!(
                        "label {} out of range for {} classes",
                        s.label,
                        charset.len()
                    )));
                }
            }
        }
        Ok(Self {
            samples,
            tile_size,
            feature_mode,
            charset,
            seed,
        })
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn tile_size(&self) -> usize {
        self.tile_size
    }

    pub fn feature_mode(&self) -> FeatureMode {
        self.feature_mode
    }

    pub fn charset(&self) -> &Charset {
        &self.charset
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn dim(&self) -> usize {
        self.samples.first().map_or(0, |s| s.features.len())
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.charset.len()];
        for s in &self.samples {
            counts[s.label] += 1;
        }
        counts
    }

    pub fn labels(&self) -> Vec<usize> {
        self.samples.iter().map(|s| s.label).collect()
    }

    /// Same metadata, different samples.
    pub(crate) fn with_samples(&self, samples: Vec<Sample>) -> Self {
        Self {
            samples,
            tile_size: self.tile_size,
            feature_mode: self.feature_mode,
            charset: self.charset.clone(),
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Knn,
    Svm,
    Rf,
    Mlp,
    Cnn,
    Aiss,
}

impl ModelKind {
    pub const ALL: [ModelKind; 6] = [
        ModelKind::Knn,
        ModelKind::Svm,
        ModelKind::Rf,
        ModelKind::Mlp,
        ModelKind::Cnn,
        ModelKind::Aiss,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Knn => "knn",
            ModelKind::Svm => "svm",
            ModelKind::Rf => "rf",
            ModelKind::Mlp => "mlp",
            ModelKind::Cnn => "cnn",
            ModelKind::Aiss => "aiss",
        }
    }

    pub(crate) fn to_byte(self) -> u8 {
        match self {
            ModelKind::Knn => 0,
            ModelKind::Svm => 1,
            ModelKind::Rf => 2,
            ModelKind::Mlp => 3,
            ModelKind::Cnn => 4,
            ModelKind::Aiss => 5,
        }
    }

    pub(crate) fn from_byte(b: u8) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.to_byte() == b)
            .ok_or_else(|| Error::Format(format!("unknown model kind tag {b}")))
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown model kind `{s}`")))
    }
}

pub type Hyperparams = BTreeMap<String, f64>;

/// A trained classifier together with everything needed to use it.
///
/// `payload` holds the kind-specific parameters in the little-endian layout
/// documented in `FORMATS.md`; it is decoded by `classify::Classifier`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelArtifact {
    pub kind: ModelKind,
    pub tile_size: usize,
    pub feature_mode: FeatureMode,
    pub charset: Charset,
    pub hyperparams: Hyperparams,
    pub seed: u64,
    pub train_accuracy: Option<f64>,
    pub payload: Vec<u8>,
    pub format_version: u32,
}
