//! Reference glyph rasterization and synthetic dataset generation.

mod font;
pub mod io;

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::FeatureExtractor;
use crate::rng::{self, Domain, Rng};
use crate::types::{Charset, Dataset, FeatureMode, Sample, Tile};

pub use font::{CELL_HEIGHT, CELL_WIDTH};

/// Dataset size the classical backends train on.
pub const CLASSICAL_SAMPLES: usize = 2500;
/// Dataset size the neural backends train on.
pub const DEEP_SAMPLES: usize = 50_000;
pub const DEFAULT_TEST_FRACTION: f64 = 0.2;

/// Rasterizes a printable ASCII character from the embedded 8x16 font and
/// area-averages it down (or up) to an `n x n` tile.
pub fn render_glyph(code: u8, n: usize) -> Result<Tile> {
    if !(font::FIRST_CODE..=font::LAST_CODE).contains(&code) {
        return Err(Error::UnknownCharacter(code as u32));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "tile size {n} must be >= 2"
        )));
    }
    let rows = &font::GLYPHS[(code - font::FIRST_CODE) as usize];
    let wx = coverage(CELL_WIDTH, n);
    let wy = coverage(CELL_HEIGHT, n);

    let mut values = vec![0.0; n * n];
    for ty in 0..n {
        for tx in 0..n {
            let mut acc = 0.0;
            for (sy, &row) in rows.iter().enumerate() {
                let fy = wy[ty * CELL_HEIGHT + sy];
                if fy == 0.0 || row == 0 {
                    continue;
                }
                for sx in 0..CELL_WIDTH {
                    if row & (0x80 >> sx) != 0 {
                        acc += fy * wx[tx * CELL_WIDTH + sx];
                    }
                }
            }
            values[ty * n + tx] = acc.clamp(0.0, 1.0);
        }
    }
    Ok(Tile::from_clamped(n, values))
}

/// Renders a character that must belong to `charset`.
pub fn render_charset_glyph(charset: &Charset, code: u8, n: usize) -> Result<Tile> {
    if charset.class_of(code).is_none() {
        return Err(Error::UnknownCharacter(code as u32));
    }
    render_glyph(code, n)
}

/// `w[dst * src_len + src]` is the fraction of destination cell `dst` covered
/// by source cell `src` when `src_len` cells are mapped onto `dst_len`.
fn coverage(src_len: usize, dst_len: usize) -> Vec<f64> {
    let step = src_len as f64 / dst_len as f64;
    let mut w = vec![0.0; dst_len * src_len];
    for d in 0..dst_len {
        let (lo, hi) = (d as f64 * step, (d + 1) as f64 * step);
        for s in 0..src_len {
            let overlap = (hi.min((s + 1) as f64) - lo.max(s as f64)).max(0.0);
            w[d * src_len + s] = overlap / step;
        }
    }
    w
}

/// Upper bounds of the random augmentation applied to synthetic samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AugmentParams {
    /// Shifts are drawn uniformly from `-max_shift..=max_shift` on each axis.
    pub max_shift: i32,
    /// Gaussian blur sigma is drawn uniformly from `[0, max_sigma]`.
    pub max_sigma: f64,
    /// Noise amplitude `a` is drawn from `[0, max_noise]`; each pixel then
    /// gets uniform noise in `[-a, a]`.
    pub max_noise: f64,
}

impl Default for AugmentParams {
    fn default() -> Self {
        Self {
            max_shift: 2,
            max_sigma: 1.0,
            max_noise: 0.1,
        }
    }
}

impl AugmentParams {
    pub const IDENTITY: AugmentParams = AugmentParams {
        max_shift: 0,
        max_sigma: 0.0,
        max_noise: 0.0,
    };

    pub fn validate(&self) -> Result<()> {
        if self.max_shift < 0 || !(self.max_sigma >= 0.0) || !(self.max_noise >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "augmentation bounds must be non-negative: {self:?}"
            )));
        }
        Ok(())
    }
}

/// Shift, then blur, then add noise; the result is clamped to `[0, 1]`.
pub fn augment(tile: &Tile, rng: &mut Rng, params: &AugmentParams) -> Tile {
    let n = tile.n();
    let dx = draw_shift(rng, params.max_shift);
    let dy = draw_shift(rng, params.max_shift);
    let sigma = draw_unit(rng, params.max_sigma);
    let amplitude = draw_unit(rng, params.max_noise);

    let mut values = shift(tile.values(), n, dx, dy);
    if sigma > 0.0 {
        values = gaussian_blur(&values, n, sigma);
    }
    if amplitude > 0.0 {
        for v in &mut values {
            *v += rng.random_range(-amplitude..=amplitude);
        }
    }
    for v in &mut values {
        *v = v.clamp(0.0, 1.0);
    }
    Tile::from_clamped(n, values)
}

fn draw_shift(rng: &mut Rng, max: i32) -> i32 {
    if max == 0 {
        0
    } else {
        rng.random_range(-max..=max)
    }
}

fn draw_unit(rng: &mut Rng, max: f64) -> f64 {
    if max == 0.0 {
        0.0
    } else {
        rng.random_range(0.0..=max)
    }
}

fn shift(values: &[f64], n: usize, dx: i32, dy: i32) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for y in 0..n as i32 {
        let sy = y - dy;
        if !(0..n as i32).contains(&sy) {
            continue;
        }
        for x in 0..n as i32 {
            let sx = x - dx;
            if (0..n as i32).contains(&sx) {
                out[(y * n as i32 + x) as usize] = values[(sy * n as i32 + sx) as usize];
            }
        }
    }
    out
}

/// Separable Gaussian blur; pixels outside the tile count as background.
fn gaussian_blur(values: &[f64], n: usize, sigma: f64) -> Vec<f64> {
    let radius = (3.0 * sigma).ceil() as i64;
    let mut kernel: Vec<f64> = (-radius..=radius)
        .map(|i| (-(i * i) as f64 / (2.0 * sigma * sigma)).exp())
        .collect();
    let total: f64 = kernel.iter().sum();
    kernel.iter_mut().for_each(|k| *k /= total);

    let pass = |src: &[f64], horizontal: bool| {
        let mut dst = vec![0.0; n * n];
        for y in 0..n {
            for x in 0..n {
                let mut acc = 0.0;
                for (k, w) in kernel.iter().enumerate() {
                    let off = k as i64 - radius;
                    let (sx, sy) = if horizontal {
                        (x as i64 + off, y as i64)
                    } else {
                        (x as i64, y as i64 + off)
                    };
                    if (0..n as i64).contains(&sx) && (0..n as i64).contains(&sy) {
                        acc += w * src[sy as usize * n + sx as usize];
                    }
                }
                dst[y * n + x] = acc;
            }
        }
        dst
    };
    let tmp = pass(values, true);
    pass(&tmp, false)
}

/// Synthesis settings beyond the charset itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    pub tile_size: usize,
    pub count: usize,
    pub seed: u64,
    pub feature_mode: FeatureMode,
    pub augment: AugmentParams,
}

impl SynthConfig {
    pub fn new(tile_size: usize, count: usize, seed: u64, feature_mode: FeatureMode) -> Self {
        Self {
            tile_size,
            count,
            seed,
            feature_mode,
            augment: AugmentParams::default(),
        }
    }
}

/// Generates the augmented glyph tiles behind a dataset. Sample `i` has class
/// `i % classes`; the first pass over the classes is left clean.
pub fn synthesize_tiles(charset: &Charset, cfg: &SynthConfig) -> Result<Vec<(Tile, usize)>> {
    let classes = charset.len();
    if cfg.count < classes {
        return Err(Error::TooFewSamples {
            requested: cfg.count,
            classes,
        });
    }
    cfg.augment.validate()?;
    let clean: Vec<Tile> = charset
        .codes()
        .iter()
        .map(|&c| render_glyph(c, cfg.tile_size))
        .collect::<Result<_>>()?;

    Ok((0..cfg.count)
        .into_par_iter()
        .map(|i| {
            let label = i % classes;
            let tile = if i < classes {
                clean[label].clone()
            } else {
                let mut rng = rng::stream(cfg.seed, Domain::Augment, i as u64);
                augment(&clean[label], &mut rng, &cfg.augment)
            };
            (tile, label)
        })
        .collect())
}

/// Synthesizes a labeled dataset, balanced across classes to within one
/// sample, with one clean rendering per class.
pub fn synthesize(charset: &Charset, cfg: &SynthConfig) -> Result<Dataset> {
    let extractor = FeatureExtractor::new(cfg.feature_mode, cfg.tile_size)?;
    let samples = synthesize_tiles(charset, cfg)?
        .into_par_iter()
        .map(|(tile, label)| Sample {
            features: extractor.extract(&tile),
            label,
        })
        .collect();
    Dataset::new(
        samples,
        cfg.tile_size,
        cfg.feature_mode,
        charset.clone(),
        Some(cfg.seed),
    )
}

/// Stratified train/test split. Each class contributes within one sample of
/// its proportional share to the test set; the total is `round(len * fraction)`.
pub fn split(data: &Dataset, test_fraction: f64, seed: u64) -> Result<(Dataset, Dataset)> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "test fraction {test_fraction} must lie in (0, 1)"
        )));
    }
    let counts = data.class_counts();
    let total_test = (data.len() as f64 * test_fraction).round() as usize;
    if total_test == 0 {
        return Err(Error::EmptySplit("test"));
    }
    if total_test >= data.len() {
        return Err(Error::EmptySplit("train"));
    }

    // Largest-remainder apportionment of the test quota over classes.
    let ideal: Vec<f64> = counts.iter().map(|&c| c as f64 * test_fraction).collect();
    let mut quota: Vec<usize> = ideal.iter().map(|q| q.floor() as usize).collect();
    let mut remaining = total_test - quota.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..counts.len())
        .filter(|&c| quota[c] < counts[c])
        .collect();
    order.sort_by(|&a, &b| {
        let (ra, rb) = (ideal[a] - ideal[a].floor(), ideal[b] - ideal[b].floor());
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for c in order {
        if remaining == 0 {
            break;
        }
        quota[c] += 1;
        remaining -= 1;
    }

    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); counts.len()];
    for (i, s) in data.samples().iter().enumerate() {
        by_class[s.label].push(i);
    }
    let mut in_test = vec![false; data.len()];
    for (class, members) in by_class.iter_mut().enumerate() {
        let mut rng = rng::stream(seed, Domain::Split, class as u64);
        // Partial Fisher-Yates: the first `quota` entries become the test set.
        for k in 0..quota[class] {
            let j = rng.random_range(k..members.len());
            members.swap(k, j);
            in_test[members[k]] = true;
        }
    }

    let (mut train, mut test) = (Vec::new(), Vec::new());
    for (i, s) in data.samples().iter().enumerate() {
        if in_test[i] {
            test.push(s.clone());
        } else {
            train.push(s.clone());
        }
    }
    Ok((data.with_samples(train), data.with_samples(test)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn space_renders_blank() {
        let t = render_glyph(b' ', 10).unwrap();
        assert!(t.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn dash_is_a_horizontal_band() {
        // The font draws '-' on cell row 7 of 16. At n = 10 each tile row
        // covers 1.6 cell rows, so only tile row 4 ([6.4, 8.0)) sees it.
        let t = render_glyph(b'-', 10).unwrap();
        for y in 0..10 {
            let row_sum: f64 = (0..10).map(|x| t.get(x, y)).sum();
            if y == 4 {
                assert!(row_sum > 0.0, "row {y} should carry the stroke");
            } else {
                assert_eq!(row_sum, 0.0, "row {y} should be empty");
            }
        }
    }

    #[test]
    fn rendering_is_deterministic_and_distinct() {
        let charset = Charset::default();
        let tiles: Vec<Tile> = charset
            .codes()
            .iter()
            .map(|&c| render_glyph(c, 10).unwrap())
            .collect();
        for (i, &c) in charset.codes().iter().enumerate() {
            assert_eq!(render_glyph(c, 10).unwrap(), tiles[i]);
        }
        for i in 1..tiles.len() {
            for j in (i + 1)..tiles.len() {
                assert_ne!(tiles[i], tiles[j], "codes {} and {}", i + 32, j + 32);
            }
        }
    }

    #[test]
    fn unknown_character_is_rejected() {
        assert!(matches!(
            render_glyph(10, 10),
            Err(Error::UnknownCharacter(10))
        ));
        assert!(matches!(
            render_glyph(127, 10),
            Err(Error::UnknownCharacter(127))
        ));
        let small = Charset::new(vec![32, 45]).unwrap();
        assert!(render_charset_glyph(&small, b'a', 10).is_err());
    }

    #[test]
    fn identity_augmentation_is_noop() {
        let t = render_glyph(b'A', 10).unwrap();
        let mut rng = rng::stream(1, Domain::Augment, 0);
        assert_eq!(augment(&t, &mut rng, &AugmentParams::IDENTITY), t);
    }

    #[test]
    fn shifting_blank_stays_blank() {
        let params = AugmentParams {
            max_shift: 2,
            max_sigma: 0.0,
            max_noise: 0.0,
        };
        let mut rng = rng::stream(5, Domain::Augment, 0);
        for _ in 0..20 {
            let out = augment(&Tile::blank(10), &mut rng, &params);
            assert!(out.values().iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn augmentation_is_seeded() {
        let t = render_glyph(b'&', 10).unwrap();
        let p = AugmentParams::default();
        let a = augment(&t, &mut rng::stream(9, Domain::Augment, 3), &p);
        let b = augment(&t, &mut rng::stream(9, Domain::Augment, 3), &p);
        assert_eq!(a, b);
    }

    #[test]
    fn synthesize_balances_classes() {
        let charset = Charset::default();
        let d = synthesize(&charset, &SynthConfig::new(10, 95, 1, FeatureMode::Raw)).unwrap();
        assert!(d.class_counts().iter().all(|&c| c == 1));
        // All 95 are the clean renderings.
        for s in d.samples() {
            let clean = render_glyph(charset.code(s.label).unwrap(), 10).unwrap();
            let expect: Vec<f32> = clean.values().iter().map(|&v| v as f32).collect();
            assert_eq!(s.features, expect);
        }

        let d = synthesize(&charset, &SynthConfig::new(10, 2500, 1, FeatureMode::Raw)).unwrap();
        let counts = d.class_counts();
        assert!(counts.iter().all(|&c| c == 26 || c == 27));
        assert_eq!(counts.iter().filter(|&&c| c == 27).count(), 30);
    }

    #[test]
    fn synthesize_rejects_tiny_counts() {
        let r = synthesize(
            &Charset::default(),
            &SynthConfig::new(10, 10, 1, FeatureMode::Raw),
        );
        assert!(matches!(
            r,
            Err(Error::TooFewSamples {
                requested: 10,
                classes: 95
            })
        ));
    }

    #[test]
    fn synthesize_is_reproducible() {
        let cfg = SynthConfig::new(10, 500, 42, FeatureMode::Hog);
        let a = synthesize(&Charset::default(), &cfg).unwrap();
        let b = synthesize(&Charset::default(), &cfg).unwrap();
        assert_eq!(a, b);
    }

    fn toy(n: usize, classes: usize) -> Dataset {
        let samples = (0..n)
            .map(|i| Sample {
                features: vec![i as f32],
                label: i % classes,
            })
            .collect();
        Dataset::new(samples, 10, FeatureMode::Raw, Charset::default(), Some(0)).unwrap()
    }

    #[test]
    fn split_sizes_and_strata() {
        let d = toy(100, 7);
        let (train, test) = split(&d, 0.2, 3).unwrap();
        assert_eq!((train.len(), test.len()), (80, 20));
        let counts = d.class_counts();
        for (c, &t) in test.class_counts().iter().enumerate() {
            assert!((t as f64 - counts[c] as f64 * 0.2).abs() <= 1.0);
        }
        let mut all: Vec<f32> = train
            .samples()
            .iter()
            .chain(test.samples())
            .map(|s| s.features[0])
            .collect();
        all.sort_by(f32::total_cmp);
        assert_eq!(all, (0..100).map(|i| i as f32).collect::<Vec<_>>());
        assert_eq!(split(&d, 0.2, 3).unwrap(), (train, test));
    }

    #[test]
    fn split_rejects_empty_sides() {
        let d = toy(4, 2);
        assert!(matches!(split(&d, 0.01, 0), Err(Error::EmptySplit("test"))));
        assert!(matches!(
            split(&d, 0.99, 0),
            Err(Error::EmptySplit("train"))
        ));
        assert!(split(&d, 1.0, 0).is_err());
    }

    proptest! {
        #[test]
        fn augment_stays_in_unit_range(seed in any::<u64>(), code in 32u8..=126) {
            let t = render_glyph(code, 10).unwrap();
            let p = AugmentParams { max_shift: 3, max_sigma: 2.0, max_noise: 0.5 };
            let out = augment(&t, &mut rng::stream(seed, Domain::Augment, 0), &p);
            prop_assert!(out.values().iter().all(|v| (0.0..=1.0).contains(v)));
        }
    }
}
