//! Benchmark runner: synthesize, split, train every configured backend, and
//! score it on the held-out split and on line-art images.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::fixtures;
use super::metrics::classification_metrics;
use super::ssim::{ssim, SsimConfig};
use crate::classify::{self, Classifier};
use crate::convert::{self, ConvertOptions};
use crate::error::{Error, Result};
use crate::glyphset::{
    self, AugmentParams, SynthConfig, CLASSICAL_SAMPLES, DEEP_SAMPLES, DEFAULT_TEST_FRACTION,
};
use crate::preprocess;
use crate::rng::{self, Domain};
use crate::types::{
    AsciiGrid, Charset, Dataset, FeatureMode, GrayImage, Hyperparams, ModelArtifact, ModelKind,
};

/// Median wall-clock milliseconds of `convert_image` over `repetitions` runs,
/// after one untimed warm-up.
pub fn time_conversion(
    img: &GrayImage,
    clf: &Classifier,
    opts: &ConvertOptions,
    repetitions: usize,
) -> Result<f64> {
    let repetitions = repetitions.max(1);
    convert::convert_image(img, clf, opts)?;
    let mut times = Vec::with_capacity(repetitions);
    for _ in 0..repetitions {
        let start = Instant::now();
        std::hint::black_box(convert::convert_image(img, clf, opts)?);
        times.push(start.elapsed().as_secs_f64() * 1e3);
    }
    times.sort_by(f64::total_cmp);
    let mid = times.len() / 2;
    let median = if times.len() % 2 == 1 {
        times[mid]
    } else {
        (times[mid - 1] + times[mid]) / 2.0
    };
    // A clock too coarse to see the run still took some time.
    Ok(median.max(1e-6))
}

/// A grid of uniformly random characters.
pub fn random_grid(
    rows: usize,
    cols: usize,
    charset: &Charset,
    seed: u64,
    index: u64,
) -> AsciiGrid {
    let mut rng = rng::stream(seed, Domain::RandomGrid, index);
    let cells = (0..rows * cols)
        .map(|_| rng.random_range(0..charset.len()))
        .collect();
    AsciiGrid::new(rows, cols, cells, charset.clone()).expect("cells drawn from the charset")
}

/// SSIM between a grid's rendering and the image it was computed from,
/// after cropping the render's padding.
pub fn render_ssim(
    grid: &AsciiGrid,
    n: usize,
    reference: &GrayImage,
    cfg: &SsimConfig,
) -> Result<f64> {
    let render =
        convert::grid_to_image(grid, n)?.crop_or_pad(reference.width(), reference.height(), 255)?;
    ssim(&render, reference, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleBudget {
    Classical,
    Deep,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowConfig {
    pub name: String,
    pub kind: String,
    #[serde(default = "default_features")]
    pub features: String,
    #[serde(default)]
    pub samples: Option<SampleBudget>,
    /// Overrides on top of the kind's defaults.
    #[serde(default)]
    pub hyperparams: Hyperparams,
}

fn default_features() -> String {
    "raw".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_tile")]
    pub tile_size: usize,
    #[serde(default = "default_classical")]
    pub classical_samples: usize,
    #[serde(default = "default_deep")]
    pub deep_samples: usize,
    #[serde(default = "default_fraction")]
    pub test_fraction: f64,
    #[serde(default = "default_reps")]
    pub timing_repetitions: usize,
    #[serde(default)]
    pub augment: AugmentParams,
    /// Include the procedural line-art fixtures.
    #[serde(default = "default_true")]
    pub builtin_fixtures: bool,
    /// Extra images scored alongside the fixtures.
    #[serde(default)]
    pub images: Vec<PathBuf>,
    pub rows: Vec<RowConfig>,
}

fn default_seed() -> u64 {
    7
}
fn default_tile() -> usize {
    10
}
fn default_classical() -> usize {
    CLASSICAL_SAMPLES
}
fn default_deep() -> usize {
    DEEP_SAMPLES
}
fn default_fraction() -> f64 {
    DEFAULT_TEST_FRACTION
}
fn default_reps() -> usize {
    5
}
fn default_true() -> bool {
    true
}

impl Default for BenchConfig {
    fn default() -> Self {
        let row = |name: &str, kind: &str, features: &str| RowConfig {
            name: name.into(),
            kind: kind.into(),
            features: features.into(),
            samples: None,
            hyperparams: Hyperparams::new(),
        };
        Self {
            seed: default_seed(),
            tile_size: default_tile(),
            classical_samples: default_classical(),
            deep_samples: default_deep(),
            test_fraction: default_fraction(),
            timing_repetitions: default_reps(),
            augment: AugmentParams::default(),
            builtin_fixtures: true,
            images: Vec::new(),
            rows: vec![
                row("knn", "knn", "raw"),
                row("svm", "svm", "raw"),
                row("rf", "rf", "raw"),
                row("mlp", "mlp", "raw"),
                row("cnn", "cnn", "raw"),
                row("aiss", "aiss", "logpolar"),
            ],
        }
    }
}

impl BenchConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// The default config with one backend kept, handy for quick runs.
    pub fn only(names: &[&str]) -> Self {
        let mut cfg = Self::default();
        cfg.rows.retain(|r| names.contains(&r.name.as_str()));
        cfg
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.rows.is_empty() {
            return bad("no rows configured".into());
        }
        if self.tile_size < 2 {
            return bad(format!("tile_size {} must be >= 2", self.tile_size));
        }
        if !(self.test_fraction > 0.0 && self.test_fraction < 1.0) {
            return bad(format!(
                "test_fraction {} must be in (0, 1)",
                self.test_fraction
            ));
        }
        if self.timing_repetitions == 0 {
            return bad("timing_repetitions must be >= 1".into());
        }
        self.augment
            .validate()
            .map_err(|e| Error::Config(e.to_string()))?;
        if !self.builtin_fixtures && self.images.is_empty() {
            return bad("no evaluation images".into());
        }
        for r in &self.rows {
            let kind: ModelKind = r.kind.parse()?;
            r.features.parse::<FeatureMode>()?;
            for key in r.hyperparams.keys() {
                if !classify::default_hyperparams(kind).contains_key(key) {
                    return bad(format!("row {}: unknown hyperparameter {key}", r.name));
                }
            }
        }
        Ok(())
    }

    fn budget(&self, r: &RowConfig, kind: ModelKind) -> usize {
        let deep = matches!(kind, ModelKind::Mlp | ModelKind::Cnn);
        match r.samples {
            Some(SampleBudget::Deep) => self.deep_samples,
            Some(SampleBudget::Classical) => self.classical_samples,
            None if deep => self.deep_samples,
            None => self.classical_samples,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub name: String,
    pub kind: String,
    pub features: String,
    pub train_samples: usize,
    pub test_samples: usize,
    pub train_acc: f64,
    pub test_acc: f64,
    pub macro_f1: f64,
    pub macro_recall: f64,
    /// Mean over the evaluation images.
    pub ssim: f64,
    pub image_ssim: Vec<f64>,
    pub conversion_time_ms: f64,
    pub train_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub seed: u64,
    pub tile_size: usize,
    pub classical_samples: usize,
    pub deep_samples: usize,
    pub test_fraction: f64,
    pub augment: AugmentParams,
    pub images: Vec<String>,
    /// SSIM of a uniformly random grid's rendering, per image.
    pub random_ssim: Vec<f64>,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn row(&self, name: &str) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.name == name)
    }

    /// A copy with wall-clock columns zeroed, for run-to-run comparison.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        for row in &mut r.rows {
            row.conversion_time_ms = 0.0;
            row.train_time_ms = 0.0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "name,kind,features,train_samples,test_samples,train_acc,test_acc,macro_f1,macro_recall,ssim,conversion_time_ms,train_time_ms\n",
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.3},{:.1}",
                r.name,
                r.kind,
                r.features,
                r.train_samples,
                r.test_samples,
                r.train_acc,
                r.test_acc,
                r.macro_f1,
                r.macro_recall,
                r.ssim,
                r.conversion_time_ms,
                r.train_time_ms
            );
        }
        out
    }

    /// Aligned tables: accuracy, F1/recall, then SSIM and timing.
    pub fn to_table(&self) -> String {
        let w = self
            .rows
            .iter()
            .map(|r| r.name.len())
            .max()
            .unwrap_or(0)
            .max(9);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "seed {}  tile {}  samples {}/{}  test fraction {}  shift {}  blur {}  noise {}",
            self.seed,
            self.tile_size,
            self.classical_samples,
            self.deep_samples,
            self.test_fraction,
            self.augment.max_shift,
            self.augment.max_sigma,
            self.augment.max_noise
        );
        let _ = writeln!(
            out,
            "\n{:w$}  {:>9}  {:>9}",
            "technique", "train acc", "test acc"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:w$}  {:>8.1}%  {:>8.1}%",
                r.name,
                100.0 * r.train_acc,
                100.0 * r.test_acc
            );
        }
        let _ = writeln!(out, "\n{:w$}  {:>8}  {:>8}", "technique", "F1", "recall");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:w$}  {:>8.3}  {:>8.3}",
                r.name, r.macro_f1, r.macro_recall
            );
        }
        let _ = writeln!(
            out,
            "\n{:w$}  {:>8}  {:>12}",
            "technique", "SSIM", "convert ms"
        );
        let random = self.random_ssim.iter().sum::<f64>() / self.random_ssim.len().max(1) as f64;
        let _ = writeln!(out, "{:w$}  {:>8.4}  {:>12}", "random", random, "-");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:w$}  {:>8.4}  {:>12.2}",
                r.name, r.ssim, r.conversion_time_ms
            );
        }
        out
    }
}

struct Split {
    train: Dataset,
    test: Dataset,
}

fn load_images(cfg: &BenchConfig) -> Result<Vec<(String, GrayImage)>> {
    let mut images = if cfg.builtin_fixtures {
        fixtures::all()
    } else {
        Vec::new()
    };
    for p in &cfg.images {
        images.push((p.display().to_string(), preprocess::load_image(p)?));
    }
    Ok(images)
}

/// Runs every configured row in order. Backends run one after another so
/// their timings do not interfere.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<BenchReport> {
    Ok(run_benchmark_with_models(cfg)?.0)
}

/// Like [`run_benchmark`], also returning the trained models in row order.
pub fn run_benchmark_with_models(cfg: &BenchConfig) -> Result<(BenchReport, Vec<ModelArtifact>)> {
    cfg.validate()?;
    let charset = Charset::default();
    let n = cfg.tile_size;
    let ssim_cfg = SsimConfig::default();
    let opts = ConvertOptions::evaluation();

    let images = load_images(cfg).map_err(|e| e.in_stage("load images"))?;
    let references: Vec<GrayImage> = images
        .iter()
        .map(|(_, img)| convert::prepare(img, &opts))
        .collect::<Result<_>>()
        .map_err(|e| e.in_stage("prepare images"))?;
    let random_ssim = references
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let grid = random_grid(
                r.height().div_ceil(n),
                r.width().div_ceil(n),
                &charset,
                cfg.seed,
                i as u64,
            );
            render_ssim(&grid, n, r, &ssim_cfg)
        })
        .collect::<Result<Vec<_>>>()
        .map_err(|e| e.in_stage("random baseline"))?;

    let mut splits: BTreeMap<(FeatureMode, usize), Split> = BTreeMap::new();
    let mut rows = Vec::with_capacity(cfg.rows.len());
    let mut models = Vec::with_capacity(cfg.rows.len());
    for rc in &cfg.rows {
        let stage = |what: &str| format!("{} ({what})", rc.name);
        let kind: ModelKind = rc.kind.parse()?;
        let mode: FeatureMode = rc.features.parse()?;
        let count = cfg.budget(rc, kind);

        if let std::collections::btree_map::Entry::Vacant(e) = splits.entry((mode, count)) {
            let synth = SynthConfig {
                augment: cfg.augment,
                ..SynthConfig::new(n, count, cfg.seed, mode)
            };
            let data = glyphset::synthesize(&charset, &synth)
                .map_err(|e| e.in_stage(stage("synthesize")))?;
            let (train, test) = glyphset::split(&data, cfg.test_fraction, cfg.seed)
                .map_err(|e| e.in_stage(stage("split")))?;
            e.insert(Split { train, test });
        }
        let split = &splits[&(mode, count)];

        let mut hp = classify::default_hyperparams(kind);
        hp.extend(rc.hyperparams.clone());
        let start = Instant::now();
        let artifact = classify::train(kind, &split.train, &hp, cfg.seed)
            .map_err(|e| e.in_stage(stage("train")))?;
        let train_time_ms = start.elapsed().as_secs_f64() * 1e3;
        let clf =
            Classifier::from_artifact(&artifact).map_err(|e| e.in_stage(stage("load model")))?;

        let train_acc = match artifact.train_accuracy {
            Some(a) => a,
            None => clf
                .accuracy(&split.train)
                .map_err(|e| e.in_stage(stage("train accuracy")))?,
        };
        let features: Vec<Vec<f32>> = split
            .test
            .samples()
            .iter()
            .map(|s| s.features.clone())
            .collect();
        let pred = clf
            .predict_batch(&features)
            .map_err(|e| e.in_stage(stage("test")))?;
        let metrics = classification_metrics(&pred, &split.test.labels(), charset.len())?;

        let mut image_ssim = Vec::with_capacity(images.len());
        for ((_, img), reference) in images.iter().zip(&references) {
            let grid = convert::convert_image(img, &clf, &opts)
                .map_err(|e| e.in_stage(stage("convert")))?;
            image_ssim.push(
                render_ssim(&grid, n, reference, &ssim_cfg)
                    .map_err(|e| e.in_stage(stage("ssim")))?,
            );
        }
        let conversion_time_ms = time_conversion(&images[0].1, &clf, &opts, cfg.timing_repetitions)
            .map_err(|e| e.in_stage(stage("timing")))?;

        rows.push(BenchRow {
            name: rc.name.clone(),
            kind: kind.to_string(),
            features: mode.to_string(),
            train_samples: split.train.len(),
            test_samples: split.test.len(),
            train_acc,
            test_acc: metrics.accuracy,
            macro_f1: metrics.macro_f1,
            macro_recall: metrics.macro_recall,
            ssim: image_ssim.iter().sum::<f64>() / image_ssim.len() as f64,
            image_ssim,
            conversion_time_ms,
            train_time_ms,
        });
        models.push(artifact);
    }

    let report = BenchReport {
        seed: cfg.seed,
        tile_size: n,
        classical_samples: cfg.classical_samples,
        deep_samples: cfg.deep_samples,
        test_fraction: cfg.test_fraction,
        augment: cfg.augment,
        images: images.into_iter().map(|(name, _)| name).collect(),
        random_ssim,
        rows,
    };
    Ok((report, models))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_round_trips_through_toml() {
        let cfg = BenchConfig::default();
        let text = toml::to_string(&cfg).unwrap();
        assert_eq!(BenchConfig::from_toml(&text).unwrap(), cfg);
    }

    #[test]
    fn minimal_toml_fills_defaults() {
        let cfg = BenchConfig::from_toml("[[rows]]\nname = \"k\"\nkind = \"knn\"\n").unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.rows[0].features, "raw");
        assert_eq!(cfg.classical_samples, 2500);
    }

    #[test]
    fn malformed_configs_are_rejected() {
        for text in [
            "rows = []",
            "[[rows]]\nname = \"x\"\nkind = \"tree\"\n",
            "[[rows]]\nname = \"x\"\nkind = \"knn\"\nfeatures = \"sift\"\n",
            "[[rows]]\nname = \"x\"\nkind = \"knn\"\n[rows.hyperparams]\ntrees = 3.0\n",
            "colour = 1\n[[rows]]\nname = \"x\"\nkind = \"knn\"\n",
            "test_fraction = 1.5\n[[rows]]\nname = \"x\"\nkind = \"knn\"\n",
            "[augment]\nmax_shift = -1\n[[rows]]\nname = \"x\"\nkind = \"knn\"\n",
        ] {
            assert!(
                matches!(
                    BenchConfig::from_toml(text),
                    Err(Error::Config(_)) | Err(Error::InvalidParameter(_))
                ),
                "{text}"
            );
        }
    }

    #[test]
    fn single_row_report() {
        let mut cfg = BenchConfig::only(&["knn"]);
        cfg.classical_samples = 475;
        cfg.timing_repetitions = 1;
        let report = run_benchmark(&cfg).unwrap();
        assert_eq!(report.rows.len(), 1);
        let r = &report.rows[0];
        assert_eq!(r.train_samples + r.test_samples, 475);
        assert!(r.conversion_time_ms > 0.0);
        assert_eq!(r.image_ssim.len(), fixtures::FIXTURE_NAMES.len());
        for v in [r.train_acc, r.test_acc, r.macro_f1, r.macro_recall] {
            assert!((0.0..=1.0).contains(&v));
        }
        assert!(report.to_csv().lines().count() == 2);
        assert!(report.to_table().contains("knn"));
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(json["rows"][0]["name"], "knn");
    }
}
