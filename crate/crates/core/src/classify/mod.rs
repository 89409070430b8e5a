//! Tile classifiers behind one train/predict interface.
//!
//! `train` produces a [`ModelArtifact`] whose payload is the only copy of the
//! learned parameters; [`Classifier::from_artifact`] decodes it for
//! inference. Everything reported about a model, including its training
//! accuracy, is measured through the decoded classifier.

mod aiss;
pub mod artifact;
mod cnn;
mod forest;
mod knn;
mod mlp;
mod nn;
mod payload;
mod svm;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::features::{FeatureExtractor, HogConfig, LogPolarConfig};
use crate::types::{Charset, Dataset, FeatureMode, Hyperparams, ModelArtifact, ModelKind};

pub use cnn::{Cnn, CnnShape};
pub use mlp::Mlp;
pub use nn::{gradient_check, GradientCheck, Network};

pub const FORMAT_VERSION: u32 = 1;

/// Hyperparameters each kind requires, with their defaults.
pub fn default_hyperparams(kind: ModelKind) -> Hyperparams {
    let pairs: &[(&str, f64)] = match kind {
        ModelKind::Knn => &[("k", 5.0)],
        ModelKind::Svm => &[("lambda", 1e-4), ("epochs", 50.0)],
        ModelKind::Rf => &[("trees", 100.0), ("min_samples_leaf", 1.0)],
        ModelKind::Mlp | ModelKind::Cnn => &[("batch", 256.0), ("lr", 1e-3), ("epochs", 10.0)],
        ModelKind::Aiss => &[("radial_bins", 5.0), ("angular_bins", 12.0)],
    };
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

pub(crate) fn param(h: &Hyperparams, key: &str) -> Result<f64> {
    h.get(key)
        .copied()
        .ok_or_else(|| Error::MissingHyperparam(key.to_string()))
}

pub(crate) fn positive_int(h: &Hyperparams, key: &str) -> Result<usize> {
    let v = param(h, key)?;
    if v >= 1.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
        Ok(v as usize)
    } else {
        Err(Error::InvalidHyperparam {
            key: key.to_string(),
            reason: format!("{v} is not a positive integer"),
        })
    }
}

pub(crate) fn positive_real(h: &Hyperparams, key: &str) -> Result<f64> {
    let v = param(h, key)?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::InvalidHyperparam {
            key: key.to_string(),
            reason: format!("{v} is not a positive number"),
        })
    }
}

/// Trains a classifier of `kind` on `data`. Identical inputs give a
/// byte-identical artifact.
pub fn train(
    kind: ModelKind,
    data: &Dataset,
    hyperparams: &Hyperparams,
    seed: u64,
) -> Result<ModelArtifact> {
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let incompatible = match kind {
        ModelKind::Cnn => data.feature_mode() != FeatureMode::Raw,
        _ => false,
    };
    if incompatible {
        return Err(Error::IncompatibleFeatureMode {
            kind: kind.to_string(),
            mode: data.feature_mode().to_string(),
        });
    }

    let (payload, feature_mode) = match kind {
        ModelKind::Knn => (
            knn::Knn::fit(data, positive_int(hyperparams, "k")?).encode(),
            data.feature_mode(),
        ),
        ModelKind::Svm => (
            svm::Svm::fit(
                data,
                positive_real(hyperparams, "lambda")?,
                positive_int(hyperparams, "epochs")?,
                seed,
            )
            .encode(),
            data.feature_mode(),
        ),
        ModelKind::Rf => (
            forest::Forest::fit(
                data,
                positive_int(hyperparams, "trees")?,
                positive_int(hyperparams, "min_samples_leaf")?,
                seed,
            )
            .encode(),
            data.feature_mode(),
        ),
        ModelKind::Mlp => {
            let opts = nn::TrainOptions::from_hyperparams(hyperparams)?;
            (
                mlp::Mlp::fit(data, &opts, seed).encode(),
                data.feature_mode(),
            )
        }
        ModelKind::Cnn => {
            let opts = nn::TrainOptions::from_hyperparams(hyperparams)?;
            (cnn::Cnn::fit(data, &opts, seed).encode(), FeatureMode::Raw)
        }
        ModelKind::Aiss => {
            let cfg = LogPolarConfig {
                radial_bins: positive_int(hyperparams, "radial_bins")?,
                angular_bins: positive_int(hyperparams, "angular_bins")?,
            };
            (
                aiss::Aiss::build(data.charset(), data.tile_size(), cfg)?.encode(),
                FeatureMode::LogPolar,
            )
        }
    };

    let mut artifact = ModelArtifact {
        kind,
        tile_size: data.tile_size(),
        feature_mode,
        charset: data.charset().clone(),
        hyperparams: hyperparams.clone(),
        seed,
        train_accuracy: None,
        payload,
        format_version: FORMAT_VERSION,
    };

    // AISS never sees the training features, so it can only be scored on
    // data in its own feature space.
    if kind != ModelKind::Aiss || data.feature_mode() == FeatureMode::LogPolar {
        let clf = Classifier::from_artifact(&artifact)?;
        artifact.train_accuracy = Some(clf.accuracy(data)?);
    }
    Ok(artifact)
}

#[derive(Debug, Clone)]
enum Backend {
    Knn(knn::Knn),
    Svm(svm::Svm),
    Rf(forest::Forest),
    Mlp(mlp::Mlp),
    Cnn(cnn::Cnn),
    Aiss(aiss::Aiss),
}

/// A decoded, ready-to-use model. Safe to share between threads.
#[derive(Debug, Clone)]
pub struct Classifier {
    kind: ModelKind,
    dim: usize,
    charset: Charset,
    extractor: FeatureExtractor,
    backend: Backend,
}

impl Classifier {
    pub fn from_artifact(a: &ModelArtifact) -> Result<Self> {
        let classes = a.charset.len();
        let backend = match a.kind {
            ModelKind::Knn => Backend::Knn(knn::Knn::decode(&a.payload, classes)?),
            ModelKind::Svm => Backend::Svm(svm::Svm::decode(&a.payload, classes)?),
            ModelKind::Rf => Backend::Rf(forest::Forest::decode(&a.payload, classes)?),
            ModelKind::Mlp => Backend::Mlp(mlp::Mlp::decode(&a.payload, classes)?),
            ModelKind::Cnn => Backend::Cnn(cnn::Cnn::decode(&a.payload, classes)?),
            ModelKind::Aiss => Backend::Aiss(aiss::Aiss::decode(&a.payload, classes)?),
        };
        let dim = match &backend {
            Backend::Knn(m) => m.dim(),
            Backend::Svm(m) => m.dim(),
            Backend::Rf(m) => m.dim(),
            Backend::Mlp(m) => m.dim(),
            Backend::Cnn(m) => m.dim(),
            Backend::Aiss(m) => m.dim(),
        };
        let log_polar = match &backend {
            Backend::Aiss(m) => m.config(),
            _ => LogPolarConfig::default(),
        };
        let extractor = FeatureExtractor::with_configs(
            a.feature_mode,
            a.tile_size,
            HogConfig::for_tile(a.tile_size),
            log_polar,
        )?;
        if extractor.dim() != dim {
            return Err(Error::Format(format!(
                "payload expects {dim} features but {} tiles of size {} give {}",
                a.feature_mode,
                a.tile_size,
                extractor.dim()
            )));
        }
        Ok(Self {
            kind: a.kind,
            dim,
            charset: a.charset.clone(),
            extractor,
            backend,
        })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn charset(&self) -> &Charset {
        &self.charset
    }

    /// Feature extractor matching the model's feature mode and tile size.
    pub fn extractor(&self) -> &FeatureExtractor {
        &self.extractor
    }

    pub fn predict(&self, features: &[f32]) -> Result<usize> {
        if features.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: features.len(),
            });
        }
        Ok(self.predict_unchecked(features))
    }

    fn predict_unchecked(&self, x: &[f32]) -> usize {
        match &self.backend {
            Backend::Knn(m) => m.predict(x),
            Backend::Svm(m) => m.predict(x),
            Backend::Rf(m) => m.predict(x),
            Backend::Mlp(m) => m.predict(x),
            Backend::Cnn(m) => m.predict(x),
            Backend::Aiss(m) => m.predict(x),
        }
    }

    /// Element-wise [`Classifier::predict`]; any dimension mismatch fails the
    /// whole batch.
    pub fn predict_batch<F: AsRef<[f32]> + Sync>(&self, batch: &[F]) -> Result<Vec<usize>> {
        if let Some(bad) = batch.iter().find(|f| f.as_ref().len() != self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: bad.as_ref().len(),
            });
        }
        Ok(batch
            .par_iter()
            .map(|f| self.predict_unchecked(f.as_ref()))
            .collect())
    }

    pub fn accuracy(&self, data: &Dataset) -> Result<f64> {
        if data.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let feats: Vec<&[f32]> = data
            .samples()
            .iter()
            .map(|s| s.features.as_slice())
            .collect();
        let pred = self.predict_batch(&feats)?;
        let correct = pred
            .iter()
            .zip(data.samples())
            .filter(|(p, s)| **p == s.label)
            .count();
        Ok(correct as f64 / data.len() as f64)
    }
}

/// Decodes `artifact` and classifies one feature vector.
pub fn predict(artifact: &ModelArtifact, features: &[f32]) -> Result<usize> {
    Classifier::from_artifact(artifact)?.predict(features)
}

/// Decodes `artifact` once and classifies every vector in `batch`.
pub fn predict_batch<F: AsRef<[f32]> + Sync>(
    artifact: &ModelArtifact,
    batch: &[F],
) -> Result<Vec<usize>> {
    Classifier::from_artifact(artifact)?.predict_batch(batch)
}

/// Index of the largest score among `allowed` classes; ties go to the
/// smallest class index.
pub(crate) fn argmax_of(scores: &[f64], allowed: impl IntoIterator<Item = usize>) -> usize {
    let mut best: Option<(usize, f64)> = None;
    for c in allowed {
        let s = scores[c];
        match best {
            Some((_, b)) if !(s > b) => {}
            _ => best = Some((c, s)),
        }
    }
    best.map_or(0, |(c, _)| c)
}

/// Most voted class; ties go to the smallest class index.
pub(crate) fn majority(votes: &[u32]) -> usize {
    let mut best = 0;
    for (c, &v) in votes.iter().enumerate() {
        if v > votes[best] {
            best = c;
        }
    }
    best
}
