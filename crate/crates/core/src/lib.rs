//! Structure-based ASCII art generation.
//!
//! A line-structure image is grayscaled, rescaled with a 2:1 text-aspect
//! correction, binarized and cut into `n x n` tiles. Every tile is mapped to a
//! feature vector and classified as one printable ASCII character by one of
//! several interchangeable backends (k-NN, linear SVM, random forest, MLP,
//! small CNN, or the non-learned log-polar matcher).
//!
//! Training data is synthesized from an embedded bitmap font with seeded
//! augmentation, so every dataset and model is reproducible from its seed.

pub mod classify;
pub mod convert;
pub mod error;
pub mod eval;
pub mod features;
pub mod glyphset;
pub mod preprocess;
pub mod rng;
pub mod types;

pub use error::{Error, Result};
pub use types::{
    AsciiGrid, Charset, Dataset, FeatureMode, GrayImage, Hyperparams, ModelArtifact, ModelKind,
    Sample, Tile,
};
