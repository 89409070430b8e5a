use std::io;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("empty image")]
    EmptyImage,

    #[error("degenerate scale {0}: output would have a zero dimension")]
    DegenerateScale(f64),

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("unknown character: code {0}")]
    UnknownCharacter(u32),

    #[error("invalid charset: {0}")]
    InvalidCharset(String),

    #[error("too few samples: requested {requested}, charset has {classes} classes")]
    TooFewSamples { requested: usize, classes: usize },

    #[error("split would leave the {0} set empty")]
    EmptySplit(&'static str),

    #[error("cell size {cell_size} does not divide tile size {tile_size}")]
    CellSize { cell_size: usize, tile_size: usize },

    #[error("missing hyperparameter `{0}`")]
    MissingHyperparam(String),

    #[error("invalid hyperparameter `{key}`: {reason}")]
    InvalidHyperparam { key: String, reason: String },

    #[error("{kind} cannot be trained on {mode} features")]
    IncompatibleFeatureMode { kind: String, mode: String },

    #[error("dimension mismatch: expected {expected} features, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("empty dataset")]
    EmptyDataset,

    #[error("image {width}x{height} is smaller than the {window}x{window} window")]
    ImageTooSmall {
        width: usize,
        height: usize,
        window: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed file: {0}")]
    Format(String),

    #[error("malformed config: {0}")]
    Config(String),

    #[error("benchmark stage `{stage}` failed: {source}")]
    Stage {
        stage: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Image(#[from] image::ImageError),
}

impl Error {
    pub(crate) fn in_stage(self, stage: impl Into<String>) -> Self {
        Error::Stage {
            stage: stage.into(),
            source: Box::new(self),
        }
    }
}
