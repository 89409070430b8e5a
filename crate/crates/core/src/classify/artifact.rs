//! GCMA model files.
//!
//! Layout (little-endian): magic `GCMA`, format version `u32`, kind `u8`,
//! tile size `u32`, feature mode `u8`, charset length `u32` + one `u8` code
//! per class, seed `u64`, training accuracy `f64` (NaN when not measured),
//! hyperparameter count `u32` + per entry (key length `u16`, UTF-8 key,
//! value `f64`) in key order, payload length `u64`, payload bytes. Payload
//! layouts are documented on each backend module and in `FORMATS.md`.

use std::io::Write;
use std::path::Path;

use super::payload::Reader;
use super::FORMAT_VERSION;
use crate::error::{Error, Result};
use crate::types::{Charset, FeatureMode, Hyperparams, ModelArtifact, ModelKind};

pub const MAGIC: &[u8; 4] = b"GCMA";

pub fn encode(a: &ModelArtifact) -> Vec<u8> {
    let mut out = Vec::with_capacity(64 + a.payload.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&a.format_version.to_le_bytes());
    out.push(a.kind.to_byte());
    out.extend_from_slice(&(a.tile_size as u32).to_le_bytes());
    out.push(a.feature_mode.to_byte());
    out.extend_from_slice(&(a.charset.len() as u32).to_le_bytes());
    out.extend_from_slice(a.charset.codes());
    out.extend_from_slice(&a.seed.to_le_bytes());
    out.extend_from_slice(&a.train_accuracy.unwrap_or(f64::NAN).to_le_bytes());
    out.extend_from_slice(&(a.hyperparams.len() as u32).to_le_bytes());
    for (k, v) in &a.hyperparams {
        out.extend_from_slice(&(k.len() as u16).to_le_bytes());
        out.extend_from_slice(k.as_bytes());
        out.extend_from_slice(&v.to_le_bytes());
    }
    out.extend_from_slice(&(a.payload.len() as u64).to_le_bytes());
    out.extend_from_slice(&a.payload);
    out
}

pub fn decode(bytes: &[u8]) -> Result<ModelArtifact> {
    let mut r = Reader::new(bytes);
    if r.take(4)? != MAGIC {
        return Err(Error::Format("not a GCMA model".into()));
    }
    let format_version = r.u32()?;
    if format_version != FORMAT_VERSION {
        return Err(Error::Format(format!(
            "unsupported model version {format_version}"
        )));
    }
    let kind = ModelKind::from_byte(r.u8()?)?;
    let tile_size = r.u32()? as usize;
    let feature_mode = FeatureMode::from_byte(r.u8()?)?;
    let classes = r.u32()? as usize;
    let charset = Charset::new(r.take(classes)?.to_vec())?;
    let seed = r.u64()?;
    let acc = r.f64()?;
    let mut hyperparams = Hyperparams::new();
    for _ in 0..r.u32()? {
        let len = r.u16()? as usize;
        let key = std::str::from_utf8(r.take(len)?)
            .map_err(|_| Error::Format("hyperparameter key is not UTF-8".into()))?
            .to_string();
        hyperparams.insert(key, r.f64()?);
    }
    let len = r.u64()? as usize;
    let payload = r.take(len)?.to_vec();
    if !r.is_empty() {
        return Err(Error::Format("trailing bytes after payload".into()));
    }
    Ok(ModelArtifact {
        kind,
        tile_size,
        feature_mode,
        charset,
        hyperparams,
        seed,
        train_accuracy: (!acc.is_nan()).then_some(acc),
        payload,
        format_version,
    })
}

pub fn write(a: &ModelArtifact, path: impl AsRef<Path>) -> Result<()> {
    std::fs::File::create(path)?.write_all(&encode(a))?;
    Ok(())
}

pub fn read(path: impl AsRef<Path>) -> Result<ModelArtifact> {
    decode(&std::fs::read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{default_hyperparams, train};
    use crate::glyphset::{synthesize, SynthConfig};
    use proptest::prelude::*;

    #[test]
    fn header_starts_with_magic_and_version() {
        let d = synthesize(
            &Charset::default(),
            &SynthConfig::new(10, 95, 1, FeatureMode::Raw),
        )
        .unwrap();
        let a = train(ModelKind::Knn, &d, &default_hyperparams(ModelKind::Knn), 3).unwrap();
        let bytes = encode(&a);
        assert_eq!(&bytes[..4], b"GCMA");
        assert_eq!(
            u32::from_le_bytes(bytes[4..8].try_into().unwrap()),
            FORMAT_VERSION
        );
        assert_eq!(bytes[8], 0);
        assert!(decode(&bytes[..bytes.len() - 1]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn roundtrip_is_byte_identical(payload in proptest::collection::vec(any::<u8>(), 0..256),
                                       seed in any::<u64>(),
                                       acc in proptest::option::of(0.0f64..=1.0),
                                       kind in 0u8..6,
                                       k in 1.0f64..20.0) {
            let mut hyperparams = Hyperparams::new();
            hyperparams.insert("k".into(), k.floor());
            hyperparams.insert("lr".into(), 1e-3);
            let a = ModelArtifact {
                kind: ModelKind::from_byte(kind).unwrap(),
                tile_size: 10,
                feature_mode: FeatureMode::Hog,
                charset: Charset::default(),
                hyperparams,
                seed,
                train_accuracy: acc,
                payload,
                format_version: FORMAT_VERSION,
            };
            let bytes = encode(&a);
            let back = decode(&bytes).unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(encode(&back), bytes);
        }
    }
}
