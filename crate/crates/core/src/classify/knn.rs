//! Exact k-nearest-neighbour vote under Euclidean distance.
//!
//! Payload: `k u32, dim u32, count u32`, then `count * dim` features (f32,
//! row-major) and `count` labels (u32).

use super::majority;
use super::payload::{Reader, Writer};
use crate::error::{Error, Result};
use crate::types::Dataset;

#[derive(Debug, Clone)]
pub(crate) struct Knn {
    k: usize,
    dim: usize,
    classes: usize,
    features: Vec<f32>,
    labels: Vec<usize>,
}

impl Knn {
    pub(crate) fn fit(data: &Dataset, k: usize) -> Self {
        Self {
            k,
            dim: data.dim(),
            classes: data.charset().len(),
            features: data
                .samples()
                .iter()
                .flat_map(|s| s.features.iter().copied())
                .collect(),
            labels: data.labels(),
        }
    }

    pub(crate) fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn encode(&self) -> Vec<u8> {
        let mut w = Writer::default();
        w.u32(self.k)
            .u32(self.dim)
            .u32(self.labels.len())
            .f32s(&self.features);
        for &l in &self.labels {
            w.u32(l);
        }
        w.finish()
    }

    pub(crate) fn decode(bytes: &[u8], classes: usize) -> Result<Self> {
        let mut r = Reader::new(bytes);
        let k = r.count()?;
        let dim = r.count()?;
        let count = r.count()?;
        let features = r.f32s(count * dim)?;
        let labels = (0..count).map(|_| r.count()).collect::<Result<Vec<_>>>()?;
        r.done()?;
        if k == 0 || count == 0 || labels.iter().any(|&l| l >= classes) {
            return Err(Error::Format("invalid k-NN payload".into()));
        }
        Ok(Self {
            k,
            dim,
            classes,
            features,
            labels,
        })
    }

    /// The `k` nearest training rows as `(squared distance, index)`, nearest
    /// first; equal distances keep the earlier training row.
    pub(crate) fn neighbors(&self, x: &[f32]) -> Vec<(f64, usize)> {
        let k = self.k.min(self.labels.len());
        let mut best: Vec<(f64, usize)> = Vec::with_capacity(k + 1);
        for (i, row) in self.features.chunks_exact(self.dim).enumerate() {
            let d: f64 = row
                .iter()
                .zip(x)
                .map(|(a, b)| {
                    let t = (*a - *b) as f64;
                    t * t
                })
                .sum();
            if best.len() == k && d >= best[k - 1].0 {
                continue;
            }
            let pos = best.partition_point(|&(bd, _)| bd <= d);
            best.insert(pos, (d, i));
            best.truncate(k);
        }
        best
    }

    pub(crate) fn predict(&self, x: &[f32]) -> usize {
        let mut votes = vec![0u32; self.classes];
        for (_, i) in self.neighbors(x) {
            votes[self.labels[i]] += 1;
        }
        majority(&votes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{Charset, FeatureMode, Sample};

    fn data(points: &[(f32, usize)]) -> Dataset {
        let samples = points
            .iter()
            .map(|&(x, label)| Sample {
                features: vec![x],
                label,
            })
            .collect();
        Dataset::new(samples, 10, FeatureMode::Raw, Charset::default(), None).unwrap()
    }

    #[test]
    fn brute_force_neighbors() {
        let d = data(&[(0.0, 1), (1.0, 2), (2.0, 2), (10.0, 3), (0.5, 1)]);
        let m = Knn::fit(&d, 3);
        let n = m.neighbors(&[0.4]);
        assert_eq!(n.iter().map(|p| p.1).collect::<Vec<_>>(), vec![4, 0, 1]);
        assert_eq!(m.predict(&[0.4]), 1);
        assert_eq!(m.predict(&[9.0]), 2);
    }

    #[test]
    fn vote_ties_go_to_smaller_class() {
        let d = data(&[(0.0, 7), (0.0, 3)]);
        assert_eq!(Knn::fit(&d, 2).predict(&[0.0]), 3);
    }

    #[test]
    fn k_larger_than_training_set() {
        let d = data(&[(0.0, 7), (1.0, 7), (5.0, 2)]);
        assert_eq!(Knn::fit(&d, 10).predict(&[5.0]), 7);
    }
}
