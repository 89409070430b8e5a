//! One-vs-rest linear SVM trained by Pegasos subgradient descent.
//!
//! Each class `c` minimizes `lambda/2 |w|^2 + mean(max(0, 1 - y w.x~))` with
//! `x~ = [x, 1]` (the bias rides along as a regularized weight) and step size
//! `1 / (lambda t)`. With that schedule the iterate after `T` steps is
//!
//! ```text
//! w = 1/(lambda T) * sum over violating steps of y_i x~_i
//! ```
//!
//! so the model is stored in dual form: support vectors plus one coefficient
//! per (class, support vector), and scores are evaluated through the linear
//! kernel `k(a, b) = a.b + 1`.
//!
//! Payload: present classes (`u32` count + ids), `dim u32`, `nsv u32`,
//! `nsv * dim` support vectors (f32), then `present * nsv` coefficients (f32,
//! row per present class).

use rand::Rng as _;

use super::argmax_of;
use super::payload::{check_classes, present_classes, Reader, Writer};
use crate::error::{Error, Result};
use crate::rng::{self, Domain};
use crate::types::Dataset;

#[derive(Debug, Clone)]
pub(crate) struct Svm {
    classes: usize,
    present: Vec<usize>,
    dim: usize,
    support: Vec<f32>,
    /// `coef[p * nsv + j]` weighs support vector `j` for `present[p]`.
    coef: Vec<f32>,
}

impl Svm {
    pub(crate) fn fit(data: &Dataset, lambda: f64, epochs: usize, seed: u64) -> Self {
        let classes = data.charset().len();
        let present = present_classes(data.labels(), classes);
        let dim = data.dim();
        let n = data.len();
        let samples = data.samples();

        // sums[p] accumulates y x~ over violations; counts[p][i] tracks the
        // signed number of violations contributed by sample i.
        let mut sums = vec![vec![0.0f64; dim + 1]; present.len()];
        let mut counts = vec![vec![0i64; n]; present.len()];
        let mut order: Vec<usize> = (0..n).collect();
        let mut x = vec![0.0f64; dim + 1];
        let mut t: u64 = 0;

        for epoch in 0..epochs {
            let mut rng = rng::stream(seed, Domain::Shuffle, epoch as u64);
            for i in (1..n).rev() {
                order.swap(i, rng.random_range(0..=i));
            }
            for &i in &order {
                for (xd, &f) in x.iter_mut().zip(&samples[i].features) {
                    *xd = f as f64;
                }
                x[dim] = 1.0;
                // w_t = sums / (lambda (t - 1)); w_1 = 0.
                let scale = if t == 0 {
                    0.0
                } else {
                    1.0 / (lambda * t as f64)
                };
                t += 1;
                for (p, &class) in present.iter().enumerate() {
                    let y = if samples[i].label == class { 1.0 } else { -1.0 };
                    let dot: f64 = sums[p].iter().zip(&x).map(|(a, b)| a * b).sum();
                    if y * dot * scale < 1.0 {
                        for (s, xd) in sums[p].iter_mut().zip(&x) {
                            *s += y * xd;
                        }
                        counts[p][i] += y as i64;
                    }
                }
            }
        }

        let support_idx: Vec<usize> = (0..n)
            .filter(|&i| counts.iter().any(|c| c[i] != 0))
            .collect();
        let final_scale = if t == 0 {
            0.0
        } else {
            1.0 / (lambda * t as f64)
        };
        let support = support_idx
            .iter()
            .flat_map(|&i| samples[i].features.iter().copied())
            .collect();
        let coef = counts
            .iter()
            .flat_map(|c| {
                support_idx
                    .iter()
                    .map(move |&i| (c[i] as f64 * final_scale) as f32)
            })
            .collect();
        Self {
            classes,
            present,
            dim,
            support,
            coef,
        }
    }

    pub(crate) fn dim(&self) -> usize {
        self.dim
    }

    fn nsv(&self) -> usize {
        if self.dim == 0 {
            self.coef.len() / self.present.len()
        } else {
            self.support.len() / self.dim
        }
    }

    pub(crate) fn encode(&self) -> Vec<u8> {
        let mut w = Writer::default();
        w.u32s(&self.present)
            .u32(self.dim)
            .u32(self.nsv())
            .f32s(&self.support)
            .f32s(&self.coef);
        w.finish()
    }

    pub(crate) fn decode(bytes: &[u8], classes: usize) -> Result<Self> {
        let mut r = Reader::new(bytes);
        let present = r.u32s()?;
        check_classes(&present, classes)?;
        let dim = r.count()?;
        let nsv = r.count()?;
        let support = r.f32s(nsv * dim)?;
        let coef = r.f32s(present.len() * nsv)?;
        r.done()?;
        if nsv == 0 {
            return Err(Error::Format("SVM payload has no support vectors".into()));
        }
        Ok(Self {
            classes,
            present,
            dim,
            support,
            coef,
        })
    }

    /// Per-class decision values, indexed by class (absent classes score 0
    /// and are never predicted).
    pub(crate) fn decision(&self, x: &[f32]) -> Vec<f64> {
        let nsv = self.nsv();
        let kernel: Vec<f64> = if self.dim == 0 {
            vec![1.0; nsv]
        } else {
            self.support
                .chunks_exact(self.dim)
                .map(|sv| {
                    sv.iter()
                        .zip(x)
                        .map(|(a, b)| *a as f64 * *b as f64)
                        .sum::<f64>()
                        + 1.0
                })
                .collect()
        };
        let mut scores = vec![0.0; self.classes];
        for (p, &class) in self.present.iter().enumerate() {
            let row = &self.coef[p * nsv..(p + 1) * nsv];
            scores[class] = row.iter().zip(&kernel).map(|(c, k)| *c as f64 * k).sum();
        }
        scores
    }

    pub(crate) fn predict(&self, x: &[f32]) -> usize {
        argmax_of(&self.decision(x), self.present.iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glyphset::{synthesize, SynthConfig};
    use crate::types::{Charset, FeatureMode};
    use proptest::prelude::*;

    fn small() -> Dataset {
        synthesize(
            &Charset::default(),
            &SynthConfig::new(10, 380, 11, FeatureMode::Raw),
        )
        .unwrap()
    }

    /// Primal Pegasos, written independently of the dual bookkeeping.
    fn primal_weights(data: &Dataset, lambda: f64, epochs: usize, seed: u64) -> Vec<Vec<f64>> {
        let classes = data.charset().len();
        let dim = data.dim();
        let mut w = vec![vec![0.0; dim + 1]; classes];
        let mut order: Vec<usize> = (0..data.len()).collect();
        let mut t = 0.0;
        for epoch in 0..epochs {
            let mut rng = rng::stream(seed, Domain::Shuffle, epoch as u64);
            for i in (1..order.len()).rev() {
                order.swap(i, rng.random_range(0..=i));
            }
            for &i in &order {
                t += 1.0;
                let eta = 1.0 / (lambda * t);
                let s = &data.samples()[i];
                let mut x: Vec<f64> = s.features.iter().map(|&f| f as f64).collect();
                x.push(1.0);
                for (c, wc) in w.iter_mut().enumerate() {
                    let y = if s.label == c { 1.0 } else { -1.0 };
                    let margin = y * wc.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>();
                    for v in wc.iter_mut() {
                        *v *= 1.0 - eta * lambda;
                    }
                    if margin < 1.0 {
                        for (v, xd) in wc.iter_mut().zip(&x) {
                            *v += eta * y * xd;
                        }
                    }
                }
            }
        }
        w
    }

    #[test]
    fn dual_scores_match_primal_pegasos() {
        let d = small();
        let m = Svm::fit(&d, 1e-2, 3, 5);
        let w = primal_weights(&d, 1e-2, 3, 5);
        for s in d.samples().iter().take(40) {
            let dual = m.decision(&s.features);
            for (c, wc) in w.iter().enumerate() {
                let primal: f64 = wc
                    .iter()
                    .zip(s.features.iter().map(|&f| f as f64).chain([1.0]))
                    .map(|(a, b)| a * b)
                    .sum();
                assert!(
                    (dual[c] - primal).abs() < 1e-4 * (1.0 + primal.abs()),
                    "class {c}: {} vs {primal}",
                    dual[c]
                );
            }
        }
    }

    #[test]
    fn payload_roundtrip() {
        let m = Svm::fit(&small(), 1e-4, 2, 1);
        let bytes = m.encode();
        let back = Svm::decode(&bytes, 95).unwrap();
        assert_eq!(back.encode(), bytes);
    }

    proptest! {
        #[test]
        fn argmax_ignores_common_score_shift(shift in -50.0f64..50.0, idx in 0usize..380) {
            let d = small();
            let m = Svm::fit(&d, 1e-4, 2, 1);
            let x = &d.samples()[idx].features;
            let scores = m.decision(x);
            let shifted: Vec<f64> = scores.iter().map(|s| s + shift).collect();
            prop_assert_eq!(
                argmax_of(&scores, m.present.iter().copied()),
                argmax_of(&shifted, m.present.iter().copied())
            );
        }
    }
}
