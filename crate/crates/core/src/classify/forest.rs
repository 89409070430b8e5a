//! Random forest of Gini-impurity decision trees.
//!
//! Each tree is grown on a bootstrap resample to purity (subject to
//! `min_samples_leaf`), considering `floor(sqrt(d))` random features per
//! split. Like scikit-learn, if none of those features admits a valid split
//! the search continues through the remaining features. Prediction is a
//! majority vote across trees.
//!
//! Payload: `dim u32, trees u32`, then per tree `nodes u32` followed by
//! `nodes` records of `feature u32, threshold f32, left u32, right u32,
//! class u32`. Leaves have `feature = u32::MAX`. Samples with
//! `x[feature] <= threshold` go left.

use rand::Rng as _;
use rayon::prelude::*;

use super::majority;
use super::payload::{Reader, Writer};
use crate::error::{Error, Result};
use crate::rng::{self, Domain, Rng};
use crate::types::Dataset;

const LEAF: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Node {
    feature: u32,
    threshold: f32,
    left: u32,
    right: u32,
    class: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Tree {
    nodes: Vec<Node>,
}

impl Tree {
    pub(crate) fn predict(&self, x: &[f32]) -> usize {
        let mut i = 0;
        loop {
            let node = &self.nodes[i];
            if node.feature == LEAF {
                return node.class as usize;
            }
            i = if x[node.feature as usize] <= node.threshold {
                node.left as usize
            } else {
                node.right as usize
            };
        }
    }

    #[cfg(test)]
    pub(crate) fn depth(&self) -> usize {
        fn walk(t: &Tree, i: usize) -> usize {
            let n = &t.nodes[i];
            if n.feature == LEAF {
                1
            } else {
                1 + walk(t, n.left as usize).max(walk(t, n.right as usize))
            }
        }
        walk(self, 0)
    }
}

struct Builder<'a> {
    data: &'a Dataset,
    classes: usize,
    dim: usize,
    max_features: usize,
    min_leaf: usize,
    rng: Rng,
    nodes: Vec<Node>,
}

impl Builder<'_> {
    fn value(&self, sample: usize, feature: usize) -> f32 {
        self.data.samples()[sample].features[feature]
    }

    fn label(&self, sample: usize) -> usize {
        self.data.samples()[sample].label
    }

    fn leaf(&mut self, idx: &[usize]) -> u32 {
        let mut votes = vec![0u32; self.classes];
        for &i in idx {
            votes[self.label(i)] += 1;
        }
        self.push(Node {
            feature: LEAF,
            threshold: 0.0,
            left: 0,
            right: 0,
            class: majority(&votes) as u32,
        })
    }

    fn push(&mut self, node: Node) -> u32 {
        self.nodes.push(node);
        (self.nodes.len() - 1) as u32
    }

    fn grow(&mut self, idx: &mut [usize]) -> u32 {
        let first = self.label(idx[0]);
        if idx.len() < 2 * self.min_leaf || idx.iter().all(|&i| self.label(i) == first) {
            return self.leaf(idx);
        }
        let Some((feature, threshold)) = self.best_split(idx) else {
            return self.leaf(idx);
        };
        let id = self.push(Node {
            feature: feature as u32,
            threshold,
            left: 0,
            right: 0,
            class: 0,
        });
        // Stable partition keeps child construction independent of the order
        // features were scanned in.
        let (mut left, mut right): (Vec<usize>, Vec<usize>) = idx
            .iter()
            .partition(|&&i| self.value(i, feature) <= threshold);
        let l = self.grow(&mut left);
        let r = self.grow(&mut right);
        self.nodes[id as usize].left = l;
        self.nodes[id as usize].right = r;
        id
    }

    /// Best `(feature, threshold)` by weighted child Gini impurity, or `None`
    /// when no feature separates the node's samples.
    fn best_split(&mut self, idx: &[usize]) -> Option<(usize, f32)> {
        let mut features: Vec<usize> = (0..self.dim).collect();
        let mut best: Option<(f64, usize, f32)> = None;
        let mut total = vec![0usize; self.classes];
        for &i in idx {
            total[self.label(i)] += 1;
        }
        let n = idx.len();
        let mut pairs: Vec<(f32, usize)> = Vec::with_capacity(n);
        let mut left = vec![0usize; self.classes];

        for k in 0..self.dim {
            if k >= self.max_features && best.is_some() {
                break;
            }
            let j = self.rng.random_range(k..self.dim);
            features.swap(k, j);
            let f = features[k];

            pairs.clear();
            pairs.extend(idx.iter().map(|&i| (self.value(i, f), self.label(i))));
            pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
            if pairs[0].0 == pairs[n - 1].0 {
                continue;
            }

            left.iter_mut().for_each(|c| *c = 0);
            // Sum of squared class counts on each side, updated incrementally.
            let mut left_sq = 0.0f64;
            let mut right_sq: f64 = total.iter().map(|&c| (c * c) as f64).sum();
            for s in 0..n - 1 {
                let c = pairs[s].1;
                let (l, r) = (left[c] as f64, (total[c] - left[c]) as f64);
                left_sq += 2.0 * l + 1.0;
                right_sq -= 2.0 * r - 1.0;
                left[c] += 1;

                let nl = s + 1;
                let nr = n - nl;
                if pairs[s].0 == pairs[s + 1].0 || nl < self.min_leaf || nr < self.min_leaf {
                    continue;
                }
                // n * weighted Gini = nl - left_sq/nl + nr - right_sq/nr.
                let impurity =
                    (nl as f64 - left_sq / nl as f64) + (nr as f64 - right_sq / nr as f64);
                if best.is_none_or(|(b, _, _)| impurity < b) {
                    best = Some((impurity, f, midpoint(pairs[s].0, pairs[s + 1].0)));
                }
            }
        }
        best.map(|(_, f, t)| (f, t))
    }
}

/// A threshold strictly below `hi` and at least `lo`.
fn midpoint(lo: f32, hi: f32) -> f32 {
    let mid = lo + (hi - lo) / 2.0;
    if mid < hi {
        mid
    } else {
        lo
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Forest {
    classes: usize,
    dim: usize,
    trees: Vec<Tree>,
}

impl Forest {
    pub(crate) fn fit(data: &Dataset, trees: usize, min_leaf: usize, seed: u64) -> Self {
        let dim = data.dim();
        let classes = data.charset().len();
        let max_features = ((dim as f64).sqrt().floor() as usize).max(1);
        let trees = (0..trees)
            .into_par_iter()
            .map(|t| {
                let mut rng = rng::stream(seed, Domain::Tree, t as u64);
                let n = data.len();
                let mut idx: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
                let mut b = Builder {
                    data,
                    classes,
                    dim,
                    max_features,
                    min_leaf,
                    rng,
                    nodes: Vec::new(),
                };
                b.grow(&mut idx);
                Tree { nodes: b.nodes }
            })
            .collect();
        Self {
            classes,
            dim,
            trees,
        }
    }

    pub(crate) fn dim(&self) -> usize {
        self.dim
    }

    #[cfg(test)]
    pub(crate) fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub(crate) fn encode(&self) -> Vec<u8> {
        let mut w = Writer::default();
        w.u32(self.dim).u32(self.trees.len());
        for t in &self.trees {
            w.u32(t.nodes.len());
            for n in &t.nodes {
                w.u32(n.feature as usize)
                    .f32s(&[n.threshold])
                    .u32(n.left as usize)
                    .u32(n.right as usize)
                    .u32(n.class as usize);
            }
        }
        w.finish()
    }

    pub(crate) fn decode(bytes: &[u8], classes: usize) -> Result<Self> {
        let mut r = Reader::new(bytes);
        let dim = r.count()?;
        let count = r.count()?;
        let mut trees = Vec::with_capacity(count.min(1 << 16));
        for _ in 0..count {
            let len = r.count()?;
            let mut nodes = Vec::with_capacity(len.min(1 << 20));
            for _ in 0..len {
                nodes.push(Node {
                    feature: r.u32()?,
                    threshold: r.f32()?,
                    left: r.u32()?,
                    right: r.u32()?,
                    class: r.u32()?,
                });
            }
            // Children must point forward so traversal always terminates.
            let valid = !nodes.is_empty()
                && nodes.iter().enumerate().all(|(i, n)| {
                    if n.feature == LEAF {
                        (n.class as usize) < classes
                    } else {
                        (n.feature as usize) < dim
                            && (n.left as usize) > i
                            && (n.right as usize) > i
                            && (n.left as usize) < len
                            && (n.right as usize) < len
                    }
                });
            if !valid {
                return Err(Error::Format("malformed decision tree".into()));
            }
            trees.push(Tree { nodes });
        }
        r.done()?;
        if trees.is_empty() {
            return Err(Error::Format("forest has no trees".into()));
        }
        Ok(Self {
            classes,
            dim,
            trees,
        })
    }

    pub(crate) fn votes<'a>(
        &self,
        trees: impl IntoIterator<Item = &'a Tree>,
        x: &[f32],
    ) -> Vec<u32> {
        let mut votes = vec![0u32; self.classes];
        for t in trees {
            votes[t.predict(x)] += 1;
        }
        votes
    }

    pub(crate) fn predict(&self, x: &[f32]) -> usize {
        majority(&self.votes(&self.trees, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glyphset::{synthesize, SynthConfig};
    use crate::types::{Charset, FeatureMode, Sample};

    #[test]
    fn gini_split_separates_two_blobs() {
        let samples = (0..20)
            .map(|i| Sample {
                features: vec![(i % 7) as f32, if i < 10 { 0.1 } else { 0.9 }],
                label: if i < 10 { 2 } else { 5 },
            })
            .collect();
        let d = Dataset::new(samples, 10, FeatureMode::Raw, Charset::default(), None).unwrap();
        let f = Forest::fit(&d, 5, 1, 3);
        assert_eq!(f.predict(&[3.0, 0.1]), 2);
        assert_eq!(f.predict(&[3.0, 0.95]), 5);
    }

    #[test]
    fn growth_is_reproducible() {
        let d = synthesize(
            &Charset::default(),
            &SynthConfig::new(10, 475, 2, FeatureMode::Raw),
        )
        .unwrap();
        let f = Forest::fit(&d, 4, 1, 8);
        // 95 classes cannot be separated by a shallow tree.
        assert!(f.trees().iter().all(|t| t.depth() > 6));
        let g = Forest::fit(&d, 4, 1, 8);
        assert_eq!(f.trees(), g.trees());
    }

    #[test]
    fn vote_order_does_not_matter() {
        let d = synthesize(
            &Charset::default(),
            &SynthConfig::new(10, 475, 2, FeatureMode::Hog),
        )
        .unwrap();
        let f = Forest::fit(&d, 15, 1, 8);
        for s in d.samples().iter().take(50) {
            let fwd = f.votes(f.trees(), &s.features);
            let rev = f.votes(f.trees().iter().rev(), &s.features);
            assert_eq!(majority(&fwd), majority(&rev));
        }
    }

    #[test]
    fn midpoint_stays_below_upper_value() {
        assert_eq!(midpoint(0.0, 1.0), 0.5);
        let lo = 1.0f32;
        let hi = f32::from_bits(lo.to_bits() + 1);
        assert_eq!(midpoint(lo, hi), lo);
    }

    #[test]
    fn decode_rejects_cycles() {
        let mut w = Writer::default();
        w.u32(1)
            .u32(1)
            .u32(1)
            .u32(0)
            .f32s(&[0.0])
            .u32(0)
            .u32(0)
            .u32(0);
        assert!(Forest::decode(&w.finish(), 95).is_err());
    }
}
