//! Shared machinery for the neural backends: flat parameter vectors, He
//! initialization, softmax cross-entropy, Adam, minibatch training, and a
//! finite-difference gradient checker.

use ndarray::{Array2, ArrayView2, Axis};
use rand::Rng as _;

use super::{positive_int, positive_real};
use crate::error::Result;
use crate::rng::{self, Domain, Rng};
use crate::types::{Dataset, Hyperparams};

/// A classifier whose parameters live in one flat `f64` vector.
pub trait Network {
    fn params(&self) -> &[f64];
    fn params_mut(&mut self) -> &mut [f64];
    fn input_dim(&self) -> usize;

    /// Logits for a batch with one sample per row.
    fn logits(&self, x: ArrayView2<f64>) -> Array2<f64>;

    /// Mean cross-entropy of the batch and its gradient with respect to
    /// every parameter.
    fn loss_and_grad(&self, x: ArrayView2<f64>, labels: &[usize]) -> (f64, Vec<f64>);

    fn loss(&self, x: ArrayView2<f64>, labels: &[usize]) -> f64 {
        softmax_cross_entropy(&self.logits(x), labels).0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct TrainOptions {
    pub batch: usize,
    pub lr: f64,
    pub epochs: usize,
}

impl TrainOptions {
    pub(crate) fn from_hyperparams(h: &Hyperparams) -> Result<Self> {
        Ok(Self {
            batch: positive_int(h, "batch")?,
            lr: positive_real(h, "lr")?,
            epochs: positive_int(h, "epochs")?,
        })
    }
}

/// He-uniform weights for a layer with `fan_in` inputs.
pub(crate) fn he_uniform(params: &mut [f64], fan_in: usize, rng: &mut Rng) {
    let limit = (6.0 / fan_in as f64).sqrt();
    for p in params {
        *p = rng.random_range(-limit..limit);
    }
}

pub(crate) fn init_rng(seed: u64) -> Rng {
    rng::stream(seed, Domain::Init, 0)
}

/// Mean cross-entropy and its gradient with respect to the logits.
pub(crate) fn softmax_cross_entropy(logits: &Array2<f64>, labels: &[usize]) -> (f64, Array2<f64>) {
    let b = logits.nrows();
    let mut grad = logits.clone();
    let mut loss = 0.0;
    for (mut row, &y) in grad.axis_iter_mut(Axis(0)).zip(labels) {
        let max = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        row.mapv_inplace(|z| (z - max).exp());
        let sum: f64 = row.sum();
        loss += sum.ln() - row[y].ln();
        row.mapv_inplace(|e| e / sum);
        row[y] -= 1.0;
    }
    grad /= b as f64;
    (loss / b as f64, grad)
}

pub(crate) fn relu_inplace(a: &mut Array2<f64>) {
    a.mapv_inplace(|v| v.max(0.0));
}

/// Zeroes gradient entries where the forward activation was clipped.
pub(crate) fn relu_backward(grad: &mut Array2<f64>, activation: &Array2<f64>) {
    ndarray::Zip::from(grad).and(activation).for_each(|g, &a| {
        if a <= 0.0 {
            *g = 0.0;
        }
    });
}

struct Adam {
    lr: f64,
    m: Vec<f64>,
    v: Vec<f64>,
    t: i32,
}

impl Adam {
    const BETA1: f64 = 0.9;
    const BETA2: f64 = 0.999;
    const EPS: f64 = 1e-8;

    fn new(len: usize, lr: f64) -> Self {
        Self {
            lr,
            m: vec![0.0; len],
            v: vec![0.0; len],
            t: 0,
        }
    }

    fn step(&mut self, params: &mut [f64], grad: &[f64]) {
        self.t += 1;
        let c1 = 1.0 - Self::BETA1.powi(self.t);
        let c2 = 1.0 - Self::BETA2.powi(self.t);
        for i in 0..params.len() {
            let g = grad[i];
            self.m[i] = Self::BETA1 * self.m[i] + (1.0 - Self::BETA1) * g;
            self.v[i] = Self::BETA2 * self.v[i] + (1.0 - Self::BETA2) * g * g;
            let mh = self.m[i] / c1;
            let vh = self.v[i] / c2;
            params[i] -= self.lr * mh / (vh.sqrt() + Self::EPS);
        }
    }
}

/// Minibatch Adam on softmax cross-entropy. Epoch `e` visits the samples in
/// an order drawn from the `(seed, e)` shuffle stream.
pub(crate) fn fit<N: Network>(net: &mut N, data: &Dataset, opts: &TrainOptions, seed: u64) {
    let dim = net.input_dim();
    let n = data.len();
    let mut adam = Adam::new(net.params().len(), opts.lr);
    let mut order: Vec<usize> = (0..n).collect();
    for epoch in 0..opts.epochs {
        let mut rng = rng::stream(seed, Domain::Shuffle, epoch as u64);
        for i in (1..n).rev() {
            order.swap(i, rng.random_range(0..=i));
        }
        for chunk in order.chunks(opts.batch) {
            let (x, labels) = batch(data, chunk, dim);
            let (_, grad) = net.loss_and_grad(x.view(), &labels);
            adam.step(net.params_mut(), &grad);
        }
    }
}

pub(crate) fn batch(data: &Dataset, idx: &[usize], dim: usize) -> (Array2<f64>, Vec<usize>) {
    let mut x = Array2::zeros((idx.len(), dim));
    let mut labels = Vec::with_capacity(idx.len());
    for (mut row, &i) in x.axis_iter_mut(Axis(0)).zip(idx) {
        let s = &data.samples()[i];
        for (r, &f) in row.iter_mut().zip(&s.features) {
            *r = f as f64;
        }
        labels.push(s.label);
    }
    (x, labels)
}

pub(crate) fn row_of(x: &[f32]) -> Array2<f64> {
    Array2::from_shape_fn((1, x.len()), |(_, j)| x[j] as f64)
}

pub(crate) fn to_f32(params: &[f64]) -> Vec<f32> {
    params.iter().map(|&p| p as f32).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradientCheck {
    pub probed: usize,
    pub max_relative_error: f64,
    /// `(parameter index, analytic, numeric)` of the worst probe.
    pub worst: (usize, f64, f64),
}

/// Compares analytic gradients with central differences
/// `(L(p + eps) - L(p - eps)) / 2 eps` on `probes` parameters drawn without
/// replacement. Relative error is `|a - n| / max(|a|, |n|)`, and 0 when both
/// vanish.
pub fn gradient_check<N: Network>(
    net: &mut N,
    x: ArrayView2<f64>,
    labels: &[usize],
    probes: usize,
    eps: f64,
    seed: u64,
) -> GradientCheck {
    let (_, analytic) = net.loss_and_grad(x, labels);
    let len = net.params().len();
    let mut rng = rng::stream(seed, Domain::Init, 99);
    let mut idx: Vec<usize> = (0..len).collect();
    let probes = probes.min(len);
    for k in 0..probes {
        let j = rng.random_range(k..len);
        idx.swap(k, j);
    }
    let mut report = GradientCheck {
        probed: probes,
        max_relative_error: 0.0,
        worst: (0, 0.0, 0.0),
    };
    for &p in &idx[..probes] {
        let orig = net.params()[p];
        net.params_mut()[p] = orig + eps;
        let up = net.loss(x, labels);
        net.params_mut()[p] = orig - eps;
        let down = net.loss(x, labels);
        net.params_mut()[p] = orig;
        let numeric = (up - down) / (2.0 * eps);
        let a = analytic[p];
        let scale = a.abs().max(numeric.abs());
        let rel = if scale == 0.0 {
            0.0
        } else {
            (a - numeric).abs() / scale
        };
        if rel >= report.max_relative_error {
            report.max_relative_error = rel;
            report.worst = (p, a, numeric);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn cross_entropy_of_uniform_logits() {
        let logits = Array2::zeros((2, 4));
        let (loss, grad) = softmax_cross_entropy(&logits, &[0, 3]);
        assert!((loss - 4f64.ln()).abs() < 1e-12);
        assert!((grad[[0, 0]] - (0.25 - 1.0) / 2.0).abs() < 1e-12);
        assert!((grad[[1, 1]] - 0.25 / 2.0).abs() < 1e-12);
    }

    #[test]
    fn cross_entropy_is_shift_stable() {
        let a = array![[1000.0, 1001.0, 999.0]];
        let b = array![[0.0, 1.0, -1.0]];
        let (la, _) = softmax_cross_entropy(&a, &[1]);
        let (lb, _) = softmax_cross_entropy(&b, &[1]);
        assert!((la - lb).abs() < 1e-9);
    }

    #[test]
    fn adam_first_step_moves_by_lr() {
        let mut p = vec![1.0, -2.0];
        let mut adam = Adam::new(2, 0.1);
        adam.step(&mut p, &[3.0, -0.5]);
        assert!((p[0] - 0.9).abs() < 1e-6);
        assert!((p[1] + 1.9).abs() < 1e-6);
    }
}
