//! Fully connected network: input -> 256 -> 128 -> classes, ReLU between
//! layers.
//!
//! Payload: present classes (`u32` count + ids), layer sizes (`u32` count +
//! sizes), then all parameters as f32: per layer the `out x in` weight matrix
//! row-major followed by `out` biases.

use ndarray::{Array2, ArrayView1, ArrayView2, Axis};

use super::argmax_of;
use super::nn::{self, Network, TrainOptions};
use super::payload::{check_classes, present_classes, Reader, Writer};
use crate::error::{Error, Result};
use crate::types::Dataset;

pub const HIDDEN: [usize; 2] = [256, 128];

#[derive(Debug, Clone)]
pub struct Mlp {
    sizes: Vec<usize>,
    params: Vec<f64>,
    present: Vec<usize>,
}

impl Mlp {
    /// He-initialized network with the standard hidden layers.
    pub fn new(input: usize, classes: usize, seed: u64) -> Self {
        Self::with_sizes(&[&[input][..], &HIDDEN, &[classes]].concat(), seed)
    }

    pub fn with_sizes(sizes: &[usize], seed: u64) -> Self {
        let mut rng = nn::init_rng(seed);
        let len = param_count(sizes);
        let mut params = vec![0.0; len];
        let mut off = 0;
        for w in sizes.windows(2) {
            let (fan_in, out) = (w[0], w[1]);
            nn::he_uniform(&mut params[off..off + out * fan_in], fan_in, &mut rng);
            off += out * fan_in + out;
        }
        let classes = *sizes.last().unwrap();
        Self {
            sizes: sizes.to_vec(),
            params,
            present: (0..classes).collect(),
        }
    }

    pub(crate) fn fit(data: &Dataset, opts: &TrainOptions, seed: u64) -> Self {
        let classes = data.charset().len();
        let mut net = Self::new(data.dim(), classes, seed);
        nn::fit(&mut net, data, opts, seed);
        net.present = present_classes(data.labels(), classes);
        net
    }

    pub(crate) fn dim(&self) -> usize {
        self.sizes[0]
    }

    fn layer(&self, l: usize) -> (ArrayView2<'_, f64>, ArrayView1<'_, f64>) {
        let off = param_count(&self.sizes[..=l]);
        let (fan_in, out) = (self.sizes[l], self.sizes[l + 1]);
        let w =
            ArrayView2::from_shape((out, fan_in), &self.params[off..off + out * fan_in]).unwrap();
        let b = ArrayView1::from(&self.params[off + out * fan_in..off + out * fan_in + out]);
        (w, b)
    }

    fn layers(&self) -> usize {
        self.sizes.len() - 1
    }

    /// Inputs to every layer followed by the logits.
    fn forward(&self, x: ArrayView2<f64>) -> Vec<Array2<f64>> {
        let mut acts = vec![x.to_owned()];
        for l in 0..self.layers() {
            let (w, b) = self.layer(l);
            let mut z = acts[l].dot(&w.t()) + b;
            if l + 1 < self.layers() {
                nn::relu_inplace(&mut z);
            }
            acts.push(z);
        }
        acts
    }

    pub(crate) fn predict(&self, x: &[f32]) -> usize {
        let logits = self.logits(nn::row_of(x).view());
        argmax_of(
            logits.row(0).as_slice().unwrap(),
            self.present.iter().copied(),
        )
    }

    pub(crate) fn encode(&self) -> Vec<u8> {
        let mut w = Writer::default();
        w.u32s(&self.present)
            .u32s(&self.sizes)
            .f32s(&nn::to_f32(&self.params));
        w.finish()
    }

    pub(crate) fn decode(bytes: &[u8], classes: usize) -> Result<Self> {
        let mut r = Reader::new(bytes);
        let present = r.u32s()?;
        check_classes(&present, classes)?;
        let sizes = r.u32s()?;
        if sizes.len() < 2 || sizes.contains(&0) || *sizes.last().unwrap() != classes {
            return Err(Error::Format("invalid MLP layer sizes".into()));
        }
        let params = r
            .f32s(param_count(&sizes))?
            .into_iter()
            .map(f64::from)
            .collect();
        r.done()?;
        Ok(Self {
            sizes,
            params,
            present,
        })
    }
}

/// Parameters of all layers between consecutive `sizes`.
fn param_count(sizes: &[usize]) -> usize {
    sizes.windows(2).map(|w| w[0] * w[1] + w[1]).sum()
}

impl Network for Mlp {
    fn params(&self) -> &[f64] {
        &self.params
    }

    fn params_mut(&mut self) -> &mut [f64] {
        &mut self.params
    }

    fn input_dim(&self) -> usize {
        self.sizes[0]
    }

    fn logits(&self, x: ArrayView2<f64>) -> Array2<f64> {
        self.forward(x).pop().unwrap()
    }

    fn loss_and_grad(&self, x: ArrayView2<f64>, labels: &[usize]) -> (f64, Vec<f64>) {
        let acts = self.forward(x);
        let (loss, mut dz) = nn::softmax_cross_entropy(acts.last().unwrap(), labels);
        let mut grad = vec![0.0; self.params.len()];
        for l in (0..self.layers()).rev() {
            let (w, _) = self.layer(l);
            let off = param_count(&self.sizes[..=l]);
            let (fan_in, out) = (self.sizes[l], self.sizes[l + 1]);
            let dw = dz.t().dot(&acts[l]);
            grad[off..off + out * fan_in]
                .copy_from_slice(dw.as_standard_layout().as_slice().unwrap());
            let db = dz.sum_axis(Axis(0));
            grad[off + out * fan_in..off + out * fan_in + out]
                .copy_from_slice(db.as_slice().unwrap());
            if l > 0 {
                let mut da = dz.dot(&w);
                nn::relu_backward(&mut da, &acts[l]);
                dz = da;
            }
        }
        (loss, grad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::nn::gradient_check;

    #[test]
    fn parameter_count() {
        let m = Mlp::new(100, 95, 0);
        assert_eq!(
            m.params().len(),
            100 * 256 + 256 + 256 * 128 + 128 + 128 * 95 + 95
        );
    }

    #[test]
    fn small_network_gradients() {
        let mut m = Mlp::with_sizes(&[6, 5, 4, 3], 7);
        let x = Array2::from_shape_fn((4, 6), |(i, j)| ((i * 7 + j * 3) % 5) as f64 / 5.0 - 0.3);
        let check = gradient_check(&mut m, x.view(), &[0, 2, 1, 2], 1000, 1e-6, 1);
        assert!(check.max_relative_error < 1e-5, "{check:?}");
    }

    #[test]
    fn payload_roundtrip_quantizes_to_f32() {
        let m = Mlp::with_sizes(&[4, 3, 2], 1);
        let back = Mlp::decode(&m.encode(), 2).unwrap();
        assert_eq!(back.encode(), m.encode());
        for (a, b) in m.params().iter().zip(back.params()) {
            assert_eq!(*a as f32 as f64, *b);
        }
    }
}
