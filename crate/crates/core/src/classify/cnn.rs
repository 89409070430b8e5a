//! Small convolutional network for raw tiles:
//!
//! ```text
//! conv 3x3 x16 (same padding) -> ReLU -> 2x2 max-pool
//!   -> conv 3x3 x32 (same padding) -> ReLU -> flatten
//!   -> dense 128 -> ReLU -> dense classes
//! ```
//!
//! Activations are kept as `(batch * height * width, channels)` matrices so
//! both convolutions reduce to one matrix product over an im2col buffer.
//!
//! Payload: present classes (`u32` count + ids), `tile u32, conv1 u32,
//! conv2 u32, hidden u32, classes u32`, then parameters as f32 in the order
//! conv1 weights (`conv1 x 9`), conv1 bias, conv2 weights (`conv2 x 9*conv1`),
//! conv2 bias, dense weights (`hidden x (tile/2)^2*conv2`), dense bias, output
//! weights (`classes x hidden`), output bias. Convolution weight columns are
//! ordered `(ky, kx, in_channel)`; the flattened feature order is
//! `(y, x, channel)`.

use ndarray::{Array2, ArrayView1, ArrayView2, Axis};

use super::argmax_of;
use super::nn::{self, Network, TrainOptions};
use super::payload::{check_classes, present_classes, Reader, Writer};
use crate::error::{Error, Result};
use crate::types::Dataset;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CnnShape {
    pub tile: usize,
    pub conv1: usize,
    pub conv2: usize,
    pub hidden: usize,
    pub classes: usize,
}

impl CnnShape {
    pub fn standard(tile: usize, classes: usize) -> Self {
        Self {
            tile,
            conv1: 16,
            conv2: 32,
            hidden: 128,
            classes,
        }
    }

    fn pooled(&self) -> usize {
        self.tile / 2
    }

    fn flat(&self) -> usize {
        self.pooled() * self.pooled() * self.conv2
    }

    /// `(offset, len)` of the eight parameter blocks.
    fn blocks(&self) -> [(usize, usize); 8] {
        let lens = [
            self.conv1 * 9,
            self.conv1,
            self.conv2 * 9 * self.conv1,
            self.conv2,
            self.hidden * self.flat(),
            self.hidden,
            self.classes * self.hidden,
            self.classes,
        ];
        let mut out = [(0, 0); 8];
        let mut off = 0;
        for (o, len) in out.iter_mut().zip(lens) {
            *o = (off, len);
            off += len;
        }
        out
    }

    fn param_count(&self) -> usize {
        let (off, len) = self.blocks()[7];
        off + len
    }
}

#[derive(Debug, Clone)]
pub struct Cnn {
    shape: CnnShape,
    params: Vec<f64>,
    present: Vec<usize>,
}

struct Cache {
    cols1: Array2<f64>,
    a1: Array2<f64>,
    pool_idx: Vec<usize>,
    cols2: Array2<f64>,
    a2: Array2<f64>,
    a3: Array2<f64>,
    logits: Array2<f64>,
}

impl Cnn {
    pub fn new(shape: CnnShape, seed: u64) -> Self {
        let mut rng = nn::init_rng(seed);
        let mut params = vec![0.0; shape.param_count()];
        let fan_ins = [9, 9 * shape.conv1, shape.flat(), shape.hidden];
        for (block, fan_in) in [0, 2, 4, 6].into_iter().zip(fan_ins) {
            let (off, len) = shape.blocks()[block];
            nn::he_uniform(&mut params[off..off + len], fan_in, &mut rng);
        }
        Self {
            shape,
            params,
            present: (0..shape.classes).collect(),
        }
    }

    pub(crate) fn fit(data: &Dataset, opts: &TrainOptions, seed: u64) -> Self {
        let classes = data.charset().len();
        let mut net = Self::new(CnnShape::standard(data.tile_size(), classes), seed);
        nn::fit(&mut net, data, opts, seed);
        net.present = present_classes(data.labels(), classes);
        net
    }

    pub(crate) fn dim(&self) -> usize {
        self.shape.tile * self.shape.tile
    }

    fn matrix(&self, block: usize, rows: usize) -> ArrayView2<'_, f64> {
        let (off, len) = self.shape.blocks()[block];
        ArrayView2::from_shape((rows, len / rows), &self.params[off..off + len]).unwrap()
    }

    fn vector(&self, block: usize) -> ArrayView1<'_, f64> {
        let (off, len) = self.shape.blocks()[block];
        ArrayView1::from(&self.params[off..off + len])
    }

    fn forward(&self, x: ArrayView2<f64>) -> Cache {
        let s = &self.shape;
        let b = x.nrows();
        let (n, h) = (s.tile, s.pooled());
        let x1 = x.to_shape((b * n * n, 1)).unwrap();
        let cols1 = im2col(&x1.view(), b, n, n);
        let mut a1 = cols1.dot(&self.matrix(0, s.conv1).t()) + self.vector(1);
        nn::relu_inplace(&mut a1);

        let (p1, pool_idx) = max_pool(&a1, b, n, n);
        let cols2 = im2col(&p1.view(), b, h, h);
        let mut a2 = cols2.dot(&self.matrix(2, s.conv2).t()) + self.vector(3);
        nn::relu_inplace(&mut a2);

        let flat = a2.view().into_shape_with_order((b, s.flat())).unwrap();
        let mut a3 = flat.dot(&self.matrix(4, s.hidden).t()) + self.vector(5);
        nn::relu_inplace(&mut a3);
        let logits = a3.dot(&self.matrix(6, s.classes).t()) + self.vector(7);
        Cache {
            cols1,
            a1,
            pool_idx,
            cols2,
            a2,
            a3,
            logits,
        }
    }

    pub(crate) fn predict(&self, x: &[f32]) -> usize {
        let logits = self.logits(nn::row_of(x).view());
        argmax_of(
            logits.row(0).as_slice().unwrap(),
            self.present.iter().copied(),
        )
    }

    pub(crate) fn encode(&self) -> Vec<u8> {
        let s = &self.shape;
        let mut w = Writer::default();
        w.u32s(&self.present)
            .u32(s.tile)
            .u32(s.conv1)
            .u32(s.conv2)
            .u32(s.hidden)
            .u32(s.classes)
            .f32s(&nn::to_f32(&self.params));
        w.finish()
    }

    pub(crate) fn decode(bytes: &[u8], classes: usize) -> Result<Self> {
        let mut r = Reader::new(bytes);
        let present = r.u32s()?;
        check_classes(&present, classes)?;
        let shape = CnnShape {
            tile: r.count()?,
            conv1: r.count()?,
            conv2: r.count()?,
            hidden: r.count()?,
            classes: r.count()?,
        };
        if shape.tile < 2
            || shape.conv1 == 0
            || shape.conv2 == 0
            || shape.hidden == 0
            || shape.classes != classes
        {
            return Err(Error::Format(format!("invalid CNN shape {shape:?}")));
        }
        let params = r
            .f32s(shape.param_count())?
            .into_iter()
            .map(f64::from)
            .collect();
        r.done()?;
        Ok(Self {
            shape,
            params,
            present,
        })
    }
}

impl Network for Cnn {
    fn params(&self) -> &[f64] {
        &self.params
    }

    fn params_mut(&mut self) -> &mut [f64] {
        &mut self.params
    }

    fn input_dim(&self) -> usize {
        self.dim()
    }

    fn logits(&self, x: ArrayView2<f64>) -> Array2<f64> {
        self.forward(x).logits
    }

    fn loss_and_grad(&self, x: ArrayView2<f64>, labels: &[usize]) -> (f64, Vec<f64>) {
        let s = &self.shape;
        let b = x.nrows();
        let (n, h) = (s.tile, s.pooled());
        let c = self.forward(x);
        let (loss, dlogits) = nn::softmax_cross_entropy(&c.logits, labels);
        let mut grad = vec![0.0; self.params.len()];
        let blocks = s.blocks();
        let mut put = |block: usize, values: Array2<f64>| {
            let (off, len) = blocks[block];
            grad[off..off + len].copy_from_slice(values.as_standard_layout().as_slice().unwrap());
        };

        // Output layer.
        put(6, dlogits.t().dot(&c.a3));
        put(7, dlogits.sum_axis(Axis(0)).insert_axis(Axis(0)));
        let mut d3 = dlogits.dot(&self.matrix(6, s.classes));
        nn::relu_backward(&mut d3, &c.a3);

        // Hidden dense layer.
        let flat = c.a2.view().into_shape_with_order((b, s.flat())).unwrap();
        put(4, d3.t().dot(&flat));
        put(5, d3.sum_axis(Axis(0)).insert_axis(Axis(0)));
        let dflat = d3.dot(&self.matrix(4, s.hidden));
        let mut d2 = dflat.into_shape_with_order((b * h * h, s.conv2)).unwrap();
        nn::relu_backward(&mut d2, &c.a2);

        // Second convolution.
        put(2, d2.t().dot(&c.cols2));
        put(3, d2.sum_axis(Axis(0)).insert_axis(Axis(0)));
        let dcols2 = d2.dot(&self.matrix(2, s.conv2));
        let dp1 = col2im(&dcols2, b, h, h, s.conv1);

        // Pool and first convolution.
        let mut d1 = Array2::zeros((b * n * n, s.conv1));
        for (r, row) in dp1.axis_iter(Axis(0)).enumerate() {
            for (ch, &g) in row.iter().enumerate() {
                d1[[c.pool_idx[r * s.conv1 + ch], ch]] += g;
            }
        }
        nn::relu_backward(&mut d1, &c.a1);
        put(0, d1.t().dot(&c.cols1));
        put(1, d1.sum_axis(Axis(0)).insert_axis(Axis(0)));
        (loss, grad)
    }
}

/// 3x3 patches with zero padding. Row `(b, y, x)`, column `(ky, kx, ch)`.
fn im2col(input: &ArrayView2<f64>, batch: usize, height: usize, width: usize) -> Array2<f64> {
    let ch = input.ncols();
    let mut cols = Array2::zeros((batch * height * width, 9 * ch));
    for b in 0..batch {
        for y in 0..height {
            for x in 0..width {
                let row = (b * height + y) * width + x;
                let mut dst = cols.row_mut(row);
                for ky in 0..3 {
                    let sy = y as isize + ky as isize - 1;
                    if sy < 0 || sy >= height as isize {
                        continue;
                    }
                    for kx in 0..3 {
                        let sx = x as isize + kx as isize - 1;
                        if sx < 0 || sx >= width as isize {
                            continue;
                        }
                        let src = (b * height + sy as usize) * width + sx as usize;
                        let base = (ky * 3 + kx) * ch;
                        for c in 0..ch {
                            dst[base + c] = input[[src, c]];
                        }
                    }
                }
            }
        }
    }
    cols
}

/// Adjoint of [`im2col`]: scatters patch gradients back onto the input.
fn col2im(cols: &Array2<f64>, batch: usize, height: usize, width: usize, ch: usize) -> Array2<f64> {
    let mut out = Array2::zeros((batch * height * width, ch));
    for b in 0..batch {
        for y in 0..height {
            for x in 0..width {
                let row = cols.row((b * height + y) * width + x);
                for ky in 0..3 {
                    let sy = y as isize + ky as isize - 1;
                    if sy < 0 || sy >= height as isize {
                        continue;
                    }
                    for kx in 0..3 {
                        let sx = x as isize + kx as isize - 1;
                        if sx < 0 || sx >= width as isize {
                            continue;
                        }
                        let dst = (b * height + sy as usize) * width + sx as usize;
                        let base = (ky * 3 + kx) * ch;
                        for c in 0..ch {
                            out[[dst, c]] += row[base + c];
                        }
                    }
                }
            }
        }
    }
    out
}

/// 2x2 stride-2 max pooling (odd trailing rows/columns are dropped). Returns
/// the pooled activations and, per output element, the source row it came
/// from; the first maximum wins ties.
fn max_pool(
    input: &Array2<f64>,
    batch: usize,
    height: usize,
    width: usize,
) -> (Array2<f64>, Vec<usize>) {
    let ch = input.ncols();
    let (ph, pw) = (height / 2, width / 2);
    let mut out = Array2::zeros((batch * ph * pw, ch));
    let mut idx = vec![0; batch * ph * pw * ch];
    for b in 0..batch {
        for y in 0..ph {
            for x in 0..pw {
                let orow = (b * ph + y) * pw + x;
                for c in 0..ch {
                    let mut best = (f64::NEG_INFINITY, 0);
                    for (dy, dx) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                        let src = (b * height + 2 * y + dy) * width + 2 * x + dx;
                        let v = input[[src, c]];
                        if v > best.0 {
                            best = (v, src);
                        }
                    }
                    out[[orow, c]] = best.0;
                    idx[orow * ch + c] = best.1;
                }
            }
        }
    }
    (out, idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::nn::gradient_check;

    #[test]
    fn im2col_and_col2im_are_adjoint() {
        // <im2col(a), c> == <a, col2im(c)> for arbitrary a, c.
        let a = Array2::from_shape_fn((2 * 4 * 3, 2), |(i, j)| ((i * 5 + j * 3) % 7) as f64 - 3.0);
        let c = Array2::from_shape_fn((2 * 4 * 3, 18), |(i, j)| ((i * 11 + j) % 5) as f64 * 0.5);
        let lhs = (&im2col(&a.view(), 2, 4, 3) * &c).sum();
        let rhs = (&a * &col2im(&c, 2, 4, 3, 2)).sum();
        assert!((lhs - rhs).abs() < 1e-9);
    }

    #[test]
    fn pool_picks_maximum() {
        let a = Array2::from_shape_vec((4, 1), vec![1.0, 5.0, 3.0, 2.0]).unwrap();
        let (p, idx) = max_pool(&a, 1, 2, 2);
        assert_eq!(p[[0, 0]], 5.0);
        assert_eq!(idx, vec![1]);
    }

    #[test]
    fn small_network_gradients() {
        let shape = CnnShape {
            tile: 6,
            conv1: 3,
            conv2: 4,
            hidden: 5,
            classes: 4,
        };
        let mut net = Cnn::new(shape, 3);
        let x = Array2::from_shape_fn((3, 36), |(i, j)| ((i * 13 + j * 7) % 11) as f64 / 11.0);
        let check = gradient_check(&mut net, x.view(), &[0, 3, 1], 1000, 1e-6, 2);
        assert!(check.max_relative_error < 1e-5, "{check:?}");
    }

    #[test]
    fn standard_shape_parameters() {
        let s = CnnShape::standard(10, 95);
        assert_eq!(s.flat(), 800);
        assert_eq!(
            s.param_count(),
            144 + 16 + 4608 + 32 + 102_400 + 128 + 12_160 + 95
        );
    }
}
