//! Dense rank-4 tensor of 32-bit floats in (batch, channel, height, width)
//! row-major layout.
//!
//! Tensors are immutable values once created; clones share storage.
//! Mutation happens only while building (`TensorBuilder` / `from_vec`).

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};

/// Shape as (N, C, H, W) extents.
pub type Shape = [usize; 4];

pub fn numel(shape: Shape) -> usize {
    shape[0] * shape[1] * shape[2] * shape[3]
}

#[derive(Clone)]
pub struct Tensor {
    shape: Shape,
    data: Arc<Vec<f32>>,
}

impl std::fmt::Debug for Tensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tensor{:?}", self.shape)
    }
}

impl Tensor {
    pub fn from_vec(shape: Shape, data: Vec<f32>) -> Result<Self> {
        if data.len() != numel(shape) {
            return Err(Error::Dimension {
                op: "from_vec",
                lhs: shape.to_vec(),
                rhs: vec![data.len()],
            });
        }
        Ok(Tensor {
            shape,
            data: Arc::new(data),
        })
    }

    pub fn zeros(shape: Shape) -> Self {
        Tensor {
            shape,
            data: Arc::new(vec![0.0; numel(shape)]),
        }
    }

    pub fn full(shape: Shape, value: f32) -> Self {
        Tensor {
            shape,
            data: Arc::new(vec![value; numel(shape)]),
        }
    }

    pub fn scalar(value: f32) -> Self {
        Tensor::full([1, 1, 1, 1], value)
    }

    /// Uniform values in `[lo, hi)`.
    pub fn rand_uniform(shape: Shape, lo: f32, hi: f32, rng: &mut impl Rng) -> Self {
        let data = (0..numel(shape)).map(|_| rng.gen_range(lo..hi)).collect();
        Tensor {
            shape,
            data: Arc::new(data),
        }
    }

    /// Standard normal values (Box-Muller, deterministic per rng stream).
    pub fn randn(shape: Shape, rng: &mut impl Rng) -> Self {
        let n = numel(shape);
        let mut data = Vec::with_capacity(n);
        while data.len() < n {
            let u1: f32 = rng.gen_range(f32::EPSILON..1.0);
            let u2: f32 = rng.gen_range(0.0..1.0);
            let r = (-2.0 * u1.ln()).sqrt();
            let (s, c) = (2.0 * std::f32::consts::PI * u2).sin_cos();
            data.push(r * c);
            if data.len() < n {
                data.push(r * s);
            }
        }
        Tensor {
            shape,
            data: Arc::new(data),
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn numel(&self) -> usize {
        self.data.len()
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn at(&self, n: usize, c: usize, h: usize, w: usize) -> f32 {
        let [_, cs, hs, ws] = self.shape;
        self.data[((n * cs + c) * hs + h) * ws + w]
    }

    /// Index of (n, c, h, w) in the flat buffer.
    pub fn idx(&self, n: usize, c: usize, h: usize, w: usize) -> usize {
        let [_, cs, hs, ws] = self.shape;
        ((n * cs + c) * hs + h) * ws + w
    }

    pub fn is_scalar(&self) -> bool {
        self.shape == [1, 1, 1, 1]
    }

    pub fn scalar_value(&self) -> f32 {
        debug_assert!(self.is_scalar());
        self.data[0]
    }

    /// Reinterpret with a new shape of identical element count.
    pub fn reshaped(&self, shape: Shape) -> Result<Tensor> {
        if numel(shape) != self.numel() {
            return Err(Error::Dimension {
                op: "reshape",
                lhs: self.shape.to_vec(),
                rhs: shape.to_vec(),
            });
        }
        Ok(Tensor {
            shape,
            data: Arc::clone(&self.data),
        })
    }

    pub fn map(&self, f: impl Fn(f32) -> f32) -> Tensor {
        Tensor {
            shape: self.shape,
            data: Arc::new(self.data.iter().map(|&v| f(v)).collect()),
        }
    }

    pub fn all_finite(&self) -> bool {
        // One vectorizable pass: x * 0.0 is NaN exactly when x is NaN or infinite.
        let acc = self.data.iter().fold(0.0f32, |s, &v| s + v * 0.0);
        acc == 0.0
    }

    pub fn max_abs_diff(&self, other: &Tensor) -> f32 {
        debug_assert_eq!(self.shape, other.shape);
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f32::max)
    }

    pub fn bit_eq(&self, other: &Tensor) -> bool {
        self.shape == other.shape
            && self
                .data
                .iter()
                .zip(other.data.iter())
                .all(|(a, b)| a.to_bits() == b.to_bits())
    }

    /// Rotate each (H, W) plane counter-clockwise by `quarters` * 90 degrees.
    pub fn rot90(&self, quarters: usize) -> Tensor {
        let q = quarters % 4;
        if q == 0 {
            return self.clone();
        }
        let [n, c, h, w] = self.shape;
        let (oh, ow) = if q % 2 == 1 { (w, h) } else { (h, w) };
        let mut out = vec![0.0f32; self.numel()];
        for ni in 0..n {
            for ci in 0..c {
                for y in 0..h {
                    for x in 0..w {
                        let (ty, tx) = match q {
                            1 => (w - 1 - x, y),
                            2 => (h - 1 - y, w - 1 - x),
                            _ => (x, h - 1 - y),
                        };
                        out[((ni * c + ci) * oh + ty) * ow + tx] = self.at(ni, ci, y, x);
                    }
                }
            }
        }
        Tensor {
            shape: [n, c, oh, ow],
            data: Arc::new(out),
        }
    }

    /// Extract a spatial window.
    pub fn crop(&self, top: usize, left: usize, height: usize, width: usize) -> Result<Tensor> {
        let [n, c, h, w] = self.shape;
        if top + height > h || left + width > w {
            return Err(Error::Parameter(format!(
                "crop window {}x{}+{}+{} exceeds {}x{}",
                height, width, top, left, h, w
            )));
        }
        let mut out = Vec::with_capacity(n * c * height * width);
        for ni in 0..n {
            for ci in 0..c {
                for y in 0..height {
                    let base = self.idx(ni, ci, top + y, left);
                    out.extend_from_slice(&self.data[base..base + width]);
                }
            }
        }
        Tensor::from_vec([n, c, height, width], out)
    }

    /// Zero-pad the spatial extent on the bottom/right to (h, w).
    pub fn pad_to(&self, height: usize, width: usize) -> Tensor {
        let [n, c, h, w] = self.shape;
        if h == height && w == width {
            return self.clone();
        }
        let mut out = vec![0.0f32; n * c * height * width];
        for ni in 0..n {
            for ci in 0..c {
                for y in 0..h {
                    let src = self.idx(ni, ci, y, 0);
                    let dst = ((ni * c + ci) * height + y) * width;
                    out[dst..dst + w].copy_from_slice(&self.data[src..src + w]);
                }
            }
        }
        Tensor {
            shape: [n, c, height, width],
            data: Arc::new(out),
        }
    }
}

/// Mutable staging buffer that freezes into a `Tensor`.
pub struct TensorBuilder {
    pub shape: Shape,
    pub data: Vec<f32>,
}

impl TensorBuilder {
    pub fn zeros(shape: Shape) -> Self {
        TensorBuilder {
            shape,
            data: vec![0.0; numel(shape)],
        }
    }

    pub fn idx(&self, n: usize, c: usize, h: usize, w: usize) -> usize {
        let [_, cs, hs, ws] = self.shape;
        ((n * cs + c) * hs + h) * ws + w
    }

    pub fn set(&mut self, n: usize, c: usize, h: usize, w: usize, v: f32) {
        let i = self.idx(n, c, h, w);
        self.data[i] = v;
    }

    pub fn add(&mut self, n: usize, c: usize, h: usize, w: usize, v: f32) {
        let i = self.idx(n, c, h, w);
        self.data[i] += v;
    }

    pub fn build(self) -> Tensor {
        Tensor {
            shape: self.shape,
            data: Arc::new(self.data),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_vec_rejects_bad_length() {
        assert!(Tensor::from_vec([1, 1, 2, 2], vec![0.0; 3]).is_err());
    }

    #[test]
    fn rot90_four_times_is_identity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        use rand::SeedableRng;
        let t = Tensor::rand_uniform([1, 2, 3, 5], 0.0, 1.0, &mut rng);
        let r = t.rot90(1).rot90(1).rot90(1).rot90(1);
        assert!(t.bit_eq(&r));
    }

    #[test]
    fn finite_check_catches_nan_and_inf() {
        let t = Tensor::from_vec([1, 1, 1, 3], vec![1.0, f32::NAN, 0.0]).unwrap();
        assert!(!t.all_finite());
        let t = Tensor::from_vec([1, 1, 1, 3], vec![1.0, f32::INFINITY, 0.0]).unwrap();
        assert!(!t.all_finite());
        let t = Tensor::from_vec([1, 1, 1, 3], vec![1.0, -2.0, 0.0]).unwrap();
        assert!(t.all_finite());
    }

    #[test]
    fn crop_and_pad_round_trip() {
        let t = Tensor::from_vec([1, 1, 2, 2], vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let p = t.pad_to(3, 4);
        assert_eq!(p.shape(), [1, 1, 3, 4]);
        assert_eq!(p.at(0, 0, 1, 1), 4.0);
        assert_eq!(p.at(0, 0, 2, 3), 0.0);
        let c = p.crop(0, 0, 2, 2).unwrap();
        assert!(c.bit_eq(&t));
    }
}
