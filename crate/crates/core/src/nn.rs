//! Dense layers, ReLU, softmax cross-entropy and Adam with explicit backprop.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn check_len(expected: usize, got: usize, context: &'static str) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::ShapeMismatch {
            expected,
            got,
            context,
        })
    }
}

/// Fully connected layer `y = W x + b` with `W` stored row-major (`out x in`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseLayer {
    pub in_dim: usize,
    pub out_dim: usize,
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
}

/// Gradients produced by [`DenseLayer::backward`].
#[derive(Debug, Clone, PartialEq)]
pub struct DenseGrads {
    pub d_weights: Vec<f64>,
    pub d_bias: Vec<f64>,
    pub d_input: Vec<f64>,
}

impl DenseLayer {
    pub fn zeros(in_dim: usize, out_dim: usize) -> Self {
        Self {
            in_dim,
            out_dim,
            weights: vec![0.0; in_dim * out_dim],
            bias: vec![0.0; out_dim],
        }
    }

    /// Weights and biases drawn from `U[-1/sqrt(fan_in), 1/sqrt(fan_in)]`,
    /// weights first (row-major) then biases.
    pub fn init_uniform<R: Rng + ?Sized>(in_dim: usize, out_dim: usize, rng: &mut R) -> Self {
        let bound = (1.0 / in_dim as f64).sqrt();
        let mut draw = || rng.random_range(-bound..=bound);
        let weights = (0..in_dim * out_dim).map(|_| draw()).collect();
        let bias = (0..out_dim).map(|_| draw()).collect();
        Self {
            in_dim,
            out_dim,
            weights,
            bias,
        }
    }

    pub fn from_parts(in_dim: usize, out_dim: usize, weights: Vec<f64>, bias: Vec<f64>) -> Result<Self> {
        check_len(in_dim * out_dim, weights.len(), "dense weights")?;
        check_len(out_dim, bias.len(), "dense bias")?;
        Ok(Self {
            in_dim,
            out_dim,
            weights,
            bias,
        })
    }

    pub fn n_params(&self) -> usize {
        self.weights.len() + self.bias.len()
    }

    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len(self.in_dim, x.len(), "dense input")?;
        Ok(self
            .weights
            .chunks_exact(self.in_dim)
            .zip(&self.bias)
            .map(|(row, b)| row.iter().zip(x).map(|(w, xi)| w * xi).sum::<f64>() + b)
            .collect())
    }

    /// `dW = g x^T`, `db = g`, `dx = W^T g`.
    pub fn backward(&self, x: &[f64], upstream: &[f64]) -> Result<DenseGrads> {
        check_len(self.in_dim, x.len(), "dense input")?;
        check_len(self.out_dim, upstream.len(), "dense upstream gradient")?;
        let mut d_weights = Vec::with_capacity(self.weights.len());
        for &g in upstream {
            d_weights.extend(x.iter().map(|xi| g * xi));
        }
        let mut d_input = vec![0.0; self.in_dim];
        for (row, &g) in self.weights.chunks_exact(self.in_dim).zip(upstream) {
            for (d, w) in d_input.iter_mut().zip(row) {
                *d += w * g;
            }
        }
        Ok(DenseGrads {
            d_weights,
            d_bias: upstream.to_vec(),
            d_input,
        })
    }
}

pub fn relu(x: &[f64]) -> Vec<f64> {
    x.iter().map(|&v| v.max(0.0)).collect()
}

/// Subgradient at zero is taken as 0.
pub fn relu_grad(x: &[f64]) -> Vec<f64> {
    x.iter().map(|&v| if v > 0.0 { 1.0 } else { 0.0 }).collect()
}

/// Max-shifted softmax.
pub fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|&z| (z - max).exp()).collect();
    let total: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / total).collect()
}

/// Returns `(-log softmax(logits)[label], softmax(logits) - onehot(label))`.
pub fn softmax_cross_entropy(logits: &[f64], label: usize) -> Result<(f64, Vec<f64>)> {
    if label >= logits.len() {
        return Err(Error::LabelOutOfRange {
            label,
            classes: logits.len(),
        });
    }
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let log_sum = logits.iter().map(|&z| (z - max).exp()).sum::<f64>().ln();
    let loss = log_sum - (logits[label] - max);
    let mut grad = softmax(logits);
    grad[label] -= 1.0;
    Ok((loss, grad))
}

/// Adam optimizer state over a flat parameter vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdamState {
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
    pub t: u64,
    pub m: Vec<f64>,
    pub v: Vec<f64>,
}

impl AdamState {
    pub const DEFAULT_LR: f64 = 0.02;

    pub fn new(n_params: usize, lr: f64) -> Self {
        Self {
            lr,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
            t: 0,
            m: vec![0.0; n_params],
            v: vec![0.0; n_params],
        }
    }

    /// One bias-corrected update of `params` in place.
    pub fn step(&mut self, params: &mut [f64], grads: &[f64]) -> Result<()> {
        check_len(self.m.len(), params.len(), "adam params")?;
        check_len(self.m.len(), grads.len(), "adam grads")?;
        self.t += 1;
        let t = self.t as i32;
        let bc1 = 1.0 - self.beta1.powi(t);
        let bc2 = 1.0 - self.beta2.powi(t);
        for (((p, &g), m), v) in params
            .iter_mut()
            .zip(grads)
            .zip(self.m.iter_mut())
            .zip(self.v.iter_mut())
        {
            *m = self.beta1 * *m + (1.0 - self.beta1) * g;
            *v = self.beta2 * *v + (1.0 - self.beta2) * g * g;
            let m_hat = *m / bc1;
            let v_hat = *v / bc2;
            *p -= self.lr * m_hat / (v_hat.sqrt() + self.eps);
        }
        Ok(())
    }
}
