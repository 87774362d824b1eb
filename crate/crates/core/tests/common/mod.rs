//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls into the simulator, the activation or the model
//! internals; circuits are built as explicit dense unitaries and the model
//! forward pass is re-derived from the flat parameter vector.

#![allow(dead_code)]

use num_complex::Complex64;
use tunnel_qnn::model::{HybridModel, QuantumWiring, Variant};
use tunnel_qnn::qsim::{Axis, QuantumBlockSpec};

pub type Matrix = Vec<Vec<Complex64>>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(dim: usize) -> Matrix {
    (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) }).collect())
        .collect()
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![c(0.0, 0.0); m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut s = c(0.0, 0.0);
            for t in 0..k {
                s += a[i][t] * b[t][j];
            }
            out[i][j] = s;
        }
    }
    out
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, ca) = (a.len(), a[0].len());
    let (rb, cb) = (b.len(), b[0].len());
    let mut out = vec![vec![c(0.0, 0.0); ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn pauli(axis: Axis) -> Matrix {
    match axis {
        Axis::X => vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]],
        Axis::Y => vec![vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]],
        Axis::Z => vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]],
    }
}

/// `exp(-i * angle * P)` by truncated Taylor series.
pub fn rotation_by_series(axis: Axis, angle: f64) -> Matrix {
    let gen: Matrix = pauli(axis)
        .into_iter()
        .map(|row| row.into_iter().map(|z| z * c(0.0, -angle)).collect())
        .collect();
    let mut sum = identity(2);
    let mut term = identity(2);
    for k in 1..80 {
        term = matmul(&term, &gen);
        for row in term.iter_mut() {
            for z in row.iter_mut() {
                *z /= k as f64;
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                sum[i][j] += term[i][j];
            }
        }
    }
    sum
}

/// Lifts a one-qubit operator onto `n` qubits; qubit 0 is the leftmost factor.
pub fn on_qubit(op: &Matrix, qubit: usize, n: usize) -> Matrix {
    let mut out = vec![vec![c(1.0, 0.0)]];
    for q in 0..n {
        out = if q == qubit { kron(&out, op) } else { kron(&out, &identity(2)) };
    }
    out
}

/// CNOT as a permutation matrix over basis indices.
pub fn cnot(control: usize, target: usize, n: usize) -> Matrix {
    let dim = 1 << n;
    let bit = |q: usize| 1usize << (n - 1 - q);
    let mut out = vec![vec![c(0.0, 0.0); dim]; dim];
    for col in 0..dim {
        let row = if col & bit(control) != 0 { col ^ bit(target) } else { col };
        out[row][col] = c(1.0, 0.0);
    }
    out
}

/// Full block unitary, gates multiplied on the left in application order.
pub fn block_unitary(features: &[f64], spec: &QuantumBlockSpec) -> Matrix {
    let n = spec.n_qubits;
    let mut u = identity(1 << n);
    let mut apply = |g: Matrix| u = matmul(&g, &u);
    for (q, &x) in features.iter().enumerate() {
        for &axis in &spec.embed_axes {
            apply(on_qubit(&rotation_by_series(axis, x), q, n));
        }
    }
    for l in 0..spec.n_layers {
        for q in 0..n {
            let theta = spec.thetas[l * n + q];
            apply(on_qubit(&rotation_by_series(spec.rotation_gate, theta), q, n));
        }
        for q in 0..n.saturating_sub(1) {
            apply(cnot(q, q + 1, n));
        }
        if spec.ring_closure && n > 1 {
            apply(cnot(n - 1, 0, n));
        }
    }
    u
}

/// `<psi|Z_i|psi>` for `psi = U|0..0>`, with `Z_i` built as a dense operator.
pub fn oracle_expectations(features: &[f64], spec: &QuantumBlockSpec) -> Vec<f64> {
    let n = spec.n_qubits;
    let u = block_unitary(features, spec);
    let psi: Vec<Complex64> = u.iter().map(|row| row[0]).collect();
    (0..n)
        .map(|i| {
            let z = on_qubit(&pauli(Axis::Z), i, n);
            let mut acc = c(0.0, 0.0);
            for r in 0..psi.len() {
                for s in 0..psi.len() {
                    acc += psi[r].conj() * z[r][s] * psi[s];
                }
            }
            acc.re
        })
        .collect()
}

/// Direct evaluation of the diode current with the naive log-ratio.
pub fn naive_tdaf(v: f64, gain: f64) -> f64 {
    let (q, kb, t) = (1.602176634e-19, 1.380649e-23, 300.0);
    let (a, b, cc, d, n1, n2, h) = (0.0039, 0.5, 0.0874, 0.0073, 0.0352, 0.0031, 0.0367);
    let alpha = q * (b - cc) / (kb * t);
    let eta = q * n1 / (kb * t);
    let gamma = q * n2 / (kb * t);
    let j1 = a
        * ((1.0 + (alpha + eta * v).exp()) / (1.0 + (alpha - eta * v).exp())).ln()
        * (std::f64::consts::PI / 2.0 + ((cc - n1 * v) / d).atan());
    let j2 = h * ((gamma * v).exp() - 1.0);
    gain * (j1 + j2)
}

fn tensor<'a>(model: &HybridModel, params: &'a [f64], name: &str) -> &'a [f64] {
    let e = model
        .registry()
        .iter()
        .find(|e| e.name == name)
        .unwrap_or_else(|| panic!("missing tensor {name}"));
    &params[e.range()]
}

fn dense(params_w: &[f64], params_b: &[f64], x: &[f64]) -> Vec<f64> {
    let out = params_b.len();
    let inp = x.len();
    let mut y = vec![0.0; out];
    for i in 0..out {
        let mut s = params_b[i];
        for j in 0..inp {
            s += params_w[i * inp + j] * x[j];
        }
        y[i] = s;
    }
    y
}

/// Straight-line re-implementation of the model's logits from its flat
/// parameters and config.
pub fn oracle_logits(model: &HybridModel, params: &[f64], x: [f64; 2]) -> Vec<f64> {
    let cfg = model.config();
    let act = |v: Vec<f64>| -> Vec<f64> {
        match cfg.variant {
            Variant::ReluQnn => v.into_iter().map(|z| if z > 0.0 { z } else { 0.0 }).collect(),
            _ => v.into_iter().map(|z| naive_tdaf(z, cfg.tdaf_gain)).collect(),
        }
    };
    let spec = |thetas: &[f64]| QuantumBlockSpec {
        n_qubits: 2,
        n_layers: cfg.quantum_layers,
        thetas: thetas.to_vec(),
        embed_axes: cfg.embed_axes.clone(),
        ring_closure: cfg.ring_closure,
        rotation_gate: Axis::X,
    };
    let h1 = act(dense(tensor(model, params, "input.weight"), tensor(model, params, "input.bias"), &x));
    let q = match (cfg.variant, cfg.quantum_wiring) {
        (Variant::ClassicalTdaf, _) => h1,
        (_, QuantumWiring::ParallelBlocks) => {
            let mut out = oracle_expectations(&h1[..2], &spec(tensor(model, params, "quantum.block0.theta")));
            out.extend(oracle_expectations(&h1[2..], &spec(tensor(model, params, "quantum.block1.theta"))));
            out
        }
        (_, QuantumWiring::ProjectedSingle) => {
            let p = dense(tensor(model, params, "quantum.down.weight"), tensor(model, params, "quantum.down.bias"), &h1);
            let z = oracle_expectations(&p, &spec(tensor(model, params, "quantum.block0.theta")));
            dense(tensor(model, params, "quantum.up.weight"), tensor(model, params, "quantum.up.bias"), &z)
        }
    };
    let h2 = act(dense(tensor(model, params, "hidden.weight"), tensor(model, params, "hidden.bias"), &q));
    dense(tensor(model, params, "output.weight"), tensor(model, params, "output.bias"), &h2)
}

/// Cross-entropy computed from scratch.
pub fn oracle_loss(logits: &[f64], label: usize) -> f64 {
    let m = logits.iter().cloned().fold(f64::MIN, f64::max);
    let z: f64 = logits.iter().map(|l| (l - m).exp()).sum();
    -(logits[label] - m - z.ln())
}

/// Central difference of a scalar function of a vector, component by component.
pub fn central_diff<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], h: f64) -> Vec<f64> {
    let mut xp = x.to_vec();
    (0..x.len())
        .map(|i| {
            let orig = xp[i];
            xp[i] = orig + h;
            let fp = f(&xp);
            xp[i] = orig - h;
            let fm = f(&xp);
            xp[i] = orig;
            (fp - fm) / (2.0 * h)
        })
        .collect()
}

/// Small deterministic generator for test inputs (xorshift64*).
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        Self(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1)
    }

    pub fn next_f64(&mut self) -> f64 {
        self.0 ^= self.0 >> 12;
        self.0 ^= self.0 << 25;
        self.0 ^= self.0 >> 27;
        (self.0.wrapping_mul(0x2545_F491_4F6C_DD1D) >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    pub fn below(&mut self, n: usize) -> usize {
        ((self.next_f64() * n as f64) as usize).min(n - 1)
    }

    pub fn vec(&mut self, n: usize, lo: f64, hi: f64) -> Vec<f64> {
        (0..n).map(|_| self.uniform(lo, hi)).collect()
    }

    pub fn axis(&mut self) -> Axis {
        [Axis::X, Axis::Y, Axis::Z][self.below(3)]
    }

    /// Random block: 1..=max_layers layers, a random non-empty axis subset,
    /// random ring closure and entangler gate.
    pub fn block_spec(&mut self, n_qubits: usize, max_layers: usize) -> QuantumBlockSpec {
        let n_layers = 1 + self.below(max_layers);
        let all = [Axis::X, Axis::Y, Axis::Z];
        let mut axes: Vec<Axis> = all.iter().copied().filter(|_| self.next_f64() < 0.6).collect();
        if axes.is_empty() {
            axes.push(self.axis());
        }
        QuantumBlockSpec {
            n_qubits,
            n_layers,
            thetas: self.vec(n_layers * n_qubits, -3.1, 3.1),
            embed_axes: axes,
            ring_closure: self.next_f64() < 0.7,
            rotation_gate: self.axis(),
        }
    }
}

pub fn read_tdaf_fixture() -> Vec<(f64, f64, f64)> {
    let text = include_str!("../fixtures/tdaf_curve.csv");
    text.lines()
        .skip(1)
        .filter(|l| !l.is_empty())
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|s| s.parse().unwrap()).collect();
            (f[0], f[1], f[2])
        })
        .collect()
}
