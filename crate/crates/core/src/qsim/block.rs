use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_4;

use super::{Axis, StateVector};
use crate::error::{Error, Result};

/// Shift used by the parameter-shift rule under the full-angle convention.
pub const PARAMETER_SHIFT: f64 = FRAC_PI_4;

/// One angle-embedding followed by `n_layers` entangler layers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumBlockSpec {
    pub n_qubits: usize,
    pub n_layers: usize,
    /// Row-major `n_layers x n_qubits`.
    pub thetas: Vec<f64>,
    pub embed_axes: Vec<Axis>,
    pub ring_closure: bool,
    pub rotation_gate: Axis,
}

impl QuantumBlockSpec {
    /// Two qubits, XYZ embedding, RX entangler rotations, closed ring, all angles zero.
    pub fn new(n_qubits: usize, n_layers: usize) -> Self {
        Self {
            n_qubits,
            n_layers,
            thetas: vec![0.0; n_layers * n_qubits],
            embed_axes: vec![Axis::X, Axis::Y, Axis::Z],
            ring_closure: true,
            rotation_gate: Axis::X,
        }
    }

    pub fn with_thetas(mut self, thetas: Vec<f64>) -> Self {
        self.thetas = thetas;
        self
    }

    pub fn with_embed_axes(mut self, axes: Vec<Axis>) -> Self {
        self.embed_axes = axes;
        self
    }

    pub fn with_ring_closure(mut self, ring_closure: bool) -> Self {
        self.ring_closure = ring_closure;
        self
    }

    pub fn layer(&self, l: usize) -> &[f64] {
        &self.thetas[l * self.n_qubits..(l + 1) * self.n_qubits]
    }

    pub fn n_thetas(&self) -> usize {
        self.n_layers * self.n_qubits
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_qubits == 0 {
            return Err(Error::InvalidParameter("block needs at least one qubit".into()));
        }
        if self.n_qubits > 10 {
            return Err(Error::InvalidParameter(format!(
                "{} qubits exceeds the simulator limit of 10",
                self.n_qubits
            )));
        }
        if self.thetas.len() != self.n_thetas() {
            return Err(Error::ShapeMismatch {
                expected: self.n_thetas(),
                got: self.thetas.len(),
                context: "block thetas",
            });
        }
        if self.embed_axes.is_empty() {
            return Err(Error::InvalidParameter("embed_axes must be non-empty".into()));
        }
        if let Some(t) = self.thetas.iter().find(|t| !t.is_finite()) {
            return Err(Error::NonFinite(format!("theta {t}")));
        }
        Ok(())
    }
}

/// Applies `R_axis(features[i])` on qubit `i` for each axis, in order.
pub fn angle_embed(state: &mut StateVector, features: &[f64], axes: &[Axis]) -> Result<()> {
    if features.len() != state.n_qubits() {
        return Err(Error::ShapeMismatch {
            expected: state.n_qubits(),
            got: features.len(),
            context: "embedded features",
        });
    }
    for (q, &x) in features.iter().enumerate() {
        for &axis in axes {
            state.apply_rotation(q, axis, x)?;
        }
    }
    Ok(())
}

/// One round of trainable rotations followed by the CNOT chain (and ring closure).
pub fn entangler_layer(
    state: &mut StateVector,
    layer_thetas: &[f64],
    spec: &QuantumBlockSpec,
) -> Result<()> {
    let n = state.n_qubits();
    if layer_thetas.len() != n {
        return Err(Error::ShapeMismatch {
            expected: n,
            got: layer_thetas.len(),
            context: "entangler layer angles",
        });
    }
    for (q, &theta) in layer_thetas.iter().enumerate() {
        state.apply_rotation(q, spec.rotation_gate, theta)?;
    }
    for q in 0..n.saturating_sub(1) {
        state.apply_cnot(q, q + 1)?;
    }
    if spec.ring_closure && n > 1 {
        state.apply_cnot(n - 1, 0)?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Source {
    Feature(usize),
    Theta(usize),
}

#[derive(Debug, Clone, Copy)]
enum Op {
    Rotation {
        qubit: usize,
        axis: Axis,
        angle: f64,
        source: Source,
    },
    Cnot(usize, usize),
}

/// Flattens embed + entangler layers into a gate list that records which
/// parameter drives each rotation.
fn compile(features: &[f64], spec: &QuantumBlockSpec) -> Result<Vec<Op>> {
    spec.validate()?;
    let n = spec.n_qubits;
    if features.len() != n {
        return Err(Error::ShapeMismatch {
            expected: n,
            got: features.len(),
            context: "block features",
        });
    }
    if let Some(x) = features.iter().find(|x| !x.is_finite()) {
        return Err(Error::NonFinite(format!("feature {x}")));
    }
    let mut ops = Vec::with_capacity(n * spec.embed_axes.len() + spec.n_layers * (2 * n + 1));
    for (q, &x) in features.iter().enumerate() {
        for &axis in &spec.embed_axes {
            ops.push(Op::Rotation {
                qubit: q,
                axis,
                angle: x,
                source: Source::Feature(q),
            });
        }
    }
    for l in 0..spec.n_layers {
        for q in 0..n {
            ops.push(Op::Rotation {
                qubit: q,
                axis: spec.rotation_gate,
                angle: spec.thetas[l * n + q],
                source: Source::Theta(l * n + q),
            });
        }
        for q in 0..n.saturating_sub(1) {
            ops.push(Op::Cnot(q, q + 1));
        }
        if spec.ring_closure && n > 1 {
            ops.push(Op::Cnot(n - 1, 0));
        }
    }
    Ok(ops)
}

/// Runs the gate list, adding `offset` to the angle of rotation `shifted`.
fn simulate(n_qubits: usize, ops: &[Op], shifted: Option<(usize, f64)>) -> Vec<f64> {
    let mut state = StateVector::zero(n_qubits);
    for (k, op) in ops.iter().enumerate() {
        match *op {
            Op::Rotation {
                qubit, axis, angle, ..
            } => {
                let angle = match shifted {
                    Some((j, offset)) if j == k => angle + offset,
                    _ => angle,
                };
                state
                    .apply_rotation(qubit, axis, angle)
                    .expect("compiled qubit index in range");
            }
            Op::Cnot(c, t) => state.apply_cnot(c, t).expect("compiled cnot valid"),
        }
    }
    state.expectations_z()
}

/// Prepares `|0..0>`, embeds `features`, applies every entangler layer and
/// returns `<Z_i>` for each qubit.
pub fn run_block(features: &[f64], spec: &QuantumBlockSpec) -> Result<Vec<f64>> {
    let ops = compile(features, spec)?;
    Ok(simulate(spec.n_qubits, &ops, None))
}

/// Jacobians of the block outputs.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockGradients {
    /// The forward expectations, computed alongside the gradients.
    pub expectations: Vec<f64>,
    /// `d<Z_i>/d feature_j`, indexed `[i][j]`.
    pub d_features: Vec<Vec<f64>>,
    /// `d<Z_i>/d theta_k` with `k = layer * n_qubits + qubit`, indexed `[i][k]`.
    pub d_thetas: Vec<Vec<f64>>,
}

/// Parameter-shift gradients. Every rotation occurrence contributes
/// `f(+pi/4) - f(-pi/4)` to the parameter that drives it, so a feature
/// embedded on three axes accumulates three terms.
pub fn block_gradients(features: &[f64], spec: &QuantumBlockSpec) -> Result<BlockGradients> {
    let ops = compile(features, spec)?;
    let n = spec.n_qubits;
    let expectations = simulate(n, &ops, None);
    let mut d_features = vec![vec![0.0; n]; n];
    let mut d_thetas = vec![vec![0.0; spec.n_thetas()]; n];
    for (k, op) in ops.iter().enumerate() {
        let Op::Rotation { source, .. } = *op else {
            continue;
        };
        let plus = simulate(n, &ops, Some((k, PARAMETER_SHIFT)));
        let minus = simulate(n, &ops, Some((k, -PARAMETER_SHIFT)));
        for i in 0..n {
            let term = plus[i] - minus[i];
            match source {
                Source::Feature(j) => d_features[i][j] += term,
                Source::Theta(j) => d_thetas[i][j] += term,
            }
        }
    }
    Ok(BlockGradients {
        expectations,
        d_features,
        d_thetas,
    })
}
