//! The hybrid classifier and its two baselines.
//!
//! Every variant shares the classical skeleton
//!
//! ```text
//! Dense(2->4) -> act -> quantum stage (4->4) -> Dense(4->4) -> act -> Dense(4->3)
//! ```
//!
//! `TunnElQNN` uses the tunnel-diode activation, `ReLUQNN` swaps it for ReLU,
//! and `ClassicalTDAF` replaces the quantum stage by the identity.

mod checkpoint;

pub use checkpoint::Checkpoint;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::data::N_CLASSES;
use crate::error::{Error, Result};
use crate::nn::{relu, relu_grad, DenseLayer};
use crate::qsim::{block_gradients, run_block, Axis, QuantumBlockSpec};
use crate::tdaf::{Tdaf, TdafParams, DEFAULT_GAIN};

pub const INPUT_DIM: usize = 2;
pub const HIDDEN_DIM: usize = 4;
const BLOCK_QUBITS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "TunnElQNN")]
    TunnElQnn,
    #[serde(rename = "ReLUQNN")]
    ReluQnn,
    #[serde(rename = "ClassicalTDAF")]
    ClassicalTdaf,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::TunnElQnn, Variant::ReluQnn, Variant::ClassicalTdaf];

    pub fn name(self) -> &'static str {
        match self {
            Variant::TunnElQnn => "TunnElQNN",
            Variant::ReluQnn => "ReLUQNN",
            Variant::ClassicalTdaf => "ClassicalTDAF",
        }
    }

    pub fn is_quantum(self) -> bool {
        !matches!(self, Variant::ClassicalTdaf)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tunnelqnn" | "tunnel" => Ok(Variant::TunnElQnn),
            "reluqnn" | "relu" => Ok(Variant::ReluQnn),
            "classicaltdaf" | "classical" => Ok(Variant::ClassicalTdaf),
            _ => Err(Error::Parse(format!("unknown variant '{s}'"))),
        }
    }
}

/// How the four hidden activations reach the 2-qubit circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantumWiring {
    /// Two independent 2-qubit blocks on `(x0, x1)` and `(x2, x3)`.
    ParallelBlocks,
    /// Trainable `Dense(4->2)`, one 2-qubit block, trainable `Dense(2->4)`.
    ProjectedSingle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub variant: Variant,
    pub quantum_layers: usize,
    pub quantum_wiring: QuantumWiring,
    pub tdaf_gain: f64,
    pub seed: u64,
    pub embed_axes: Vec<Axis>,
    pub ring_closure: bool,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            variant: Variant::TunnElQnn,
            quantum_layers: 3,
            quantum_wiring: QuantumWiring::ParallelBlocks,
            tdaf_gain: DEFAULT_GAIN,
            seed: 0,
            embed_axes: vec![Axis::X, Axis::Y, Axis::Z],
            ring_closure: true,
        }
    }
}

impl ModelConfig {
    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.variant.is_quantum() {
            if self.quantum_layers == 0 {
                return Err(Error::Config(format!(
                    "{} needs at least one quantum layer",
                    self.variant
                )));
            }
            if self.embed_axes.is_empty() {
                return Err(Error::Config("embed_axes must be non-empty".into()));
            }
        }
        if !self.tdaf_gain.is_finite() {
            return Err(Error::Config("tdaf_gain must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Activation {
    Tdaf(Tdaf),
    Relu,
}

impl Activation {
    fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        match self {
            Activation::Tdaf(t) => t.activate(x),
            Activation::Relu => Ok(relu(x)),
        }
    }

    fn grad(&self, x: &[f64]) -> Result<Vec<f64>> {
        match self {
            Activation::Tdaf(t) => t.activate_grad(x),
            Activation::Relu => Ok(relu_grad(x)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum QuantumStage {
    Identity,
    Parallel([QuantumBlockSpec; 2]),
    Projected {
        down: DenseLayer,
        block: QuantumBlockSpec,
        up: DenseLayer,
    },
}

/// Location of one trainable tensor inside the flat parameter vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub name: String,
    pub offset: usize,
    pub shape: Vec<usize>,
}

impl RegistryEntry {
    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn range(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.len()
    }
}

/// Intermediate values from [`HybridModel::forward`] needed by the backward pass.
#[derive(Debug, Clone, PartialEq)]
pub struct ForwardCache {
    pub input: [f64; 2],
    pub pre_act1: Vec<f64>,
    pub act1: Vec<f64>,
    /// Projected wiring only: the two angles fed to the block.
    pub projected: Vec<f64>,
    /// Projected wiring only: the block's expectations.
    pub block_out: Vec<f64>,
    pub stage_out: Vec<f64>,
    pub pre_act2: Vec<f64>,
    pub act2: Vec<f64>,
    pub logits: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HybridModel {
    config: ModelConfig,
    input: DenseLayer,
    activation: Activation,
    stage: QuantumStage,
    hidden: DenseLayer,
    output: DenseLayer,
    registry: Vec<RegistryEntry>,
}

fn block_spec(config: &ModelConfig, thetas: Vec<f64>) -> QuantumBlockSpec {
    QuantumBlockSpec::new(BLOCK_QUBITS, config.quantum_layers)
        .with_thetas(thetas)
        .with_embed_axes(config.embed_axes.clone())
        .with_ring_closure(config.ring_closure)
}

fn random_thetas<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    // One full period of exp(-i theta P) expectations.
    (0..n).map(|_| rng.random_range(0.0..PI)).collect()
}

/// Builds the model for `config`, drawing initial parameters from its seed.
pub fn build_model(config: &ModelConfig) -> Result<HybridModel> {
    HybridModel::new(config.clone())
}

impl HybridModel {
    /// Initialization draws the three classical layers first (input, hidden,
    /// output), then the quantum stage, so every variant sharing a seed
    /// starts from the same classical weights.
    pub fn new(config: ModelConfig) -> Result<Self> {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let input = DenseLayer::init_uniform(INPUT_DIM, HIDDEN_DIM, &mut rng);
        let hidden = DenseLayer::init_uniform(HIDDEN_DIM, HIDDEN_DIM, &mut rng);
        let output = DenseLayer::init_uniform(HIDDEN_DIM, N_CLASSES, &mut rng);
        let activation = match config.variant {
            Variant::ReluQnn => Activation::Relu,
            Variant::TunnElQnn | Variant::ClassicalTdaf => Activation::Tdaf(Tdaf::new(
                TdafParams::default().with_gain(config.tdaf_gain),
            )?),
        };
        let n_thetas = config.quantum_layers * BLOCK_QUBITS;
        let stage = if !config.variant.is_quantum() {
            QuantumStage::Identity
        } else {
            match config.quantum_wiring {
                QuantumWiring::ParallelBlocks => {
                    let a = block_spec(&config, random_thetas(n_thetas, &mut rng));
                    let b = block_spec(&config, random_thetas(n_thetas, &mut rng));
                    QuantumStage::Parallel([a, b])
                }
                QuantumWiring::ProjectedSingle => {
                    let down = DenseLayer::init_uniform(HIDDEN_DIM, BLOCK_QUBITS, &mut rng);
                    let up = DenseLayer::init_uniform(BLOCK_QUBITS, HIDDEN_DIM, &mut rng);
                    let block = block_spec(&config, random_thetas(n_thetas, &mut rng));
                    QuantumStage::Projected { down, block, up }
                }
            }
        };
        let mut model = Self {
            config,
            input,
            activation,
            stage,
            hidden,
            output,
            registry: Vec::new(),
        };
        model.registry = model.build_registry();
        Ok(model)
    }

    pub fn config(&self) -> &ModelConfig {
        &self.config
    }

    pub fn registry(&self) -> &[RegistryEntry] {
        &self.registry
    }

    pub fn n_params(&self) -> usize {
        self.registry.last().map_or(0, |e| e.offset + e.len())
    }

    fn build_registry(&self) -> Vec<RegistryEntry> {
        let mut entries = Vec::new();
        let mut offset = 0;
        let mut push = |name: &str, shape: Vec<usize>| {
            let e = RegistryEntry {
                name: name.to_string(),
                offset,
                shape,
            };
            offset += e.len();
            entries.push(e);
        };
        let dense = |push: &mut dyn FnMut(&str, Vec<usize>), name: &str, l: &DenseLayer| {
            push(&format!("{name}.weight"), vec![l.out_dim, l.in_dim]);
            push(&format!("{name}.bias"), vec![l.out_dim]);
        };
        dense(&mut push, "input", &self.input);
        match &self.stage {
            QuantumStage::Identity => {}
            QuantumStage::Parallel(blocks) => {
                for (i, b) in blocks.iter().enumerate() {
                    push(&format!("quantum.block{i}.theta"), vec![b.n_layers, b.n_qubits]);
                }
            }
            QuantumStage::Projected { down, block, up } => {
                dense(&mut push, "quantum.down", down);
                push("quantum.block0.theta", vec![block.n_layers, block.n_qubits]);
                dense(&mut push, "quantum.up", up);
            }
        }
        dense(&mut push, "hidden", &self.hidden);
        dense(&mut push, "output", &self.output);
        entries
    }

    /// Mutable views of every trainable tensor, in registry order.
    fn tensors_mut(&mut self) -> Vec<&mut Vec<f64>> {
        let mut out: Vec<&mut Vec<f64>> = vec![&mut self.input.weights, &mut self.input.bias];
        match &mut self.stage {
            QuantumStage::Identity => {}
            QuantumStage::Parallel([a, b]) => {
                out.push(&mut a.thetas);
                out.push(&mut b.thetas);
            }
            QuantumStage::Projected { down, block, up } => {
                out.push(&mut down.weights);
                out.push(&mut down.bias);
                out.push(&mut block.thetas);
                out.push(&mut up.weights);
                out.push(&mut up.bias);
            }
        }
        out.push(&mut self.hidden.weights);
        out.push(&mut self.hidden.bias);
        out.push(&mut self.output.weights);
        out.push(&mut self.output.bias);
        out
    }

    fn tensors(&self) -> Vec<&[f64]> {
        let mut out: Vec<&[f64]> = vec![&self.input.weights, &self.input.bias];
        match &self.stage {
            QuantumStage::Identity => {}
            QuantumStage::Parallel([a, b]) => {
                out.push(&a.thetas);
                out.push(&b.thetas);
            }
            QuantumStage::Projected { down, block, up } => {
                out.extend([&down.weights[..], &down.bias, &block.thetas, &up.weights, &up.bias]);
            }
        }
        out.extend([&self.hidden.weights[..], &self.hidden.bias, &self.output.weights, &self.output.bias]);
        out
    }

    /// Flat copy of all trainable parameters in registry order.
    pub fn params(&self) -> Vec<f64> {
        self.tensors().concat()
    }

    pub fn set_params(&mut self, flat: &[f64]) -> Result<()> {
        let expected = self.n_params();
        if flat.len() != expected {
            return Err(Error::ShapeMismatch {
                expected,
                got: flat.len(),
                context: "flat parameters",
            });
        }
        let mut offset = 0;
        for t in self.tensors_mut() {
            let n = t.len();
            t.copy_from_slice(&flat[offset..offset + n]);
            offset += n;
        }
        Ok(())
    }

    /// Runs the four hidden activations through the quantum stage.
    pub fn quantum_stage_forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        Ok(self.stage_forward(x)?.0)
    }

    /// Returns `(stage output, projected angles, block output)`.
    fn stage_forward(&self, x: &[f64]) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
        if x.len() != HIDDEN_DIM {
            return Err(Error::ShapeMismatch {
                expected: HIDDEN_DIM,
                got: x.len(),
                context: "quantum stage input",
            });
        }
        match &self.stage {
            QuantumStage::Identity => Ok((x.to_vec(), Vec::new(), Vec::new())),
            QuantumStage::Parallel([a, b]) => {
                let mut out = run_block(&x[..BLOCK_QUBITS], a)?;
                out.extend(run_block(&x[BLOCK_QUBITS..], b)?);
                Ok((out, Vec::new(), Vec::new()))
            }
            QuantumStage::Projected { down, block, up } => {
                let projected = down.forward(x)?;
                let block_out = run_block(&projected, block)?;
                Ok((up.forward(&block_out)?, projected, block_out))
            }
        }
    }

    pub fn forward(&self, x: [f64; 2]) -> Result<ForwardCache> {
        if !(x[0].is_finite() && x[1].is_finite()) {
            return Err(Error::NonFinite(format!("model input {x:?}")));
        }
        let pre_act1 = self.input.forward(&x)?;
        let act1 = self.activation.apply(&pre_act1)?;
        let (stage_out, projected, block_out) = self.stage_forward(&act1)?;
        let pre_act2 = self.hidden.forward(&stage_out)?;
        let act2 = self.activation.apply(&pre_act2)?;
        let logits = self.output.forward(&act2)?;
        Ok(ForwardCache {
            input: x,
            pre_act1,
            act1,
            projected,
            block_out,
            stage_out,
            pre_act2,
            act2,
            logits,
        })
    }

    pub fn logits(&self, x: [f64; 2]) -> Result<Vec<f64>> {
        Ok(self.forward(x)?.logits)
    }

    /// Gradient of `sum(dlogits * logits)` with respect to every parameter,
    /// laid out like [`HybridModel::params`].
    pub fn backward(&self, cache: &ForwardCache, dlogits: &[f64]) -> Result<Vec<f64>> {
        if cache.act1.len() != HIDDEN_DIM || cache.act2.len() != HIDDEN_DIM {
            return Err(Error::ShapeMismatch {
                expected: HIDDEN_DIM,
                got: cache.act1.len(),
                context: "stale forward cache",
            });
        }
        let out_g = self.output.backward(&cache.act2, dlogits)?;
        let d_pre2 = mul(&out_g.d_input, &self.activation.grad(&cache.pre_act2)?);
        let hid_g = self.hidden.backward(&cache.stage_out, &d_pre2)?;
        let d_stage_out = &hid_g.d_input;

        let mut stage_grads: Vec<Vec<f64>> = Vec::new();
        let d_act1 = match &self.stage {
            QuantumStage::Identity => d_stage_out.clone(),
            QuantumStage::Parallel(blocks) => {
                let mut d_in = vec![0.0; HIDDEN_DIM];
                for (b, spec) in blocks.iter().enumerate() {
                    let lo = b * BLOCK_QUBITS;
                    let up = &d_stage_out[lo..lo + BLOCK_QUBITS];
                    let g = block_gradients(&cache.act1[lo..lo + BLOCK_QUBITS], spec)?;
                    let (d_feat, d_theta) = contract(up, &g.d_features, &g.d_thetas);
                    d_in[lo..lo + BLOCK_QUBITS].copy_from_slice(&d_feat);
                    stage_grads.push(d_theta);
                }
                d_in
            }
            QuantumStage::Projected { down, block, up } => {
                if cache.projected.len() != BLOCK_QUBITS {
                    return Err(Error::ShapeMismatch {
                        expected: BLOCK_QUBITS,
                        got: cache.projected.len(),
                        context: "stale forward cache",
                    });
                }
                let up_g = up.backward(&cache.block_out, d_stage_out)?;
                let g = block_gradients(&cache.projected, block)?;
                let (d_feat, d_theta) = contract(&up_g.d_input, &g.d_features, &g.d_thetas);
                let down_g = down.backward(&cache.act1, &d_feat)?;
                stage_grads.extend([down_g.d_weights, down_g.d_bias, d_theta, up_g.d_weights, up_g.d_bias]);
                down_g.d_input
            }
        };
        let d_pre1 = mul(&d_act1, &self.activation.grad(&cache.pre_act1)?);
        let in_g = self.input.backward(&cache.input, &d_pre1)?;

        let mut flat = Vec::with_capacity(self.n_params());
        flat.extend(in_g.d_weights);
        flat.extend(in_g.d_bias);
        for g in stage_grads {
            flat.extend(g);
        }
        flat.extend(hid_g.d_weights);
        flat.extend(hid_g.d_bias);
        flat.extend(out_g.d_weights);
        flat.extend(out_g.d_bias);
        debug_assert_eq!(flat.len(), self.n_params());
        Ok(flat)
    }

    /// Argmax of the logits; ties go to the lowest class index.
    pub fn predict(&self, x: [f64; 2]) -> Result<usize> {
        Ok(argmax(&self.logits(x)?))
    }

    pub fn predict_batch(&self, xs: &[[f64; 2]]) -> Result<Vec<usize>> {
        xs.iter().map(|&x| self.predict(x)).collect()
    }
}

fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

/// Pulls an upstream gradient through the block Jacobians.
fn contract(upstream: &[f64], d_features: &[Vec<f64>], d_thetas: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let n_feat = d_features.first().map_or(0, Vec::len);
    let n_theta = d_thetas.first().map_or(0, Vec::len);
    let mut df = vec![0.0; n_feat];
    let mut dt = vec![0.0; n_theta];
    for (i, &g) in upstream.iter().enumerate() {
        for (d, j) in df.iter_mut().zip(&d_features[i]) {
            *d += g * j;
        }
        for (d, j) in dt.iter_mut().zip(&d_thetas[i]) {
            *d += g * j;
        }
    }
    (df, dt)
}

/// Index of the largest value, preferring the lowest index on ties.
pub fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(variant: Variant) -> ModelConfig {
        ModelConfig {
            seed: 17,
            ..ModelConfig::default()
        }
        .with_variant(variant)
    }

    #[test]
    fn parameter_counts() {
        let t = build_model(&cfg(Variant::TunnElQnn)).unwrap();
        let r = build_model(&cfg(Variant::ReluQnn)).unwrap();
        let c = build_model(&cfg(Variant::ClassicalTdaf)).unwrap();
        assert_eq!(t.n_params(), 59);
        assert_eq!(r.n_params(), 59);
        assert_eq!(c.n_params(), 47);
        assert_eq!(t.params().len(), 59);
        assert!(c.registry().iter().all(|e| !e.name.starts_with("quantum")));
    }

    #[test]
    fn registry_is_contiguous() {
        for wiring in [QuantumWiring::ParallelBlocks, QuantumWiring::ProjectedSingle] {
            let m = build_model(&ModelConfig {
                quantum_wiring: wiring,
                ..cfg(Variant::TunnElQnn)
            })
            .unwrap();
            let mut next = 0;
            for e in m.registry() {
                assert_eq!(e.offset, next);
                next += e.len();
            }
            assert_eq!(next, m.params().len());
        }
    }

    #[test]
    fn variants_share_initialization_stream() {
        let t = build_model(&cfg(Variant::TunnElQnn)).unwrap();
        let r = build_model(&cfg(Variant::ReluQnn)).unwrap();
        let c = build_model(&cfg(Variant::ClassicalTdaf)).unwrap();
        assert_eq!(t.params(), r.params());
        assert_eq!(t.registry(), r.registry());
        assert_eq!(t.input, c.input);
        assert_eq!(t.hidden, c.hidden);
        assert_eq!(t.output, c.output);
    }

    #[test]
    fn zero_quantum_layers_rejected() {
        let bad = ModelConfig {
            quantum_layers: 0,
            ..cfg(Variant::TunnElQnn)
        };
        assert!(build_model(&bad).is_err());
        let classical = ModelConfig {
            quantum_layers: 0,
            ..cfg(Variant::ClassicalTdaf)
        };
        assert!(build_model(&classical).is_ok());
    }

    #[test]
    fn set_params_round_trip() {
        let mut m = build_model(&cfg(Variant::TunnElQnn)).unwrap();
        let p: Vec<f64> = (0..m.n_params()).map(|i| i as f64 * 0.01).collect();
        m.set_params(&p).unwrap();
        assert_eq!(m.params(), p);
        assert!(m.set_params(&p[1..]).is_err());
    }

    #[test]
    fn quantum_stage_zero_state() {
        let mut m = build_model(&cfg(Variant::TunnElQnn)).unwrap();
        let mut p = m.params();
        for e in m.registry().to_vec() {
            if e.name.contains("theta") {
                p[e.range()].fill(0.0);
            }
        }
        m.set_params(&p).unwrap();
        assert_eq!(m.quantum_stage_forward(&[0.0; 4]).unwrap(), vec![1.0; 4]);
    }

    #[test]
    fn zero_weights_give_output_bias() {
        let mut m = build_model(&cfg(Variant::TunnElQnn)).unwrap();
        let mut p = vec![0.0; m.n_params()];
        let out_bias = m.registry().iter().find(|e| e.name == "output.bias").unwrap().range();
        p[out_bias.clone()].copy_from_slice(&[0.3, -0.2, 0.7]);
        m.set_params(&p).unwrap();
        assert_eq!(m.logits([0.4, -1.3]).unwrap(), vec![0.3, -0.2, 0.7]);
    }

    #[test]
    fn forward_is_deterministic() {
        let m = build_model(&cfg(Variant::TunnElQnn)).unwrap();
        let a = m.logits([0.2, 0.9]).unwrap();
        let b = m.logits([0.2, 0.9]).unwrap();
        assert_eq!(a.iter().map(|v| v.to_bits()).collect::<Vec<_>>(), b.iter().map(|v| v.to_bits()).collect::<Vec<_>>());
    }

    #[test]
    fn zero_upstream_gives_zero_gradient() {
        for v in Variant::ALL {
            let m = build_model(&cfg(v)).unwrap();
            let cache = m.forward([0.5, -0.5]).unwrap();
            let g = m.backward(&cache, &[0.0; 3]).unwrap();
            assert_eq!(g.len(), m.n_params());
            assert!(g.iter().all(|&x| x == 0.0));
        }
    }

    #[test]
    fn stale_cache_rejected() {
        let m = build_model(&cfg(Variant::TunnElQnn)).unwrap();
        let mut cache = m.forward([0.5, -0.5]).unwrap();
        cache.act1.pop();
        assert!(m.backward(&cache, &[0.0; 3]).is_err());
    }

    #[test]
    fn argmax_tie_breaks_low() {
        assert_eq!(argmax(&[0.1, 0.9, 0.3]), 1);
        assert_eq!(argmax(&[1.0, 1.0, 0.0]), 0);
        assert_eq!(argmax(&[0.0, 2.0, 2.0]), 1);
    }

    #[test]
    fn batch_predict_matches_single() {
        let m = build_model(&cfg(Variant::ReluQnn)).unwrap();
        let xs = [[0.0, 0.0], [1.0, -1.0], [-2.0, 0.5]];
        let batch = m.predict_batch(&xs).unwrap();
        for (x, p) in xs.iter().zip(batch) {
            assert_eq!(m.predict(*x).unwrap(), p);
        }
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("TunnElQNN".parse::<Variant>().unwrap(), Variant::TunnElQnn);
        assert_eq!("relu".parse::<Variant>().unwrap(), Variant::ReluQnn);
        assert_eq!("ClassicalTDAF".parse::<Variant>().unwrap(), Variant::ClassicalTdaf);
        assert!("cnn".parse::<Variant>().is_err());
    }
}
