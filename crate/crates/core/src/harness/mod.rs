//! Training loop, metrics and experiment sweeps.
//!
//! A run is fully determined by its [`TrainConfig`]. Independent RNG streams
//! are derived from `TrainConfig::seed` for data generation, the train/test
//! split and per-epoch shuffling; `model.seed` drives initialization.

pub mod commands;
pub mod output;
mod sweep;

pub use sweep::{compare, depth_sweep, shift_sweep, CompareReport, DepthRow, RunReport, ShiftRow};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

use crate::data::{generate_half_circles, split, standardize, DataConfig, Dataset, ScalingStats, N_CLASSES};
use crate::error::{Error, Result};
use crate::model::{HybridModel, ModelConfig};
use crate::nn::{softmax_cross_entropy, AdamState};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainConfig {
    pub epochs: usize,
    pub batch_size: usize,
    pub lr: f64,
    pub seed: u64,
    pub model: ModelConfig,
    pub data: DataConfig,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            epochs: 150,
            batch_size: 128,
            lr: AdamState::DEFAULT_LR,
            seed: 0,
            model: ModelConfig::default(),
            data: DataConfig::default(),
        }
    }
}

impl TrainConfig {
    /// Sets both the run seed and the initialization seed.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self.model.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.epochs == 0 {
            return Err(Error::Config("epochs must be at least 1".into()));
        }
        if self.batch_size == 0 {
            return Err(Error::Config("batch_size must be at least 1".into()));
        }
        if !(self.lr >= 0.0) || !self.lr.is_finite() {
            return Err(Error::Config(format!("lr must be finite and >= 0, got {}", self.lr)));
        }
        self.model.validate()
    }
}

/// splitmix64 finalizer; gives each consumer of the run seed its own stream.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed.wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const SPLIT_STREAM: u64 = 1;
const SHUFFLE_STREAM: u64 = 2;

/// Generated data after splitting and standardization.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparedData {
    pub full: Dataset,
    pub raw_train: Dataset,
    pub raw_test: Dataset,
    pub train: Dataset,
    pub test: Dataset,
    pub stats: ScalingStats,
}

pub fn prepare_data(data: &DataConfig, seed: u64) -> Result<PreparedData> {
    let full = generate_half_circles(data.n, data.shift, data.noise_sigma, seed)?;
    let (train_raw, test_raw) = split(&full, data.train_fraction, derive_seed(seed, SPLIT_STREAM))?;
    let (train, test, stats) = standardize(&train_raw, &test_raw)?;
    Ok(PreparedData {
        full,
        raw_train: train_raw,
        raw_test: test_raw,
        train,
        test,
        stats,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpochMetrics {
    pub epoch: usize,
    pub loss: f64,
    pub train_accuracy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsLog {
    pub epochs: Vec<EpochMetrics>,
    pub test_accuracy: f64,
    pub wall_clock_seconds: f64,
}

impl MetricsLog {
    pub fn final_train_accuracy(&self) -> f64 {
        self.epochs.last().map_or(0.0, |e| e.train_accuracy)
    }

    /// Mean loss over the first and last `window` epochs.
    pub fn loss_window_means(&self, window: usize) -> (f64, f64) {
        let w = window.min(self.epochs.len()).max(1);
        let mean = |s: &[EpochMetrics]| s.iter().map(|e| e.loss).sum::<f64>() / s.len() as f64;
        (mean(&self.epochs[..w]), mean(&self.epochs[self.epochs.len() - w..]))
    }
}

pub struct TrainOutcome {
    pub model: HybridModel,
    pub metrics: MetricsLog,
    pub data: PreparedData,
    pub evaluation: Evaluation,
}

/// Loss and flat gradient for one sample.
pub fn sample_loss_grad(model: &HybridModel, x: [f64; 2], label: usize) -> Result<(f64, Vec<f64>, bool)> {
    let cache = model.forward(x)?;
    let correct = crate::model::argmax(&cache.logits) == label;
    let (loss, dlogits) = softmax_cross_entropy(&cache.logits, label)?;
    let grad = model.backward(&cache, &dlogits)?;
    Ok((loss, grad, correct))
}

/// Trains on already prepared data. Each epoch reshuffles the training set,
/// walks it in mini-batches (the last one may be short), averages per-sample
/// gradients in sample order and takes one Adam step per batch. Logged loss
/// and accuracy are running values over the epoch.
pub fn train_on(config: &TrainConfig, data: &PreparedData) -> Result<(HybridModel, MetricsLog)> {
    config.validate()?;
    let start = Instant::now();
    let mut model = HybridModel::new(config.model.clone())?;
    let mut params = model.params();
    let mut adam = AdamState::new(params.len(), config.lr);
    let mut shuffle_rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, SHUFFLE_STREAM));
    let train = &data.train;
    if train.is_empty() {
        return Err(Error::Config("training set is empty".into()));
    }
    let mut order: Vec<usize> = (0..train.len()).collect();
    let mut epochs = Vec::with_capacity(config.epochs);

    for epoch in 1..=config.epochs {
        order.shuffle(&mut shuffle_rng);
        let mut loss_sum = 0.0;
        let mut correct = 0usize;
        for batch in order.chunks(config.batch_size) {
            let per_sample: Vec<(f64, Vec<f64>, bool)> = batch
                .par_iter()
                .map(|&i| sample_loss_grad(&model, train.points[i], train.labels[i]))
                .collect::<Result<_>>()?;
            let mut grad = vec![0.0; params.len()];
            for (loss, g, ok) in &per_sample {
                loss_sum += loss;
                correct += usize::from(*ok);
                for (acc, v) in grad.iter_mut().zip(g) {
                    *acc += v;
                }
            }
            let scale = 1.0 / batch.len() as f64;
            grad.iter_mut().for_each(|v| *v *= scale);
            adam.step(&mut params, &grad)?;
            model.set_params(&params)?;
        }
        epochs.push(EpochMetrics {
            epoch,
            loss: loss_sum / train.len() as f64,
            train_accuracy: correct as f64 / train.len() as f64,
        });
    }

    let test_accuracy = if data.test.is_empty() {
        0.0
    } else {
        evaluate(&model, &data.test)?.accuracy
    };
    Ok((
        model,
        MetricsLog {
            epochs,
            test_accuracy,
            wall_clock_seconds: start.elapsed().as_secs_f64(),
        },
    ))
}

/// Generates the data for `config`, trains, and evaluates on the test split.
pub fn train(config: &TrainConfig) -> Result<TrainOutcome> {
    config.validate()?;
    let data = prepare_data(&config.data, config.seed)?;
    let (model, metrics) = train_on(config, &data)?;
    let evaluation = evaluate(&model, &data.test)?;
    Ok(TrainOutcome {
        model,
        metrics,
        data,
        evaluation,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub accuracy: f64,
    /// `confusion[true][predicted]`.
    pub confusion: [[usize; N_CLASSES]; N_CLASSES],
}

pub fn evaluate(model: &HybridModel, dataset: &Dataset) -> Result<Evaluation> {
    if dataset.is_empty() {
        return Err(Error::InvalidParameter("cannot evaluate on an empty dataset".into()));
    }
    let preds: Vec<usize> = dataset
        .points
        .par_iter()
        .map(|&p| model.predict(p))
        .collect::<Result<_>>()?;
    let mut confusion = [[0usize; N_CLASSES]; N_CLASSES];
    for (&t, &p) in dataset.labels.iter().zip(&preds) {
        confusion[t][p] += 1;
    }
    let hits: usize = (0..N_CLASSES).map(|k| confusion[k][k]).sum();
    Ok(Evaluation {
        accuracy: hits as f64 / dataset.len() as f64,
        confusion,
    })
}

/// Axis-aligned box in raw (unscaled) data coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl BoundingBox {
    pub const DEFAULT_PADDING: f64 = 0.5;

    pub fn around(data: &Dataset, padding: f64) -> Result<Self> {
        let [min_x, min_y, max_x, max_y] = data
            .bounds()
            .ok_or_else(|| Error::InvalidParameter("empty dataset has no bounds".into()))?;
        Ok(Self {
            min_x: min_x - padding,
            min_y: min_y - padding,
            max_x: max_x + padding,
            max_y: max_y + padding,
        })
    }
}

/// Predicted labels on a `resolution x resolution` lattice, row-major with
/// `y` as the outer index.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryGrid {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub labels: Vec<usize>,
}

impl BoundaryGrid {
    pub fn resolution(&self) -> usize {
        self.xs.len()
    }

    pub fn label_at(&self, ix: usize, iy: usize) -> usize {
        self.labels[iy * self.xs.len() + ix]
    }
}

fn lattice(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|k| if k == n - 1 { hi } else { lo + step * k as f64 })
        .collect()
}

/// Classifies each lattice point of `bbox` after mapping it through `stats`.
pub fn decision_boundary(
    model: &HybridModel,
    stats: &ScalingStats,
    bbox: &BoundingBox,
    resolution: usize,
) -> Result<BoundaryGrid> {
    if resolution < 2 {
        return Err(Error::InvalidParameter(format!(
            "grid resolution must be at least 2, got {resolution}"
        )));
    }
    let finite = [bbox.min_x, bbox.min_y, bbox.max_x, bbox.max_y]
        .iter()
        .all(|v| v.is_finite());
    if !finite || !(bbox.max_x > bbox.min_x) || !(bbox.max_y > bbox.min_y) {
        return Err(Error::InvalidParameter(format!("degenerate bounding box {bbox:?}")));
    }
    let xs = lattice(bbox.min_x, bbox.max_x, resolution);
    let ys = lattice(bbox.min_y, bbox.max_y, resolution);
    let labels = (0..resolution * resolution)
        .into_par_iter()
        .map(|k| {
            let p = [xs[k % resolution], ys[k / resolution]];
            model.predict(stats.apply(p))
        })
        .collect::<Result<_>>()?;
    Ok(BoundaryGrid { xs, ys, labels })
}

/// Mean and sample standard deviation (zero for fewer than two values).
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_model, Variant};

    fn small_config() -> TrainConfig {
        TrainConfig {
            epochs: 2,
            batch_size: 16,
            data: DataConfig {
                n: 60,
                ..DataConfig::default()
            },
            ..TrainConfig::default()
        }
        .with_seed(5)
    }

    #[test]
    fn zero_epochs_rejected() {
        let cfg = TrainConfig {
            epochs: 0,
            ..small_config()
        };
        assert!(train(&cfg).is_err());
        let cfg = TrainConfig {
            batch_size: 0,
            ..small_config()
        };
        assert!(train(&cfg).is_err());
    }

    #[test]
    fn zero_learning_rate_keeps_initial_model() {
        let cfg = TrainConfig {
            lr: 0.0,
            ..small_config()
        };
        let out = train(&cfg).unwrap();
        let init = build_model(&cfg.model).unwrap();
        assert_eq!(out.model.params(), init.params());
        assert_eq!(
            out.evaluation,
            evaluate(&init, &out.data.test).unwrap()
        );
    }

    #[test]
    fn one_log_row_per_epoch() {
        let out = train(&small_config()).unwrap();
        assert_eq!(out.metrics.epochs.len(), 2);
        for (i, e) in out.metrics.epochs.iter().enumerate() {
            assert_eq!(e.epoch, i + 1);
            assert!((0.0..=1.0).contains(&e.train_accuracy));
            assert!(e.loss > 0.0);
        }
    }

    #[test]
    fn confusion_rows_match_class_counts() {
        let out = train(&small_config()).unwrap();
        let counts = out.data.test.class_counts();
        for (k, row) in out.evaluation.confusion.iter().enumerate() {
            assert_eq!(row.iter().sum::<usize>(), counts[k]);
        }
    }

    #[test]
    fn constant_predictor_fills_first_column() {
        let mut m = build_model(&ModelConfig::default().with_variant(Variant::ClassicalTdaf)).unwrap();
        let mut p = vec![0.0; m.n_params()];
        let bias = m.registry().iter().find(|e| e.name == "output.bias").unwrap().range();
        p[bias].copy_from_slice(&[1.0, 0.0, 0.0]);
        m.set_params(&p).unwrap();
        let data = crate::data::generate_half_circles(30, 1.5, 0.1, 1).unwrap();
        let ev = evaluate(&m, &data).unwrap();
        assert_eq!(ev.confusion, [[10, 0, 0], [10, 0, 0], [10, 0, 0]]);
        assert!((ev.accuracy - 1.0 / 3.0).abs() < 1e-15);

        let stats = ScalingStats::fit(&data).unwrap();
        let bbox = BoundingBox::around(&data, 0.5).unwrap();
        let grid = decision_boundary(&m, &stats, &bbox, 7).unwrap();
        assert_eq!(grid.resolution(), 7);
        assert_eq!(grid.labels.len(), 49);
        assert!(grid.labels.iter().all(|&l| l == 0));
    }

    #[test]
    fn boundary_rejects_degenerate_input() {
        let m = build_model(&ModelConfig::default()).unwrap();
        let stats = ScalingStats {
            mean: [0.0; 2],
            std: [1.0; 2],
        };
        let flat = BoundingBox {
            min_x: 0.0,
            min_y: 0.0,
            max_x: 0.0,
            max_y: 1.0,
        };
        assert!(decision_boundary(&m, &stats, &flat, 10).is_err());
        let ok = BoundingBox { max_x: 1.0, ..flat };
        assert!(decision_boundary(&m, &stats, &ok, 1).is_err());
    }

    #[test]
    fn mean_std_examples() {
        assert_eq!(mean_std(&[0.5, 0.5, 0.5]), (0.5, 0.0));
        let (m, s) = mean_std(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn derived_seeds_differ_per_stream() {
        assert_ne!(derive_seed(0, SPLIT_STREAM), derive_seed(0, SHUFFLE_STREAM));
        assert_eq!(derive_seed(9, 1), derive_seed(9, 1));
    }
}
