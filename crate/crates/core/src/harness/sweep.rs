use rayon::prelude::*;

use super::{
    decision_boundary, evaluate, mean_std, prepare_data, train_on, BoundaryGrid, BoundingBox,
    Evaluation, MetricsLog, TrainConfig,
};
use crate::error::{Error, Result};
use crate::model::Variant;

/// Test accuracy statistics for one quantum depth.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthRow {
    pub layers: usize,
    pub seeds: Vec<u64>,
    pub accuracies: Vec<f64>,
    pub mean: f64,
    pub std: f64,
    /// Full training log of each trial, in trial order.
    pub logs: Vec<MetricsLog>,
}

/// Trains `trials` seeds (`base.seed + t`) for every depth in `layer_counts`.
/// Trials run concurrently but results are gathered in (depth, trial) order.
pub fn depth_sweep(base: &TrainConfig, layer_counts: &[usize], trials: usize) -> Result<Vec<DepthRow>> {
    if trials < 2 {
        return Err(Error::Config(format!("depth sweep needs at least 2 trials, got {trials}")));
    }
    if layer_counts.is_empty() {
        return Err(Error::Config("depth sweep needs at least one layer count".into()));
    }
    let jobs: Vec<(usize, u64)> = layer_counts
        .iter()
        .flat_map(|&l| (0..trials as u64).map(move |t| (l, base.seed.wrapping_add(t))))
        .collect();
    let logs: Vec<MetricsLog> = jobs
        .par_iter()
        .map(|&(layers, seed)| {
            let mut cfg = base.clone().with_seed(seed);
            cfg.model.quantum_layers = layers;
            let data = prepare_data(&cfg.data, cfg.seed)?;
            Ok(train_on(&cfg, &data)?.1)
        })
        .collect::<Result<_>>()?;
    Ok(layer_counts
        .iter()
        .zip(logs.chunks(trials))
        .zip(jobs.chunks(trials))
        .map(|((&layers, l), j)| {
            let accuracies: Vec<f64> = l.iter().map(|m| m.test_accuracy).collect();
            let (mean, std) = mean_std(&accuracies);
            DepthRow {
                layers,
                seeds: j.iter().map(|&(_, s)| s).collect(),
                accuracies,
                mean,
                std,
                logs: l.to_vec(),
            }
        })
        .collect())
}

/// One trained variant with its metrics, confusion matrix and boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub variant: Variant,
    pub metrics: MetricsLog,
    pub evaluation: Evaluation,
    pub boundary: BoundaryGrid,
}

fn run_variants(base: &TrainConfig, variants: &[Variant], grid: usize) -> Result<Vec<RunReport>> {
    base.validate()?;
    let data = prepare_data(&base.data, base.seed)?;
    let bbox = BoundingBox::around(&data.full, BoundingBox::DEFAULT_PADDING)?;
    variants
        .par_iter()
        .map(|&variant| {
            let mut cfg = base.clone();
            cfg.model.variant = variant;
            let (model, metrics) = train_on(&cfg, &data)?;
            let evaluation = evaluate(&model, &data.test)?;
            let boundary = decision_boundary(&model, &data.stats, &bbox, grid)?;
            Ok(RunReport {
                variant,
                metrics,
                evaluation,
                boundary,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftRow {
    pub shift: f64,
    pub run: RunReport,
}

/// Trains every variant on every shift with the same seeds.
pub fn shift_sweep(
    base: &TrainConfig,
    shifts: &[f64],
    variants: &[Variant],
    grid: usize,
) -> Result<Vec<ShiftRow>> {
    if shifts.is_empty() || variants.is_empty() {
        return Err(Error::Config("shift sweep needs shifts and variants".into()));
    }
    let per_shift: Vec<Vec<RunReport>> = shifts
        .par_iter()
        .map(|&shift| {
            let mut cfg = base.clone();
            cfg.data.shift = shift;
            run_variants(&cfg, variants, grid)
        })
        .collect::<Result<_>>()?;
    Ok(shifts
        .iter()
        .zip(per_shift)
        .flat_map(|(&shift, runs)| runs.into_iter().map(move |run| ShiftRow { shift, run }))
        .collect())
}

/// TunnElQNN against ReLUQNN on one shared split.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub config: TrainConfig,
    pub runs: Vec<RunReport>,
}

pub fn compare(base: &TrainConfig, grid: usize) -> Result<CompareReport> {
    let runs = run_variants(base, &[Variant::TunnElQnn, Variant::ReluQnn], grid)?;
    Ok(CompareReport {
        config: base.clone(),
        runs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::DataConfig;

    fn tiny() -> TrainConfig {
        TrainConfig {
            epochs: 1,
            batch_size: 32,
            data: DataConfig {
                n: 45,
                ..DataConfig::default()
            },
            ..TrainConfig::default()
        }
        .with_seed(3)
    }

    #[test]
    fn depth_sweep_shape_and_recount() {
        let rows = depth_sweep(&tiny(), &[1, 2], 2).unwrap();
        assert_eq!(rows.len(), 2);
        for r in &rows {
            assert_eq!(r.accuracies.len(), 2);
            assert_eq!(r.seeds, vec![3, 4]);
            let (m, s) = mean_std(&r.accuracies);
            assert_eq!((m, s), (r.mean, r.std));
        }
        assert!(depth_sweep(&tiny(), &[1], 1).is_err());
    }

    #[test]
    fn compare_has_two_variants() {
        let report = compare(&tiny(), 4).unwrap();
        let names: Vec<_> = report.runs.iter().map(|r| r.variant).collect();
        assert_eq!(names, vec![Variant::TunnElQnn, Variant::ReluQnn]);
    }

    #[test]
    fn shift_sweep_rows() {
        let rows = shift_sweep(&tiny(), &[0.2, 3.0], &[Variant::TunnElQnn, Variant::ClassicalTdaf], 3).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[1].shift, 0.2);
        assert_eq!(rows[1].run.variant, Variant::ClassicalTdaf);
        assert_eq!(rows[2].shift, 3.0);
    }
}
