//! File-producing entry points behind each CLI subcommand.
//!
//! Every command writes into `out_dir` and nothing else. Wall-clock time is
//! left out of `result.json` unless `record_timing` is set, so repeated runs
//! with the same seed produce byte-identical directories.

use serde_json::{json, Value};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use super::output::{
    write_boundary_csv, write_confusion_csv, write_iv_csv, write_json, write_metrics_csv,
    write_shift_csv, write_sweep_csv, write_text, write_trials_csv,
};
use super::{
    compare, decision_boundary, depth_sweep, evaluate, prepare_data, shift_sweep, train,
    BoundingBox, MetricsLog, RunReport, TrainConfig,
};
use crate::error::Result;
use crate::model::{Checkpoint, Variant};
use crate::tdaf::{iv_curve, TdafParams};

pub const DEFAULT_GRID: usize = 200;
pub const DEFAULT_TRIALS: usize = 5;
pub const DEFAULT_SHIFTS: [f64; 3] = [0.2, 1.0, 3.0];

#[derive(Debug, Clone, PartialEq)]
pub struct OutputOptions {
    pub out_dir: PathBuf,
    pub grid: usize,
    pub record_timing: bool,
}

impl OutputOptions {
    pub fn new(out_dir: impl Into<PathBuf>) -> Self {
        Self {
            out_dir: out_dir.into(),
            grid: DEFAULT_GRID,
            record_timing: false,
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }

    fn finish(&self, mut summary: Value, started: Instant) -> Result<()> {
        if self.record_timing {
            summary["runtime_seconds"] = json!(started.elapsed().as_secs_f64());
        }
        write_json(&self.path("result.json"), &summary)
    }
}

fn metrics_summary(log: &MetricsLog) -> Value {
    json!({
        "final_train_accuracy": log.final_train_accuracy(),
        "final_train_loss": log.epochs.last().map(|e| e.loss),
        "test_accuracy": log.test_accuracy,
    })
}

/// Writes `data.csv` (all points) plus the raw `train.csv` / `test.csv` split.
pub fn gen_data(config: &TrainConfig, opts: &OutputOptions) -> Result<()> {
    let started = Instant::now();
    let data = prepare_data(&config.data, config.seed)?;
    fs::create_dir_all(&opts.out_dir)?;
    for (name, set) in [("data.csv", &data.full), ("train.csv", &data.raw_train), ("test.csv", &data.raw_test)] {
        let mut buf = Vec::new();
        set.write_csv(&mut buf)?;
        fs::write(opts.path(name), buf)?;
    }
    opts.finish(
        json!({
            "command": "gen-data",
            "config": config,
            "class_counts": data.full.class_counts(),
            "train_size": data.train.len(),
            "test_size": data.test.len(),
            "scaling": data.stats,
        }),
        started,
    )
}

/// Writes `iv.csv` with the raw diode curve (`V,I,dIdV`, gain not applied).
pub fn iv_curve_cmd(params: &TdafParams, start: f64, end: f64, points: usize, opts: &OutputOptions) -> Result<()> {
    let rows = iv_curve(params, start, end, points)?;
    write_iv_csv(&opts.path("iv.csv"), &rows)
}

pub fn train_cmd(config: &TrainConfig, opts: &OutputOptions) -> Result<()> {
    let started = Instant::now();
    let out = train(config)?;
    write_metrics_csv(&opts.path("metrics.csv"), &out.metrics)?;
    write_confusion_csv(&opts.path("confusion.csv"), &out.evaluation)?;
    let ck = Checkpoint::from_model(&out.model, Some(out.data.stats));
    write_text(&opts.path("model.json"), &(ck.to_json()? + "\n"))?;
    opts.finish(
        json!({
            "command": "train",
            "config": config,
            "metrics": metrics_summary(&out.metrics),
            "confusion": out.evaluation.confusion,
            "n_params": out.model.n_params(),
        }),
        started,
    )
}

fn load_checkpoint(path: &Path) -> Result<Checkpoint> {
    Checkpoint::from_json(&fs::read_to_string(path)?)
}

/// Evaluates a saved model on the test split regenerated from `config`.
pub fn eval_cmd(config: &TrainConfig, checkpoint: &Path, opts: &OutputOptions) -> Result<()> {
    let started = Instant::now();
    let ck = load_checkpoint(checkpoint)?;
    let model = ck.to_model()?;
    let data = prepare_data(&config.data, config.seed)?;
    let stats = ck.scaling.unwrap_or(data.stats);
    let test = stats.apply_all(&data.raw_test);
    let ev = evaluate(&model, &test)?;
    write_confusion_csv(&opts.path("confusion.csv"), &ev)?;
    opts.finish(
        json!({
            "command": "eval",
            "config": config,
            "model": ck.config,
            "test_accuracy": ev.accuracy,
            "confusion": ev.confusion,
        }),
        started,
    )
}

/// Writes `boundary.csv` for a saved model over the padded data bounds.
pub fn boundary_cmd(config: &TrainConfig, checkpoint: &Path, opts: &OutputOptions) -> Result<()> {
    let ck = load_checkpoint(checkpoint)?;
    let model = ck.to_model()?;
    let data = prepare_data(&config.data, config.seed)?;
    let stats = ck.scaling.unwrap_or(data.stats);
    let bbox = BoundingBox::around(&data.full, BoundingBox::DEFAULT_PADDING)?;
    let grid = decision_boundary(&model, &stats, &bbox, opts.grid)?;
    write_boundary_csv(&opts.path("boundary.csv"), &grid)
}

fn write_run(dir: &Path, run: &RunReport) -> Result<()> {
    write_metrics_csv(&dir.join("metrics.csv"), &run.metrics)?;
    write_confusion_csv(&dir.join("confusion.csv"), &run.evaluation)?;
    write_boundary_csv(&dir.join("boundary.csv"), &run.boundary)
}

/// One subdirectory per variant plus a side-by-side `result.json`.
pub fn compare_cmd(config: &TrainConfig, opts: &OutputOptions) -> Result<()> {
    let started = Instant::now();
    let report = compare(config, opts.grid)?;
    let mut runs = serde_json::Map::new();
    for run in &report.runs {
        write_run(&opts.path(run.variant.name()), run)?;
        let mut s = metrics_summary(&run.metrics);
        s["confusion"] = json!(run.evaluation.confusion);
        runs.insert(run.variant.name().to_string(), s);
    }
    opts.finish(
        json!({
            "command": "compare",
            "config": config,
            "runs": runs,
        }),
        started,
    )
}

pub fn sweep_depth_cmd(config: &TrainConfig, layers: &[usize], trials: usize, opts: &OutputOptions) -> Result<()> {
    let started = Instant::now();
    let rows = depth_sweep(config, layers, trials)?;
    write_sweep_csv(&opts.path("sweep.csv"), &rows)?;
    write_trials_csv(&opts.path("trials.csv"), &rows)?;
    let table: Vec<Value> = rows
        .iter()
        .map(|r| json!({ "layers": r.layers, "mean_acc": r.mean, "std_acc": r.std, "accuracies": r.accuracies }))
        .collect();
    opts.finish(
        json!({
            "command": "sweep-depth",
            "config": config,
            "trials": trials,
            "rows": table,
        }),
        started,
    )
}

pub fn sweep_shift_cmd(config: &TrainConfig, shifts: &[f64], variants: &[Variant], opts: &OutputOptions) -> Result<()> {
    let started = Instant::now();
    let rows = shift_sweep(config, shifts, variants, opts.grid)?;
    write_shift_csv(&opts.path("accuracy.csv"), &rows)?;
    let mut table = Vec::new();
    for r in &rows {
        let dir = opts.path(&format!("shift_{}", r.shift)).join(r.run.variant.name());
        write_run(&dir, &r.run)?;
        table.push(json!({
            "shift": r.shift,
            "variant": r.run.variant,
            "test_acc": r.run.metrics.test_accuracy,
            "final_train_acc": r.run.metrics.final_train_accuracy(),
        }));
    }
    opts.finish(
        json!({
            "command": "sweep-shift",
            "config": config,
            "rows": table,
        }),
        started,
    )
}
