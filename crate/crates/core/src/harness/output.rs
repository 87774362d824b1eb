//! CSV and JSON writers for run artifacts.
//!
//! Floats are printed with `Display`, which yields the shortest decimal that
//! parses back to the same `f64`. Together with sorted JSON keys this makes
//! every file a pure function of the run configuration.

use serde::Serialize;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use super::{BoundaryGrid, DepthRow, Evaluation, MetricsLog, ShiftRow};
use crate::data::CLASS_NAMES;
use crate::error::Result;
use crate::tdaf::IvPoint;

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    Ok(BufWriter::new(File::create(path)?))
}

/// `epoch,loss,train_acc`
pub fn write_metrics_csv(path: &Path, log: &MetricsLog) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "epoch,loss,train_acc")?;
    for e in &log.epochs {
        writeln!(w, "{},{},{}", e.epoch, e.loss, e.train_accuracy)?;
    }
    w.flush()?;
    Ok(())
}

/// Rows are true classes, columns predicted classes.
pub fn write_confusion_csv(path: &Path, eval: &Evaluation) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "true,{}", CLASS_NAMES.join(","))?;
    for (name, row) in CLASS_NAMES.iter().zip(&eval.confusion) {
        let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        writeln!(w, "{name},{}", cells.join(","))?;
    }
    w.flush()?;
    Ok(())
}

/// `gx,gy,pred`, one row per lattice point.
pub fn write_boundary_csv(path: &Path, grid: &BoundaryGrid) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "gx,gy,pred")?;
    for (iy, y) in grid.ys.iter().enumerate() {
        for (ix, x) in grid.xs.iter().enumerate() {
            writeln!(w, "{x},{y},{}", grid.label_at(ix, iy))?;
        }
    }
    w.flush()?;
    Ok(())
}

/// `knob,mean_acc,std_acc`
pub fn write_sweep_csv(path: &Path, rows: &[DepthRow]) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "knob,mean_acc,std_acc")?;
    for r in rows {
        writeln!(w, "{},{},{}", r.layers, r.mean, r.std)?;
    }
    w.flush()?;
    Ok(())
}

/// `knob,trial,seed,test_acc`, the raw numbers behind `sweep.csv`.
pub fn write_trials_csv(path: &Path, rows: &[DepthRow]) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "knob,trial,seed,test_acc")?;
    for r in rows {
        for (t, (seed, acc)) in r.seeds.iter().zip(&r.accuracies).enumerate() {
            writeln!(w, "{},{t},{seed},{acc}", r.layers)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// `shift,variant,test_acc`
pub fn write_shift_csv(path: &Path, rows: &[ShiftRow]) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "shift,variant,test_acc")?;
    for r in rows {
        writeln!(w, "{},{},{}", r.shift, r.run.variant, r.run.metrics.test_accuracy)?;
    }
    w.flush()?;
    Ok(())
}

/// `V,I,dIdV`
pub fn write_iv_csv(path: &Path, rows: &[IvPoint]) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "V,I,dIdV")?;
    for p in rows {
        writeln!(w, "{},{},{}", p.voltage, p.current, p.conductance)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut w = create(path)?;
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(())
}
