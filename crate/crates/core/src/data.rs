//! Three-class interleaving half-circles.
//!
//! Class `k` lives on a unit semicircle shifted right by `k * shift`. Even
//! classes use the upper arc `(cos t, sin t)`; odd classes use the flipped arc
//! `(cos t, 0.5 - sin t)`, so neighbouring classes interleave like the classic
//! two-moons pair.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

pub const N_CLASSES: usize = 3;
pub const CLASS_NAMES: [&str; N_CLASSES] = ["P", "C", "R"];

/// Generation parameters for [`generate_half_circles`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DataConfig {
    pub n: usize,
    pub shift: f64,
    pub noise_sigma: f64,
    pub train_fraction: f64,
}

impl Default for DataConfig {
    fn default() -> Self {
        Self {
            n: 2000,
            shift: 1.5,
            noise_sigma: 0.1,
            train_fraction: 0.8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub points: Vec<[f64; 2]>,
    pub labels: Vec<usize>,
    pub shift: f64,
    pub noise_sigma: f64,
    pub seed: u64,
}

impl Dataset {
    pub fn new(points: Vec<[f64; 2]>, labels: Vec<usize>) -> Result<Self> {
        if points.len() != labels.len() {
            return Err(Error::ShapeMismatch {
                expected: points.len(),
                got: labels.len(),
                context: "dataset labels",
            });
        }
        if let Some(&label) = labels.iter().find(|&&l| l >= N_CLASSES) {
            return Err(Error::LabelOutOfRange {
                label,
                classes: N_CLASSES,
            });
        }
        Ok(Self {
            points,
            labels,
            shift: f64::NAN,
            noise_sigma: f64::NAN,
            seed: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn class_counts(&self) -> [usize; N_CLASSES] {
        let mut counts = [0; N_CLASSES];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    fn subset(&self, indices: &[usize]) -> Self {
        Self {
            points: indices.iter().map(|&i| self.points[i]).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            shift: self.shift,
            noise_sigma: self.noise_sigma,
            seed: self.seed,
        }
    }

    /// `(min_x, min_y, max_x, max_y)`.
    pub fn bounds(&self) -> Option<[f64; 4]> {
        let first = self.points.first()?;
        let mut b = [first[0], first[1], first[0], first[1]];
        for p in &self.points {
            b[0] = b[0].min(p[0]);
            b[1] = b[1].min(p[1]);
            b[2] = b[2].max(p[0]);
            b[3] = b[3].max(p[1]);
        }
        Some(b)
    }

    /// Writes `x,y,label` rows under a one-line header. Floats use the
    /// shortest representation that parses back to the same value.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "x,y,label")?;
        for (p, l) in self.points.iter().zip(&self.labels) {
            writeln!(w, "{},{},{}", p[0], p[1], l)?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut points = Vec::new();
        let mut labels = Vec::new();
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            if lineno == 0 || line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(Error::Parse(format!(
                    "line {}: expected 3 fields, got {}",
                    lineno + 1,
                    fields.len()
                )));
            }
            let num = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
            };
            points.push([num(fields[0])?, num(fields[1])?]);
            labels.push(
                fields[2]
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?,
            );
        }
        Self::new(points, labels)
    }
}

/// Point on the noise-free arc of class `k` at parameter `t`.
pub fn arc_point(class: usize, t: f64, shift: f64) -> [f64; 2] {
    let x = t.cos() + class as f64 * shift;
    if class % 2 == 0 {
        [x, t.sin()]
    } else {
        [x, 0.5 - t.sin()]
    }
}

/// Class `k` receives `ceil((n - k) / 3)` points; draws are class-major and
/// for each point `t`, then x-noise, then y-noise.
pub fn generate_half_circles(n: usize, shift: f64, noise_sigma: f64, seed: u64) -> Result<Dataset> {
    if n < N_CLASSES {
        return Err(Error::InvalidParameter(format!(
            "need at least {N_CLASSES} samples, got {n}"
        )));
    }
    if !shift.is_finite() {
        return Err(Error::NonFinite(format!("shift {shift}")));
    }
    if !(noise_sigma >= 0.0) || !noise_sigma.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "noise_sigma must be finite and >= 0, got {noise_sigma}"
        )));
    }
    let noise = Normal::new(0.0, noise_sigma)
        .map_err(|e| Error::InvalidParameter(format!("noise: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for class in 0..N_CLASSES {
        let count = (n - class).div_ceil(N_CLASSES);
        for _ in 0..count {
            let t = rng.random_range(0.0..=PI);
            let [x, y] = arc_point(class, t, shift);
            let dx = noise.sample(&mut rng);
            let dy = noise.sample(&mut rng);
            points.push([x + dx, y + dy]);
            labels.push(class);
        }
    }
    Ok(Dataset {
        points,
        labels,
        shift,
        noise_sigma,
        seed,
    })
}

/// Stratified split: each class is shuffled on its own, and per-class train
/// quotas are chosen by largest remainder so the total is `round(n * fraction)`.
/// Both halves are shuffled again so classes are interleaved.
pub fn split(dataset: &Dataset, train_fraction: f64, seed: u64) -> Result<(Dataset, Dataset)> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "train fraction must lie in (0, 1), got {train_fraction}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); N_CLASSES];
    for (i, &l) in dataset.labels.iter().enumerate() {
        by_class[l].push(i);
    }

    let total_train = (dataset.len() as f64 * train_fraction).round() as usize;
    let ideal: Vec<f64> = by_class
        .iter()
        .map(|c| c.len() as f64 * train_fraction)
        .collect();
    let mut quota: Vec<usize> = ideal.iter().map(|q| q.floor() as usize).collect();
    let mut order: Vec<usize> = (0..N_CLASSES).collect();
    order.sort_by(|&a, &b| {
        let ra = ideal[a] - ideal[a].floor();
        let rb = ideal[b] - ideal[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    let mut remaining = total_train.saturating_sub(quota.iter().sum());
    for &k in order.iter().cycle().take(N_CLASSES * 2) {
        if remaining == 0 {
            break;
        }
        if quota[k] < by_class[k].len() {
            quota[k] += 1;
            remaining -= 1;
        }
    }

    let mut train_idx = Vec::with_capacity(total_train);
    let mut test_idx = Vec::with_capacity(dataset.len() - total_train);
    for (members, &q) in by_class.iter_mut().zip(&quota) {
        members.shuffle(&mut rng);
        train_idx.extend_from_slice(&members[..q]);
        test_idx.extend_from_slice(&members[q..]);
    }
    train_idx.shuffle(&mut rng);
    test_idx.shuffle(&mut rng);
    Ok((dataset.subset(&train_idx), dataset.subset(&test_idx)))
}

/// Per-coordinate mean and population standard deviation of a training set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingStats {
    pub mean: [f64; 2],
    pub std: [f64; 2],
}

impl ScalingStats {
    pub fn fit(data: &Dataset) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::InvalidParameter("cannot standardize an empty set".into()));
        }
        let n = data.len() as f64;
        let mut mean = [0.0; 2];
        for p in &data.points {
            mean[0] += p[0];
            mean[1] += p[1];
        }
        mean[0] /= n;
        mean[1] /= n;
        let mut var = [0.0; 2];
        for p in &data.points {
            var[0] += (p[0] - mean[0]).powi(2);
            var[1] += (p[1] - mean[1]).powi(2);
        }
        let std = [(var[0] / n).sqrt(), (var[1] / n).sqrt()];
        for (axis, s) in std.iter().enumerate() {
            if !(*s > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "coordinate {axis} has zero variance"
                )));
            }
        }
        Ok(Self { mean, std })
    }

    pub fn apply(&self, p: [f64; 2]) -> [f64; 2] {
        [
            (p[0] - self.mean[0]) / self.std[0],
            (p[1] - self.mean[1]) / self.std[1],
        ]
    }

    pub fn apply_all(&self, data: &Dataset) -> Dataset {
        Dataset {
            points: data.points.iter().map(|&p| self.apply(p)).collect(),
            ..data.clone()
        }
    }
}

/// Z-scores both sets with statistics fitted on `train` only.
pub fn standardize(train: &Dataset, test: &Dataset) -> Result<(Dataset, Dataset, ScalingStats)> {
    let stats = ScalingStats::fit(train)?;
    Ok((stats.apply_all(train), stats.apply_all(test), stats))
}
