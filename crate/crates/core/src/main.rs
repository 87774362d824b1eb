use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

use tunnel_qnn::harness::commands::{
    self, OutputOptions, DEFAULT_GRID, DEFAULT_SHIFTS, DEFAULT_TRIALS,
};
use tunnel_qnn::harness::TrainConfig;
use tunnel_qnn::model::Variant;
use tunnel_qnn::tdaf::TdafParams;

#[derive(Parser)]
#[command(name = "tunnel-qnn", version, about = "Hybrid quantum-classical classifier experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Seed for data, split, shuffling and initialization.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
    /// JSON file mirroring the training config; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Horizontal class shift of the dataset.
    #[arg(long)]
    shift: Option<f64>,
    #[arg(long)]
    noise: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    epochs: Option<usize>,
    #[arg(long)]
    batch_size: Option<usize>,
    #[arg(long)]
    lr: Option<f64>,
    /// Model variant: TunnElQNN, ReLUQNN or ClassicalTDAF.
    #[arg(long)]
    variant: Option<Variant>,
    /// Boundary grid resolution per axis.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,
    /// Add wall-clock runtime to result.json (breaks byte-identical reruns).
    #[arg(long)]
    record_timing: bool,
}

impl Common {
    fn train_config(&self) -> Result<TrainConfig> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading config {}", path.display()))?;
                serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?
            }
            None => TrainConfig::default(),
        };
        if let Some(seed) = self.seed {
            cfg = cfg.with_seed(seed);
        }
        if let Some(v) = self.shift {
            cfg.data.shift = v;
        }
        if let Some(v) = self.noise {
            cfg.data.noise_sigma = v;
        }
        if let Some(v) = self.samples {
            cfg.data.n = v;
        }
        if let Some(v) = self.epochs {
            cfg.epochs = v;
        }
        if let Some(v) = self.batch_size {
            cfg.batch_size = v;
        }
        if let Some(v) = self.lr {
            cfg.lr = v;
        }
        if let Some(v) = self.variant {
            cfg.model.variant = v;
        }
        Ok(cfg)
    }

    fn output(&self) -> OutputOptions {
        OutputOptions {
            out_dir: self.out_dir.clone(),
            grid: self.grid,
            record_timing: self.record_timing,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate the half-circles dataset and its split.
    GenData(Common),
    /// Export the raw diode I-V curve and its conductance.
    IvCurve {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        v_min: f64,
        #[arg(long, default_value_t = 5.0)]
        v_max: f64,
        #[arg(long, default_value_t = 1001)]
        points: usize,
    },
    /// Train one model and save metrics, confusion matrix and checkpoint.
    Train {
        #[command(flatten)]
        common: Common,
        /// Entangler layers per quantum block.
        #[arg(long)]
        layers: Option<usize>,
    },
    /// Evaluate a checkpoint on the regenerated test split.
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        model: PathBuf,
    },
    /// Classify a lattice over the data bounds with a checkpoint.
    Boundary {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        model: PathBuf,
    },
    /// Train TunnElQNN and ReLUQNN on the same split.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        layers: Option<usize>,
    },
    /// Test accuracy against quantum depth over several seeds.
    SweepDepth {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5")]
        layers: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
    },
    /// Train TunnElQNN and ClassicalTDAF over several class shifts.
    SweepShift {
        #[command(flatten)]
        common: Common,
        #[arg(long = "shifts", value_delimiter = ',')]
        shifts: Option<Vec<f64>>,
        #[arg(long)]
        layers: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::GenData(common) => commands::gen_data(&common.train_config()?, &common.output())?,
        Command::IvCurve {
            common,
            v_min,
            v_max,
            points,
        } => {
            let params = match common.config {
                Some(_) => TdafParams::default().with_gain(common.train_config()?.model.tdaf_gain),
                None => TdafParams::default(),
            };
            commands::iv_curve_cmd(&params, v_min, v_max, points, &common.output())?
        }
        Command::Train { common, layers } => {
            let mut cfg = common.train_config()?;
            if let Some(l) = layers {
                cfg.model.quantum_layers = l;
            }
            commands::train_cmd(&cfg, &common.output())?
        }
        Command::Eval { common, model } => {
            commands::eval_cmd(&common.train_config()?, &model, &common.output())?
        }
        Command::Boundary { common, model } => {
            commands::boundary_cmd(&common.train_config()?, &model, &common.output())?
        }
        Command::Compare { common, layers } => {
            let mut cfg = common.train_config()?;
            if let Some(l) = layers {
                cfg.model.quantum_layers = l;
            }
            commands::compare_cmd(&cfg, &common.output())?
        }
        Command::SweepDepth {
            common,
            layers,
            trials,
        } => commands::sweep_depth_cmd(&common.train_config()?, &layers, trials, &common.output())?,
        Command::SweepShift {
            common,
            shifts,
            layers,
        } => {
            let mut cfg = common.train_config()?;
            if let Some(l) = layers {
                cfg.model.quantum_layers = l;
            }
            let shifts = shifts.unwrap_or_else(|| DEFAULT_SHIFTS.to_vec());
            commands::sweep_shift_cmd(
                &cfg,
                &shifts,
                &[Variant::TunnElQnn, Variant::ClassicalTdaf],
                &common.output(),
            )?
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
