//! Hybrid quantum-classical neural networks with a tunnel-diode activation.
//!
//! The crate is split along the data flow of a training run:
//!
//! - [`tdaf`]: the tunnel-diode I-V activation and its analytic derivative.
//! - [`qsim`]: an exact statevector simulator for the small variational blocks,
//!   with parameter-shift gradients.
//! - [`nn`]: dense layers, ReLU, softmax cross-entropy and Adam.
//! - [`model`]: the hybrid architecture and its two baselines.
//! - [`data`]: the three-class interleaving half-circles dataset.
//! - [`harness`]: training loop, metrics, sweeps and file outputs used by the CLI.

pub mod data;
pub mod error;
pub mod harness;
pub mod model;
pub mod nn;
pub mod qsim;
pub mod tdaf;

pub use error::{Error, Result};
