//! Exact statevector simulation of small variational blocks.
//!
//! Rotation convention: `R_P(angle) = exp(-i * angle * P)` for a Pauli `P`,
//! i.e. the full-angle form. Under this convention `RX(x)|0>` has
//! `<Z> = cos(2x)`, and the parameter-shift rule uses a shift of `pi/4` with
//! unit scale: `df/dx = f(x + pi/4) - f(x - pi/4)`. Libraries built on the
//! half-angle form `exp(-i angle P / 2)` use `pi/2` and a scale of `1/2`.
//!
//! Qubit 0 is the most significant bit of a basis index, so `|10>` means
//! qubit 0 is set.

mod block;
mod state;

pub use block::{angle_embed, block_gradients, entangler_layer, run_block, BlockGradients, QuantumBlockSpec, PARAMETER_SHIFT};
pub use state::StateVector;

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axis::X => "X",
            Axis::Y => "Y",
            Axis::Z => "Z",
        };
        f.write_str(s)
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "X" | "x" => Ok(Axis::X),
            "Y" | "y" => Ok(Axis::Y),
            "Z" | "z" => Ok(Axis::Z),
            other => Err(Error::Parse(format!("unknown rotation axis '{other}'"))),
        }
    }
}

/// Parses an axis list such as `"XYZ"` or `"X,Z"`.
pub fn parse_axes(s: &str) -> Result<Vec<Axis>, Error> {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| c.to_string().parse())
        .collect()
}
