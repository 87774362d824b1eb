use serde::{Deserialize, Serialize};

use super::{HybridModel, ModelConfig, RegistryEntry};
use crate::data::ScalingStats;
use crate::error::{Error, Result};

const FORMAT: &str = "tunnel-qnn-checkpoint";
const VERSION: u32 = 1;

/// Self-describing JSON snapshot of a trained model.
///
/// Floats are written in shortest round-trip form and parsed back exactly,
/// so save/load reproduces every parameter bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub format: String,
    pub version: u32,
    pub config: ModelConfig,
    pub registry: Vec<RegistryEntry>,
    pub params: Vec<f64>,
    /// Input standardization fitted on the training split.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scaling: Option<ScalingStats>,
}

impl Checkpoint {
    pub fn from_model(model: &HybridModel, scaling: Option<ScalingStats>) -> Self {
        Self {
            format: FORMAT.to_string(),
            version: VERSION,
            config: model.config().clone(),
            registry: model.registry().to_vec(),
            params: model.params(),
            scaling,
        }
    }

    pub fn to_model(&self) -> Result<HybridModel> {
        if self.format != FORMAT || self.version != VERSION {
            return Err(Error::Parse(format!(
                "unsupported checkpoint {} v{}",
                self.format, self.version
            )));
        }
        let mut model = HybridModel::new(self.config.clone())?;
        if model.registry() != self.registry.as_slice() {
            return Err(Error::Parse(
                "checkpoint registry does not match its config".into(),
            ));
        }
        model.set_params(&self.params)?;
        Ok(model)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}
