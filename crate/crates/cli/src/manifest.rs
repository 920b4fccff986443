use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};

/// Provenance written next to every command's outputs.
///
/// Everything except `timestamp` is a pure function of the command's flags,
/// so two runs with equal flags differ only in that field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    pub parameters: Value,
    pub master_seed: Option<u64>,
    pub tool_version: String,
    pub timestamp: String,
}

impl Manifest {
    pub fn new(
        command: &str,
        parameters: &impl Serialize,
        master_seed: Option<u64>,
    ) -> Result<Self> {
        Ok(Manifest {
            command: command.to_string(),
            parameters: serde_json::to_value(parameters)
                .map_err(|e| CliError::Internal(format!("serializing parameters: {e}")))?,
            master_seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        })
    }

    pub fn to_json(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(self).expect("manifest serializes");
        out.push(b'\n');
        out
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self> {
        serde_json::from_slice(bytes).map_err(|e| CliError::Usage(format!("invalid manifest: {e}")))
    }
}
