//! Optional TOML settings file. Any key set here beats the matching flag,
//! so a checked-in run configuration cannot be drifted past by a stray
//! command line. The LLM API key is deliberately absent: it only ever comes
//! from the environment variable named by `key-env`.

use std::path::Path;

use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub format: Option<String>,
    pub pair_hint: Option<String>,
    pub ratio: Option<String>,
    pub endpoint: Option<String>,
    pub model: Option<String>,
    pub key_env: Option<String>,
    pub budget: Option<u64>,
    pub max_retries: Option<u32>,
    pub retry_base_ms: Option<u64>,
    pub batch_size: Option<usize>,
    pub batches: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }

    /// Config value if set, else the flag, else the given default.
    pub fn pick<T: Clone>(config: &Option<T>, flag: &Option<T>, default: T) -> T {
        config.clone().or_else(|| flag.clone()).unwrap_or(default)
    }

    pub fn seed(&self, flag: Option<u64>) -> u64 {
        Self::pick(&self.seed, &flag, 0)
    }
}
