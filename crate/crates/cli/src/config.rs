use std::fs;
use std::path::Path;

use hnn_core::group::DEFAULT_ENUM_CAP;
use hnn_core::separation::DEFAULT_M_CAP;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub max_index: usize,
    pub quotients: Vec<usize>,
    pub m_cap: u32,
    pub enum_cap: usize,
    pub output: Output,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_matrix: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            max_index: 6,
            quotients: vec![2, 4, 8],
            m_cap: DEFAULT_M_CAP,
            enum_cap: DEFAULT_ENUM_CAP,
            output: Output::Text,
            c_matrix: None,
        }
    }
}

/// Settings read from a TOML file; every key is optional.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub max_index: Option<usize>,
    pub quotients: Option<Vec<usize>>,
    pub m_cap: Option<u32>,
    pub enum_cap: Option<usize>,
    pub output: Option<Output>,
    pub c_matrix: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text =
            fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
    }
}

impl RunConfig {
    /// Defaults, then the file, then `flags`.
    pub fn resolve(file: Option<FileConfig>, flags: FileConfig) -> Result<Self, String> {
        let mut cfg = Self::default();
        for layer in file.into_iter().chain([flags]) {
            if let Some(v) = layer.max_index {
                cfg.max_index = v;
            }
            if let Some(v) = layer.quotients {
                cfg.quotients = v;
            }
            if let Some(v) = layer.m_cap {
                cfg.m_cap = v;
            }
            if let Some(v) = layer.enum_cap {
                cfg.enum_cap = v;
            }
            if let Some(v) = layer.output {
                cfg.output = v;
            }
            if layer.c_matrix.is_some() {
                cfg.c_matrix = layer.c_matrix;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), String> {
        if self.max_index < 2 {
            return Err(format!(
                "max_index must be at least 2, got {}",
                self.max_index
            ));
        }
        if self.quotients.is_empty() || self.quotients.contains(&0) {
            return Err("quotient sizes must be a nonempty list of positive integers".into());
        }
        if self.m_cap == 0 {
            return Err("m_cap must be positive".into());
        }
        if self.enum_cap == 0 {
            return Err("enum_cap must be positive".into());
        }
        Ok(())
    }
}
