//! Run configuration: defaults, optional TOML file, command-line overrides.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;
use thiserror::Error;

use crate::parenword::{Alphabet, AlphabetError};

/// Environment variable naming an optional config file.
pub const CONFIG_ENV: &str = "HOPFREN_CONFIG";
pub const DEFAULT_MAX_LEN_CAP: usize = 8;
pub const DEFAULT_ORDER: i32 = 4;
pub const DEFAULT_EPS: f64 = 0.1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(ConfigError::Invalid(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed config file {path}: {source}")]
    Toml {
        path: PathBuf,
        source: toml::de::Error,
    },
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error("max length {max_len} exceeds the safety cap {cap}")]
    MaxLenExceeded { max_len: usize, cap: usize },
    #[error("{0}")]
    Invalid(String),
}

/// Every field optional; used both for the file and for flags.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ConfigLayer {
    pub alphabet: Option<String>,
    pub format: Option<Format>,
    pub order: Option<i32>,
    pub c: Option<f64>,
    pub eps: Option<f64>,
    pub max_len: Option<usize>,
    pub max_len_cap: Option<usize>,
    pub seed: Option<u64>,
}

impl ConfigLayer {
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        toml::from_str(&text).map_err(|source| ConfigError::Toml {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Fields set in `over` win.
    pub fn merged(self, over: ConfigLayer) -> ConfigLayer {
        ConfigLayer {
            alphabet: over.alphabet.or(self.alphabet),
            format: over.format.or(self.format),
            order: over.order.or(self.order),
            c: over.c.or(self.c),
            eps: over.eps.or(self.eps),
            max_len: over.max_len.or(self.max_len),
            max_len_cap: over.max_len_cap.or(self.max_len_cap),
            seed: over.seed.or(self.seed),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// `None` means the command's default alphabet.
    pub alphabet: Option<Alphabet>,
    pub format: Format,
    pub order: i32,
    pub c: Option<f64>,
    pub eps: f64,
    pub max_len: Option<usize>,
    pub max_len_cap: usize,
    /// Reserved; no command is randomized.
    pub seed: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            alphabet: None,
            format: Format::Text,
            order: DEFAULT_ORDER,
            c: None,
            eps: DEFAULT_EPS,
            max_len: None,
            max_len_cap: DEFAULT_MAX_LEN_CAP,
            seed: None,
        }
    }
}

impl RunConfig {
    pub fn from_layer(layer: ConfigLayer) -> Result<Self, ConfigError> {
        let defaults = RunConfig::default();
        let alphabet = layer
            .alphabet
            .as_deref()
            .map(Alphabet::from_spec)
            .transpose()?;
        let cfg = RunConfig {
            alphabet,
            format: layer.format.unwrap_or(defaults.format),
            order: layer.order.unwrap_or(defaults.order),
            c: layer.c,
            eps: layer.eps.unwrap_or(defaults.eps),
            max_len: layer.max_len,
            max_len_cap: layer.max_len_cap.unwrap_or(defaults.max_len_cap),
            seed: layer.seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if let Some(max_len) = self.max_len {
            if max_len > self.max_len_cap {
                return Err(ConfigError::MaxLenExceeded {
                    max_len,
                    cap: self.max_len_cap,
                });
            }
            if max_len == 0 {
                return Err(ConfigError::Invalid("max length must be at least 1".into()));
            }
        }
        if !(self.eps.is_finite() && self.eps > 0.0) {
            return Err(ConfigError::Invalid(format!(
                "eps must be positive, got {}",
                self.eps
            )));
        }
        if let Some(c) = self.c {
            if !(c.is_finite() && c > 0.0) {
                return Err(ConfigError::Invalid(format!("c must be positive, got {c}")));
            }
        }
        Ok(())
    }

    /// Declared alphabet, else `x1..x9` with weight `i` for `xi`.
    pub fn alphabet_or_default(&self) -> Alphabet {
        self.alphabet
            .clone()
            .unwrap_or_else(|| Alphabet::numbered(9))
    }
}
