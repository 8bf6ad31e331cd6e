use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Deserialize;

/// Values read from `--config`; keys mirror the long flags and lose to
/// flags given on the command line.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Config {
    pub set: Option<String>,
    pub coloring: Option<String>,
    pub colors: Option<u32>,
    pub k: Option<usize>,
    pub mode: Option<String>,
    pub budget: Option<String>,
    pub radicands: Option<Radicands>,
    pub seed: Option<u64>,
    pub side: Option<usize>,
    pub max_side: Option<usize>,
    pub max_scale: Option<u64>,
    pub canonical_colors: Option<bool>,
    pub threads: Option<usize>,
    pub window: Option<String>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Radicands {
    List(Vec<u64>),
    Text(String),
}

impl Radicands {
    pub fn values(&self) -> Result<Vec<u64>> {
        match self {
            Radicands::List(v) => Ok(v.clone()),
            Radicands::Text(t) => t
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<u64>()
                        .with_context(|| format!("bad radicand `{}`", p.trim()))
                })
                .collect(),
        }
    }
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("bad config {}", path.display()))
    }
}
