//! Config and data-file handling for the CLI: backend sets, candidate
//! files, and the consolidated bench configuration. Everything is
//! parse-then-validate with unknown keys rejected.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use popcmt_core::backends::{
    build_embedder, build_generator, build_judge, BackendConfig, EmbedderBackend,
    GeneratorBackend, JudgeBackend,
};
use popcmt_core::content_quality::{TokenizerConfig, WeightingConfig};
use popcmt_core::simulation::EsiConfig;

/// Backend set read from a `--backends` / `--judges` file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BackendsFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedder: Option<BackendConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<BackendConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub judges: Vec<BackendConfig>,
}

impl BackendsFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading backends config {}", path.display()))?;
        let file: BackendsFile = serde_json::from_str(&text)
            .with_context(|| format!("parsing backends config {}", path.display()))?;
        Ok(file)
    }

    pub fn embedder(&self) -> Result<Box<dyn EmbedderBackend>> {
        let cfg = self
            .embedder
            .as_ref()
            .context("backends config needs an \"embedder\" entry")?;
        Ok(build_embedder(cfg)?)
    }

    pub fn generator(&self) -> Result<Box<dyn GeneratorBackend>> {
        let cfg = self
            .generator
            .as_ref()
            .context("backends config needs a \"generator\" entry")?;
        Ok(build_generator(cfg)?)
    }

    pub fn judges(&self) -> Result<Vec<Box<dyn JudgeBackend>>> {
        if self.judges.is_empty() {
            bail!("backends config needs at least one entry under \"judges\"");
        }
        self.judges
            .iter()
            .map(|cfg| build_judge(cfg).map_err(Into::into))
            .collect()
    }

    pub fn primary_judge(&self) -> Result<Box<dyn JudgeBackend>> {
        Ok(self.judges()?.remove(0))
    }
}

/// One candidate comment to evaluate, read from a candidates JSONL file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Candidate {
    pub id: String,
    pub content_id: String,
    pub text: String,
}

pub fn load_candidates(path: &Path) -> Result<Vec<Candidate>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading candidates {}", path.display()))?;
    let mut candidates = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let candidate: Candidate = serde_json::from_str(line)
            .with_context(|| format!("{}:{}", path.display(), idx + 1))?;
        candidates.push(candidate);
    }
    Ok(candidates)
}

pub fn load_esi(path: &Path) -> Result<EsiConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading esi config {}", path.display()))?;
    let cfg: EsiConfig =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    cfg.validate()?;
    Ok(cfg)
}

/// One named candidate set in a bench run (one row of the report).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateSet {
    pub name: String,
    pub path: PathBuf,
}

/// Consolidated configuration for `bench`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub seed: u64,
    pub corpus: PathBuf,
    pub model: PathBuf,
    pub priors: PathBuf,
    pub backends: BackendsFile,
    #[serde(default)]
    pub esi: EsiConfig,
    pub candidate_sets: Vec<CandidateSet>,
    #[serde(default)]
    pub tokenizer: TokenizerConfig,
    #[serde(default)]
    pub weighting: WeightingConfig,
    #[serde(default = "default_n_agents")]
    pub n_agents: usize,
    #[serde(default = "default_in_flight")]
    pub in_flight: usize,
}

pub fn default_n_agents() -> usize {
    40
}

pub fn default_in_flight() -> usize {
    4
}

impl BenchConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading bench config {}", path.display()))?;
        let cfg: BenchConfig =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        if cfg.candidate_sets.is_empty() {
            bail!("bench config needs at least one candidate set");
        }
        cfg.weighting.validate()?;
        cfg.esi.validate()?;
        Ok(cfg)
    }
}
