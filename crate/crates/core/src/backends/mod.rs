//! Pluggable interfaces for external model services plus deterministic
//! in-process test doubles.
//!
//! Three capability traits cover everything the engine needs from a model
//! service: embedding, free-text completion, and judging. HTTP-backed
//! implementations speak the widely adopted chat/embedding JSON schema so
//! any compatible gateway works; stub implementations are bit-deterministic
//! across runs and platforms.

mod fanout;
mod http;
mod limiter;
mod stubs;

pub use fanout::fan_out;
pub use http::{HttpChatBackend, HttpEmbedBackend, HttpResponse, Transport};
pub use limiter::{Clock, RateLimiter, SystemClock};
pub use stubs::{StubConstant, StubHash, StubTemplate, EXEMPLAR_CLOSE, EXEMPLAR_OPEN};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sampling parameters forwarded to generator backends.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenParams {
    pub temperature: f64,
    pub max_tokens: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            temperature: 0.7,
            max_tokens: 256,
            seed: None,
        }
    }
}

/// Batch text embedding.
pub trait EmbedderBackend: Send + Sync {
    /// One vector per input text; all vectors have length [`dimension`].
    ///
    /// [`dimension`]: EmbedderBackend::dimension
    fn embed(&self, texts: &[String]) -> Result<Vec<Vec<f64>>>;

    fn dimension(&self) -> usize;

    /// Stable identifier used in report provenance blocks.
    fn identifier(&self) -> String;

    fn embed_one(&self, text: &str) -> Result<Vec<f64>> {
        let mut out = self.embed(&[text.to_string()])?;
        out.pop().ok_or(Error::EmptyInput)
    }
}

/// Free-text completion.
pub trait GeneratorBackend: Send + Sync {
    fn complete(&self, prompt: &str, params: &GenParams) -> Result<String>;

    fn identifier(&self) -> String;
}

/// Structured judging; callers own the reply parsers.
pub trait JudgeBackend: Send + Sync {
    fn judge(&self, prompt: &str) -> Result<String>;

    fn identifier(&self) -> String;
}

/// Backend kind discriminator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BackendKind {
    HttpChat,
    HttpEmbed,
    StubHash,
    StubTemplate,
    StubConstant,
}

/// Declarative backend configuration, usually read from a config file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BackendConfig {
    pub kind: BackendKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoint: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model_name: Option<String>,
    /// Name of the environment variable holding the API key; the key
    /// itself never appears in configs, logs, or traces.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub api_key_env: Option<String>,
    #[serde(default = "default_timeout_ms")]
    pub timeout_ms: u64,
    #[serde(default = "default_max_retries")]
    pub max_retries: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate_limit_per_min: Option<u32>,
    /// Embedding dimension for StubHash.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    /// Fixed reply for StubConstant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reply: Option<String>,
    /// Template pool for StubTemplate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub templates: Option<Vec<String>>,
}

fn default_timeout_ms() -> u64 {
    30_000
}

fn default_max_retries() -> u32 {
    2
}

impl BackendConfig {
    pub fn stub_hash(dim: usize) -> Self {
        BackendConfig {
            kind: BackendKind::StubHash,
            dim: Some(dim),
            ..BackendConfig::stub_base()
        }
    }

    pub fn stub_constant(reply: impl Into<String>) -> Self {
        BackendConfig {
            kind: BackendKind::StubConstant,
            reply: Some(reply.into()),
            ..BackendConfig::stub_base()
        }
    }

    pub fn stub_template() -> Self {
        BackendConfig {
            kind: BackendKind::StubTemplate,
            ..BackendConfig::stub_base()
        }
    }

    fn stub_base() -> Self {
        BackendConfig {
            kind: BackendKind::StubConstant,
            endpoint: None,
            model_name: None,
            api_key_env: None,
            timeout_ms: default_timeout_ms(),
            max_retries: default_max_retries(),
            rate_limit_per_min: None,
            dim: None,
            reply: None,
            templates: None,
        }
    }

    /// Structural validation: http kinds require an endpoint, stubs forbid one.
    pub fn validate(&self) -> Result<()> {
        let is_http = matches!(self.kind, BackendKind::HttpChat | BackendKind::HttpEmbed);
        match (is_http, &self.endpoint) {
            (true, None) => Err(Error::InvalidConfig(format!(
                "{:?} backend requires an endpoint",
                self.kind
            ))),
            (false, Some(_)) => Err(Error::InvalidConfig(format!(
                "{:?} backend must not set an endpoint",
                self.kind
            ))),
            _ => Ok(()),
        }
    }
}

/// Build an embedder from config.
pub fn build_embedder(cfg: &BackendConfig) -> Result<Box<dyn EmbedderBackend>> {
    cfg.validate()?;
    match cfg.kind {
        BackendKind::StubHash => Ok(Box::new(StubHash::new(cfg.dim.unwrap_or(64)))),
        BackendKind::HttpEmbed => Ok(Box::new(HttpEmbedBackend::from_config(cfg)?)),
        other => Err(Error::InvalidConfig(format!(
            "{other:?} cannot act as an embedder"
        ))),
    }
}

/// Build a generator from config.
pub fn build_generator(cfg: &BackendConfig) -> Result<Box<dyn GeneratorBackend>> {
    cfg.validate()?;
    match cfg.kind {
        BackendKind::StubTemplate => Ok(Box::new(StubTemplate::from_config(cfg))),
        BackendKind::StubConstant => Ok(Box::new(StubConstant::from_config(cfg))),
        BackendKind::HttpChat => Ok(Box::new(HttpChatBackend::from_config(cfg)?)),
        other => Err(Error::InvalidConfig(format!(
            "{other:?} cannot act as a generator"
        ))),
    }
}

/// Build a judge from config.
pub fn build_judge(cfg: &BackendConfig) -> Result<Box<dyn JudgeBackend>> {
    cfg.validate()?;
    match cfg.kind {
        BackendKind::StubConstant => Ok(Box::new(StubConstant::from_config(cfg))),
        BackendKind::StubTemplate => Ok(Box::new(StubTemplate::from_config(cfg))),
        BackendKind::HttpChat => Ok(Box::new(HttpChatBackend::from_config(cfg)?)),
        other => Err(Error::InvalidConfig(format!(
            "{other:?} cannot act as a judge"
        ))),
    }
}
