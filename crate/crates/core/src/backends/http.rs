//! HTTP chat-completion and embedding clients.
//!
//! Requests follow the widely adopted gateway schema: chat requests POST
//! `{model, messages}` and embedding requests POST `{model, input}`;
//! bit-exact fixtures live in `docs/protocol.md` and are pinned by tests.
//! Transport is abstracted behind a trait so retry, backoff, timeout and
//! redaction behavior is testable without a network.

use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};

use super::limiter::{Clock, RateLimiter, SystemClock};
use super::{BackendConfig, EmbedderBackend, GenParams, GeneratorBackend, JudgeBackend};

const BACKOFF_BASE_MS: u64 = 250;
const BACKOFF_FACTOR: u64 = 2;
const REDACTED: &str = "[REDACTED]";

/// Minimal HTTP response surface the clients need.
#[derive(Debug, Clone)]
pub struct HttpResponse {
    pub status: u16,
    pub body: String,
}

/// One POST with a JSON body; implementations must honor the timeout.
pub trait Transport: Send + Sync {
    fn post_json(
        &self,
        url: &str,
        bearer_token: Option<&str>,
        body: &serde_json::Value,
        timeout: Duration,
    ) -> Result<HttpResponse>;
}

/// Production transport backed by a blocking reqwest client.
pub struct ReqwestTransport {
    client: reqwest::blocking::Client,
}

impl ReqwestTransport {
    pub fn new() -> Result<Self> {
        let client = reqwest::blocking::Client::builder()
            .build()
            .map_err(|e| Error::Backend {
                status: None,
                body: e.to_string(),
            })?;
        Ok(ReqwestTransport { client })
    }
}

impl Transport for ReqwestTransport {
    fn post_json(
        &self,
        url: &str,
        bearer_token: Option<&str>,
        body: &serde_json::Value,
        timeout: Duration,
    ) -> Result<HttpResponse> {
        let mut request = self.client.post(url).json(body).timeout(timeout);
        if let Some(token) = bearer_token {
            request = request.bearer_auth(token);
        }
        let response = request.send().map_err(|e| {
            if e.is_timeout() {
                Error::Timeout
            } else {
                Error::Backend {
                    status: None,
                    body: e.without_url().to_string(),
                }
            }
        })?;
        let status = response.status().as_u16();
        let body = response.text().map_err(|e| Error::Backend {
            status: Some(status),
            body: e.without_url().to_string(),
        })?;
        Ok(HttpResponse { status, body })
    }
}

/// Shared request machinery: auth, retries, backoff, rate limiting,
/// and API-key redaction of every error surface.
struct HttpCore {
    endpoint: String,
    model_name: String,
    api_key_env: Option<String>,
    timeout: Duration,
    max_retries: u32,
    limiter: Option<RateLimiter>,
    transport: Box<dyn Transport>,
    clock: Box<dyn Clock>,
}

impl HttpCore {
    fn from_config(cfg: &BackendConfig, transport: Box<dyn Transport>) -> Result<Self> {
        Self::with_clock(cfg, transport, Box::new(SystemClock::default()))
    }

    fn with_clock(
        cfg: &BackendConfig,
        transport: Box<dyn Transport>,
        clock: Box<dyn Clock>,
    ) -> Result<Self> {
        cfg.validate()?;
        let endpoint = cfg
            .endpoint
            .clone()
            .ok_or_else(|| Error::InvalidConfig("http backend requires endpoint".into()))?;
        Ok(HttpCore {
            endpoint,
            model_name: cfg.model_name.clone().unwrap_or_else(|| "default".into()),
            api_key_env: cfg.api_key_env.clone(),
            timeout: Duration::from_millis(cfg.timeout_ms),
            max_retries: cfg.max_retries,
            limiter: cfg
                .rate_limit_per_min
                .map(|limit| RateLimiter::new(limit, Box::new(SystemClock::default()))),
            transport,
            clock,
        })
    }

    fn api_key(&self) -> Option<String> {
        self.api_key_env
            .as_deref()
            .and_then(|name| std::env::var(name).ok())
            .filter(|key| !key.is_empty())
    }

    fn redact(&self, text: &str) -> String {
        match self.api_key() {
            Some(key) => text.replace(&key, REDACTED),
            None => text.to_string(),
        }
    }

    fn redact_error(&self, err: Error) -> Error {
        match err {
            Error::Backend { status, body } => Error::Backend {
                status,
                body: self.redact(&body),
            },
            other => other,
        }
    }

    /// POST with up to `max_retries` retries on transport errors, 429 and
    /// 5xx. Backoff is exponential (base 250ms, factor 2) and jitterless.
    fn post_with_retries(&self, body: &serde_json::Value) -> Result<serde_json::Value> {
        let key = self.api_key();
        let mut attempt = 0u32;
        loop {
            if let Some(limiter) = &self.limiter {
                limiter.acquire();
            }
            let outcome =
                self.transport
                    .post_json(&self.endpoint, key.as_deref(), body, self.timeout);
            match outcome {
                Ok(resp) if resp.status < 400 => {
                    return serde_json::from_str(&resp.body).map_err(|e| Error::Backend {
                        status: None,
                        body: format!("malformed response body: {e}"),
                    });
                }
                Ok(resp) => {
                    let retryable = resp.status == 429 || resp.status >= 500;
                    if !retryable || attempt >= self.max_retries {
                        return Err(self.redact_error(Error::Backend {
                            status: Some(resp.status),
                            body: resp.body,
                        }));
                    }
                }
                Err(e) => {
                    if attempt >= self.max_retries {
                        return Err(self.redact_error(e));
                    }
                }
            }
            let backoff = BACKOFF_BASE_MS * BACKOFF_FACTOR.pow(attempt);
            self.clock.sleep(Duration::from_millis(backoff));
            attempt += 1;
        }
    }
}

/// Chat-completion client; serves both the generator and judge contracts.
pub struct HttpChatBackend {
    core: HttpCore,
}

#[derive(Debug, Serialize, Deserialize)]
struct ChatChoiceMessage {
    content: String,
}

#[derive(Debug, Deserialize)]
struct ChatChoice {
    message: ChatChoiceMessage,
}

#[derive(Debug, Deserialize)]
struct ChatResponse {
    choices: Vec<ChatChoice>,
}

impl HttpChatBackend {
    pub fn from_config(cfg: &BackendConfig) -> Result<Self> {
        Ok(HttpChatBackend {
            core: HttpCore::from_config(cfg, Box::new(ReqwestTransport::new()?))?,
        })
    }

    pub fn with_transport(cfg: &BackendConfig, transport: Box<dyn Transport>) -> Result<Self> {
        Ok(HttpChatBackend {
            core: HttpCore::from_config(cfg, transport)?,
        })
    }

    /// Test seam: inject both transport and clock (backoff timing).
    pub fn with_transport_and_clock(
        cfg: &BackendConfig,
        transport: Box<dyn Transport>,
        clock: Box<dyn Clock>,
    ) -> Result<Self> {
        Ok(HttpChatBackend {
            core: HttpCore::with_clock(cfg, transport, clock)?,
        })
    }

    fn chat(&self, prompt: &str, params: &GenParams) -> Result<String> {
        let mut body = json!({
            "model": self.core.model_name,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": params.temperature,
            "max_tokens": params.max_tokens,
        });
        if let Some(seed) = params.seed {
            body["seed"] = json!(seed);
        }
        let value = self.core.post_with_retries(&body)?;
        let parsed: ChatResponse =
            serde_json::from_value(value).map_err(|e| Error::Backend {
                status: None,
                body: format!("unexpected chat response shape: {e}"),
            })?;
        parsed
            .choices
            .into_iter()
            .next()
            .map(|c| c.message.content)
            .ok_or_else(|| Error::Backend {
                status: None,
                body: "chat response had no choices".into(),
            })
    }
}

impl GeneratorBackend for HttpChatBackend {
    fn complete(&self, prompt: &str, params: &GenParams) -> Result<String> {
        self.chat(prompt, params)
    }

    fn identifier(&self) -> String {
        format!("http-chat/{}", self.core.model_name)
    }
}

impl JudgeBackend for HttpChatBackend {
    fn judge(&self, prompt: &str) -> Result<String> {
        self.chat(
            prompt,
            &GenParams {
                temperature: 0.0,
                max_tokens: 256,
                seed: None,
            },
        )
    }

    fn identifier(&self) -> String {
        format!("http-chat/{}", self.core.model_name)
    }
}

/// Embedding client.
pub struct HttpEmbedBackend {
    core: HttpCore,
    dim: std::sync::OnceLock<usize>,
}

#[derive(Debug, Deserialize)]
struct EmbedDatum {
    embedding: Vec<f64>,
}

#[derive(Debug, Deserialize)]
struct EmbedResponse {
    data: Vec<EmbedDatum>,
}

impl HttpEmbedBackend {
    pub fn from_config(cfg: &BackendConfig) -> Result<Self> {
        Ok(HttpEmbedBackend {
            core: HttpCore::from_config(cfg, Box::new(ReqwestTransport::new()?))?,
            dim: std::sync::OnceLock::new(),
        })
    }

    pub fn with_transport(cfg: &BackendConfig, transport: Box<dyn Transport>) -> Result<Self> {
        Ok(HttpEmbedBackend {
            core: HttpCore::from_config(cfg, transport)?,
            dim: std::sync::OnceLock::new(),
        })
    }
}

impl EmbedderBackend for HttpEmbedBackend {
    fn embed(&self, texts: &[String]) -> Result<Vec<Vec<f64>>> {
        if texts.is_empty() {
            return Err(Error::EmptyInput);
        }
        let body = json!({
            "model": self.core.model_name,
            "input": texts,
        });
        let value = self.core.post_with_retries(&body)?;
        let parsed: EmbedResponse =
            serde_json::from_value(value).map_err(|e| Error::Backend {
                status: None,
                body: format!("unexpected embedding response shape: {e}"),
            })?;
        if parsed.data.len() != texts.len() {
            return Err(Error::Backend {
                status: None,
                body: format!(
                    "embedding count mismatch: sent {}, got {}",
                    texts.len(),
                    parsed.data.len()
                ),
            });
        }
        let vectors: Vec<Vec<f64>> = parsed.data.into_iter().map(|d| d.embedding).collect();
        if let Some(first) = vectors.first() {
            let _ = self.dim.set(first.len());
        }
        Ok(vectors)
    }

    fn dimension(&self) -> usize {
        *self.dim.get().unwrap_or(&0)
    }

    fn identifier(&self) -> String {
        format!("http-embed/{}", self.core.model_name)
    }
}
