//! Deterministic in-process test doubles.
//!
//! Stubs use integer hashing and the counter-based Gaussian from
//! [`crate::seeds`], so their output is bit-identical across runs and
//! platforms.

use crate::error::Result;
use crate::seeds::{counter_gaussian, fnv1a64, splitmix64};
use crate::vector;

use super::{BackendConfig, EmbedderBackend, GenParams, GeneratorBackend, JudgeBackend};

/// Hash-seeded embedder: each whitespace token contributes a Gaussian
/// vector seeded by its 64-bit hash; token vectors are summed and the
/// result unit-normalized. An empty input maps to the first basis vector.
#[derive(Debug, Clone)]
pub struct StubHash {
    dim: usize,
}

impl StubHash {
    pub fn new(dim: usize) -> Self {
        assert!(dim > 0, "embedding dimension must be positive");
        StubHash { dim }
    }

    fn embed_text(&self, text: &str) -> Vec<f64> {
        let mut acc = vec![0.0; self.dim];
        let mut any = false;
        for token in text.split_whitespace() {
            any = true;
            let h = fnv1a64(token.as_bytes());
            for (c, slot) in acc.iter_mut().enumerate() {
                *slot += counter_gaussian(h, c as u64);
            }
        }
        if !any {
            let mut basis = vec![0.0; self.dim];
            basis[0] = 1.0;
            return basis;
        }
        let unit = vector::normalize_or_zero(&acc);
        if vector::is_zero(&unit) {
            // token vectors cancelled exactly; fall back to the basis vector
            let mut basis = vec![0.0; self.dim];
            basis[0] = 1.0;
            basis
        } else {
            unit
        }
    }
}

impl EmbedderBackend for StubHash {
    fn embed(&self, texts: &[String]) -> Result<Vec<Vec<f64>>> {
        Ok(texts.iter().map(|t| self.embed_text(t)).collect())
    }

    fn dimension(&self) -> usize {
        self.dim
    }

    fn identifier(&self) -> String {
        format!("stub-hash-d{}", self.dim)
    }
}

/// Template-filling generator.
///
/// If the prompt carries an exemplar block (lines between `EXEMPLARS:` and
/// `END EXEMPLARS`), the reply echoes one exemplar chosen by prompt hash,
/// which makes stub generations track whatever style the prompt was
/// conditioned on. Otherwise a canned template is chosen by prompt hash.
#[derive(Debug, Clone)]
pub struct StubTemplate {
    templates: Vec<String>,
}

/// Markers delimiting an exemplar block inside a prompt; the template
/// stub echoes one exemplar back when it finds them.
pub const EXEMPLAR_OPEN: &str = "EXEMPLARS:";
pub const EXEMPLAR_CLOSE: &str = "END EXEMPLARS";

const DEFAULT_TEMPLATES: [&str; 4] = [
    "Interesting take, thanks for sharing.",
    "Not sure I agree but it made me think.",
    "First time seeing this, bookmarking now.",
    "This deserves way more attention.",
];

impl StubTemplate {
    pub fn new(templates: Vec<String>) -> Self {
        let templates = if templates.is_empty() {
            DEFAULT_TEMPLATES.iter().map(|s| s.to_string()).collect()
        } else {
            templates
        };
        StubTemplate { templates }
    }

    pub fn from_config(cfg: &BackendConfig) -> Self {
        StubTemplate::new(cfg.templates.clone().unwrap_or_default())
    }

    fn exemplar_lines(prompt: &str) -> Vec<&str> {
        let Some(start) = prompt.find(EXEMPLAR_OPEN) else {
            return Vec::new();
        };
        let rest = &prompt[start + EXEMPLAR_OPEN.len()..];
        let end = rest.find(EXEMPLAR_CLOSE).unwrap_or(rest.len());
        rest[..end]
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .collect()
    }

    fn fill(&self, prompt: &str) -> String {
        let h = splitmix64(fnv1a64(prompt.as_bytes()));
        let exemplars = Self::exemplar_lines(prompt);
        if !exemplars.is_empty() {
            let pick = exemplars[(h % exemplars.len() as u64) as usize];
            return pick.to_string();
        }
        self.templates[(h % self.templates.len() as u64) as usize].clone()
    }
}

impl GeneratorBackend for StubTemplate {
    fn complete(&self, prompt: &str, _params: &GenParams) -> Result<String> {
        Ok(self.fill(prompt))
    }

    fn identifier(&self) -> String {
        format!("stub-template-{}", self.templates.len())
    }
}

impl JudgeBackend for StubTemplate {
    fn judge(&self, prompt: &str) -> Result<String> {
        Ok(self.fill(prompt))
    }

    fn identifier(&self) -> String {
        format!("stub-template-{}", self.templates.len())
    }
}

/// Returns the configured reply verbatim, regardless of prompt.
#[derive(Debug, Clone)]
pub struct StubConstant {
    reply: String,
}

impl StubConstant {
    pub fn new(reply: impl Into<String>) -> Self {
        StubConstant {
            reply: reply.into(),
        }
    }

    pub fn from_config(cfg: &BackendConfig) -> Self {
        StubConstant::new(cfg.reply.clone().unwrap_or_default())
    }
}

impl JudgeBackend for StubConstant {
    fn judge(&self, _prompt: &str) -> Result<String> {
        Ok(self.reply.clone())
    }

    fn identifier(&self) -> String {
        format!("stub-constant-{:016x}", fnv1a64(self.reply.as_bytes()))
    }
}

impl GeneratorBackend for StubConstant {
    fn complete(&self, _prompt: &str, _params: &GenParams) -> Result<String> {
        Ok(self.reply.clone())
    }

    fn identifier(&self) -> String {
        format!("stub-constant-{:016x}", fnv1a64(self.reply.as_bytes()))
    }
}
