//! Coherent superposition and collapse: generate several realizations of
//! the planned style, represent each in the field's vector space, and keep
//! the one most coherent with the community baseline.

use serde::{Deserialize, Serialize};

use crate::backends::{fan_out, EmbedderBackend, GenParams, GeneratorBackend, JudgeBackend};
use crate::error::{Error, Result};
use crate::seeds::{counter_gaussian, splitmix64};
use crate::types::{CandidatePlan, ContentItem, GeneratedCandidate, ResonanceField};
use crate::vector;

use super::decompose::decompose_style;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuperpositionConfig {
    #[serde(default = "default_n_candidates")]
    pub n_candidates: usize,
    #[serde(default = "default_noise_std")]
    pub noise_std: f64,
    pub seed: u64,
}

fn default_n_candidates() -> usize {
    8
}

fn default_noise_std() -> f64 {
    0.05
}

impl SuperpositionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_candidates == 0 {
            return Err(Error::InvalidConfig("n_candidates must be at least 1".into()));
        }
        if self.noise_std < 0.0 {
            return Err(Error::InvalidConfig("noise_std must be nonnegative".into()));
        }
        Ok(())
    }
}

/// Generate `n_candidates` texts under the same style configuration,
/// re-measure the style each text actually realized, and embed every
/// candidate as `psi0 + sum_i A*_i d*_i + noise`.
///
/// Generator calls and re-decompositions fan out concurrently; results
/// keep candidate-index order. Per-candidate failures are tolerated as
/// long as at least one candidate survives; the noise stream of candidate
/// `k` is seeded by `seed + k`.
#[allow(clippy::too_many_arguments)]
pub fn superpose(
    field: &ResonanceField,
    plan: &CandidatePlan,
    context: &ContentItem,
    exemplars: &[String],
    generator: &dyn GeneratorBackend,
    judge: &dyn JudgeBackend,
    embedder: &dyn EmbedderBackend,
    cfg: &SuperpositionConfig,
) -> Result<Vec<GeneratedCandidate>> {
    cfg.validate()?;
    let style_prompt = super::prompts::generation_prompt(context, plan, exemplars);
    let indices: Vec<usize> = (0..cfg.n_candidates).collect();
    let attempts = fan_out(&indices, 4, |_, &k| -> Result<GeneratedCandidate> {
        let noise_seed = splitmix64(cfg.seed.wrapping_add(k as u64));
        let prompt = format!("{style_prompt}\n(variation {k})");
        let params = GenParams {
            temperature: 0.8,
            max_tokens: 128,
            seed: Some(noise_seed),
        };
        let text = generator.complete(&prompt, &params)?;
        let realized = decompose_style(&text, context, judge, embedder)?;
        let mut psi_k = field.psi0.clone();
        for component in &realized {
            vector::add_scaled(&mut psi_k, &component.orientation, component.intensity);
        }
        if cfg.noise_std > 0.0 {
            for (coord, slot) in psi_k.iter_mut().enumerate() {
                *slot += cfg.noise_std * counter_gaussian(noise_seed, coord as u64);
            }
        }
        Ok(GeneratedCandidate {
            text,
            psi_k,
            realized_components: realized,
            noise_seed,
            coherence: None,
        })
    });

    let mut candidates = Vec::with_capacity(cfg.n_candidates);
    let mut first_error: Option<Error> = None;
    for attempt in attempts {
        match attempt {
            Ok(candidate) => candidates.push(candidate),
            Err(e) => {
                if first_error.is_none() {
                    first_error = Some(e);
                }
            }
        }
    }
    if candidates.is_empty() {
        return Err(Error::Generator(
            first_error
                .map(|e| e.to_string())
                .unwrap_or_else(|| "no candidates requested".into()),
        ));
    }
    Ok(candidates)
}

/// Cosine between a candidate's realized vector and the field baseline.
/// A degenerate (zero) baseline is an error; a zero candidate scores 0.
pub fn coherence(candidate: &GeneratedCandidate, field: &ResonanceField) -> Result<f64> {
    if vector::is_zero(&field.psi0) {
        return Err(Error::DegenerateField);
    }
    if vector::is_zero(&candidate.psi_k) {
        return Ok(0.0);
    }
    vector::cosine(&candidate.psi_k, &field.psi0)
}

/// Pick the candidate with the highest coherence; ties keep the earliest
/// index. Coherences are computed here when absent and returned filled in.
pub fn collapse(
    candidates: &[GeneratedCandidate],
    field: &ResonanceField,
) -> Result<(GeneratedCandidate, Vec<f64>)> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let mut coherences = Vec::with_capacity(candidates.len());
    for candidate in candidates {
        coherences.push(match candidate.coherence {
            Some(c) => c,
            None => coherence(candidate, field)?,
        });
    }
    let mut best_idx = 0usize;
    for (idx, &c) in coherences.iter().enumerate() {
        if c > coherences[best_idx] {
            best_idx = idx;
        }
    }
    let mut selected = candidates[best_idx].clone();
    selected.coherence = Some(coherences[best_idx]);
    Ok((selected, coherences))
}
