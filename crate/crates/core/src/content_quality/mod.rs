//! Reference-based similarity metrics with engagement-weighted
//! multi-reference aggregation.
//!
//! Candidates are scored against the popular comments of their item:
//! each reference carries a Gaussian engagement weight and the reported
//! score is the maximum of weight times metric over the references.
//! BLEU-1, METEOR and embedding F1 are reported as separate columns; no
//! fused scalar is invented.

mod bleu;
mod embed_f1;
mod meteor;
mod tokenize;
mod weighting;

pub use bleu::bleu1;
pub use embed_f1::embed_f1;
pub use meteor::meteor;
pub use tokenize::{tokenize, TokenizerConfig, TokenizerMode};
pub use weighting::{reference_weights, WeightingConfig};

use serde::{Deserialize, Serialize};

use crate::backends::EmbedderBackend;
use crate::error::{Error, Result};
use crate::types::{Comment, Label};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Metric {
    Bleu1,
    Meteor,
    EmbedF1,
}

/// Result of a weighted-max multi-reference evaluation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightedScore {
    pub score: f64,
    /// Id of the reference that achieved the weighted maximum.
    pub argmax_ref: String,
    /// Engagement weight per reference, in reference order.
    pub weights: Vec<f64>,
}

/// Score one candidate against an item's popular references:
/// `max_j w_j * metric(candidate, ref_j)`.
///
/// Only `Popular`-labeled references participate; an empty pool is an
/// error, never a zero score.
pub fn weighted_max_score(
    candidate: &str,
    references: &[Comment],
    metric: Metric,
    tokenizer: &TokenizerConfig,
    weighting: &WeightingConfig,
    embedder: &dyn EmbedderBackend,
) -> Result<WeightedScore> {
    let popular: Vec<&Comment> = references
        .iter()
        .filter(|c| c.label == Some(Label::Popular))
        .collect();
    if popular.is_empty() {
        return Err(Error::NoReferences);
    }

    let like_counts: Vec<u64> = popular.iter().map(|c| c.like_count).collect();
    let weights = reference_weights(&like_counts, weighting);

    let cand_tokens = tokenize(candidate, tokenizer);
    let mut best = f64::NEG_INFINITY;
    let mut best_id = String::new();
    for (reference, &weight) in popular.iter().zip(&weights) {
        let ref_tokens = tokenize(&reference.text, tokenizer);
        let raw = match metric {
            Metric::Bleu1 => bleu1(&cand_tokens, &ref_tokens),
            Metric::Meteor => meteor(&cand_tokens, &ref_tokens),
            Metric::EmbedF1 => embed_f1(&cand_tokens, &ref_tokens, embedder)?,
        };
        let weighted = weight * raw;
        if weighted > best {
            best = weighted;
            best_id = reference.id.clone();
        }
    }
    Ok(WeightedScore {
        score: best,
        argmax_ref: best_id,
        weights,
    })
}
