//! Greedy-matching embedding F1 over per-token embeddings.

use crate::backends::EmbedderBackend;
use crate::error::Result;
use crate::vector::cosine;

/// Precision is the mean over candidate tokens of the max cosine to any
/// reference token (clamped to [0,1] before averaging); recall is
/// symmetric; F1 is their harmonic mean. An empty side scores 0.
pub fn embed_f1(
    candidate: &[String],
    reference: &[String],
    embedder: &dyn EmbedderBackend,
) -> Result<f64> {
    if candidate.is_empty() || reference.is_empty() {
        return Ok(0.0);
    }
    let cand_vecs = embedder.embed(candidate)?;
    let ref_vecs = embedder.embed(reference)?;

    let greedy_mean = |rows: &[Vec<f64>], cols: &[Vec<f64>]| -> f64 {
        let mut total = 0.0;
        for row in rows {
            let mut best = 0.0f64;
            for col in cols {
                let sim = cosine(row, col).unwrap_or(0.0).clamp(0.0, 1.0);
                best = best.max(sim);
            }
            total += best;
        }
        total / rows.len() as f64
    };

    let precision = greedy_mean(&cand_vecs, &ref_vecs);
    let recall = greedy_mean(&ref_vecs, &cand_vecs);
    if precision + recall == 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 * precision * recall / (precision + recall))
}
