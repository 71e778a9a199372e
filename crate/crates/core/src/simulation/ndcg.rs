//! Ranking agreement: NDCG@k and the within-item simulator validation
//! harness.

use serde::{Deserialize, Serialize};

use crate::backends::JudgeBackend;
use crate::corpus::Corpus;
use crate::error::{Error, Result};

use super::engagement::{simulate_engagement, AggregationMode};
use super::roster::AudienceRoster;

/// NDCG@k with linear gain and `1/log2(rank+1)` discount.
///
/// Items are ranked by predicted score descending, ties keeping input
/// order; the ideal ranking sorts true relevance descending. A zero ideal
/// DCG is defined as a perfect 1.0.
pub fn ndcg_at_k(predicted_scores: &[f64], true_relevance: &[f64], k: usize) -> Result<f64> {
    if predicted_scores.len() != true_relevance.len() {
        return Err(Error::LengthMismatch {
            left: predicted_scores.len(),
            right: true_relevance.len(),
        });
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if predicted_scores.is_empty() {
        return Ok(1.0);
    }

    let k = k.min(predicted_scores.len());

    // stable sort keeps input order on ties
    let mut order: Vec<usize> = (0..predicted_scores.len()).collect();
    order.sort_by(|&a, &b| {
        predicted_scores[b]
            .partial_cmp(&predicted_scores[a])
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let dcg: f64 = order
        .iter()
        .take(k)
        .enumerate()
        .map(|(rank, &idx)| true_relevance[idx] / ((rank + 2) as f64).log2())
        .sum();

    let mut ideal: Vec<f64> = true_relevance.to_vec();
    ideal.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    let idcg: f64 = ideal
        .iter()
        .take(k)
        .enumerate()
        .map(|(rank, rel)| rel / ((rank + 2) as f64).log2())
        .sum();

    if idcg == 0.0 {
        return Ok(1.0);
    }
    Ok(dcg / idcg)
}

/// Per-item record from a validation run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ItemNdcg {
    pub content_id: String,
    pub ndcg: f64,
    pub comment_count: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub mean_ndcg: f64,
    pub items_evaluated: usize,
    pub items_skipped: usize,
    pub per_item: Vec<ItemNdcg>,
}

/// Within-item ranking test: simulate an engagement score for every
/// comment of every item with at least two comments, then compare the
/// simulated ranking against like counts (log1p-transformed and per-item
/// max-normalized).
pub fn validate_simulator<F>(
    corpus: &Corpus,
    mut roster_for_item: F,
    judge: &dyn JudgeBackend,
    in_flight: usize,
) -> Result<ValidationReport>
where
    F: FnMut(&crate::types::ContentItem) -> Result<AudienceRoster>,
{
    let mut per_item = Vec::new();
    let mut skipped = 0usize;
    for item in &corpus.items {
        let comments = corpus.comments_for(&item.id);
        if comments.len() < 2 {
            skipped += 1;
            continue;
        }
        let roster = roster_for_item(item)?;
        let mut predicted = Vec::with_capacity(comments.len());
        let mut relevance = Vec::with_capacity(comments.len());
        for comment in &comments {
            let outcome = simulate_engagement(
                item,
                &comment.text,
                &roster,
                judge,
                AggregationMode::WeightedMean,
                in_flight,
            )?;
            predicted.push(outcome.ubs);
            relevance.push(((comment.like_count as f64) + 1.0).ln());
        }
        let max_rel = relevance.iter().cloned().fold(f64::MIN, f64::max);
        if max_rel > 0.0 {
            for r in relevance.iter_mut() {
                *r /= max_rel;
            }
        }
        let ndcg = ndcg_at_k(&predicted, &relevance, comments.len())?;
        per_item.push(ItemNdcg {
            content_id: item.id.clone(),
            ndcg,
            comment_count: comments.len(),
        });
    }
    if per_item.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mean = per_item.iter().map(|i| i.ndcg).sum::<f64>() / per_item.len() as f64;
    Ok(ValidationReport {
        mean_ndcg: mean,
        items_evaluated: per_item.len(),
        items_skipped: skipped,
        per_item,
    })
}
