//! Unigram BLEU with brevity penalty.

use std::collections::HashMap;

/// Clipped unigram precision times the brevity penalty
/// `min(1, exp(1 - r/c))`. An empty candidate scores 0.
pub fn bleu1(candidate: &[String], reference: &[String]) -> f64 {
    if candidate.is_empty() {
        return 0.0;
    }
    let mut ref_counts: HashMap<&str, usize> = HashMap::new();
    for token in reference {
        *ref_counts.entry(token.as_str()).or_default() += 1;
    }
    let mut clipped = 0usize;
    for token in candidate {
        if let Some(budget) = ref_counts.get_mut(token.as_str()) {
            if *budget > 0 {
                *budget -= 1;
                clipped += 1;
            }
        }
    }
    let precision = clipped as f64 / candidate.len() as f64;
    let bp = (1.0 - reference.len() as f64 / candidate.len() as f64)
        .exp()
        .min(1.0);
    precision * bp
}
