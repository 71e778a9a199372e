//! Exact-match METEOR with the metric's canonical parameters.
//!
//! Alignment is leftmost-greedy over surface forms, each reference token
//! matched at most once. No stemming or synonymy stages: the corpus is
//! mixed-language and those resources are single-language.

const ALPHA: f64 = 0.9;
const BETA: f64 = 3.0;
const GAMMA: f64 = 0.5;

/// `F_mean * (1 - gamma * (chunks/matches)^beta)`; zero matches score 0.
pub fn meteor(candidate: &[String], reference: &[String]) -> f64 {
    if candidate.is_empty() || reference.is_empty() {
        return 0.0;
    }

    // leftmost-greedy alignment: candidate index -> reference index
    let mut ref_taken = vec![false; reference.len()];
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (ci, token) in candidate.iter().enumerate() {
        for (ri, ref_token) in reference.iter().enumerate() {
            if !ref_taken[ri] && token == ref_token {
                ref_taken[ri] = true;
                pairs.push((ci, ri));
                break;
            }
        }
    }
    let matches = pairs.len();
    if matches == 0 {
        return 0.0;
    }

    let precision = matches as f64 / candidate.len() as f64;
    let recall = matches as f64 / reference.len() as f64;
    let f_mean = precision * recall / (ALPHA * precision + (1.0 - ALPHA) * recall);

    // a chunk extends while both candidate and reference indices advance by 1
    let mut chunks = 1usize;
    for window in pairs.windows(2) {
        let (pc, pr) = window[0];
        let (cc, cr) = window[1];
        if cc != pc + 1 || cr != pr + 1 {
            chunks += 1;
        }
    }

    let penalty = GAMMA * (chunks as f64 / matches as f64).powf(BETA);
    f_mean * (1.0 - penalty)
}
