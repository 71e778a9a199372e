//! Judge-scored stylistic quality: four dimension scores and their mean.
//!
//! A panel of one or more judge backends scores each dimension on 0-100;
//! per-dimension scores are averaged across judges, and the mean of the
//! four dimension averages is the stylistic resonance score. A judge that
//! fails (after one retry) is dropped as long as at least one succeeds,
//! and the drop is recorded for the report.

pub mod rubric;

pub use rubric::{dimension_rubric, score_prompt, RUBRIC_VERSION};

use serde::{Deserialize, Serialize};

use crate::backends::{fan_out, JudgeBackend};
use crate::error::{Error, Result};
use crate::textnum;
use crate::types::{ContentItem, StyleDimension};

/// Per-dimension scores plus their mean, all on 0-100.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StyleScores {
    pub le: f64,
    pub ci: f64,
    pub er: f64,
    pub sci: f64,
    pub srs: f64,
}

impl StyleScores {
    pub fn from_dimensions(dims: [f64; 4]) -> Self {
        StyleScores {
            le: dims[0],
            ci: dims[1],
            er: dims[2],
            sci: dims[3],
            srs: dims.iter().sum::<f64>() / 4.0,
        }
    }

    pub fn dimension(&self, dim: StyleDimension) -> f64 {
        match dim {
            StyleDimension::LE => self.le,
            StyleDimension::CI => self.ci,
            StyleDimension::ER => self.er,
            StyleDimension::SCI => self.sci,
        }
    }
}

/// A set of judge backends plus the rubric they were prompted with.
pub struct JudgePanel<'a> {
    pub judges: Vec<&'a dyn JudgeBackend>,
    pub rubric_version: String,
    /// Concurrent judge calls in flight.
    pub in_flight: usize,
}

impl<'a> JudgePanel<'a> {
    pub fn new(judges: Vec<&'a dyn JudgeBackend>) -> Result<Self> {
        if judges.is_empty() {
            return Err(Error::InvalidConfig("judge panel must be nonempty".into()));
        }
        Ok(JudgePanel {
            judges,
            rubric_version: RUBRIC_VERSION.to_string(),
            in_flight: 4,
        })
    }
}

/// Outcome of a panel evaluation, including which judges were dropped.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StyleJudgement {
    pub scores: StyleScores,
    /// (judge index, dimension tag) pairs that failed after retry.
    pub dropped: Vec<(usize, String)>,
}

/// Score one dimension with one judge: prompt, parse, clamp; one retry on
/// an unparseable reply.
pub fn judge_dimension(
    comment: &str,
    context: &ContentItem,
    dim: StyleDimension,
    judge: &dyn JudgeBackend,
) -> Result<f64> {
    let prompt = rubric::score_prompt(comment, context, dim);
    let mut last_reply = String::new();
    for _attempt in 0..2 {
        let reply = judge.judge(&prompt)?;
        if let Some(value) = textnum::first_number(&reply) {
            return Ok(textnum::clamp(value, 0.0, 100.0));
        }
        last_reply = reply;
    }
    Err(Error::JudgeUnparseable { reply: last_reply })
}

/// Score all four dimensions across the panel.
///
/// Judge calls fan out concurrently; results are averaged in (dimension,
/// judge index) order so the outcome never depends on scheduling.
pub fn score_style(
    comment: &str,
    context: &ContentItem,
    panel: &JudgePanel,
) -> Result<StyleJudgement> {
    let tasks: Vec<(StyleDimension, usize)> = StyleDimension::ALL
        .iter()
        .flat_map(|&dim| (0..panel.judges.len()).map(move |j| (dim, j)))
        .collect();

    let results = fan_out(&tasks, panel.in_flight, |_, &(dim, judge_idx)| {
        judge_dimension(comment, context, dim, panel.judges[judge_idx])
    });

    // tasks were built dimension-major, so one ordered pass accumulates
    // per-dimension sums in the stabilized (dimension, judge index) order
    let mut sums = [0.0f64; 4];
    let mut counts = [0usize; 4];
    let mut dropped: Vec<(usize, String)> = Vec::new();
    let mut first_err: Option<Error> = None;
    for ((dim, judge_idx), result) in tasks.into_iter().zip(results) {
        match result {
            Ok(score) => {
                sums[dim.index()] += score;
                counts[dim.index()] += 1;
            }
            Err(e) => {
                dropped.push((judge_idx, dim.tag().to_string()));
                if first_err.is_none() {
                    first_err = Some(e);
                }
            }
        }
    }
    let mut dims = [0.0f64; 4];
    for (d, &dim) in StyleDimension::ALL.iter().enumerate() {
        if counts[d] == 0 {
            // every judge failed this dimension; surface the original error
            return Err(first_err.unwrap_or_else(|| Error::JudgeUnparseable {
                reply: format!("no judge scored {}", dim.tag()),
            }));
        }
        dims[d] = sums[d] / counts[d] as f64;
    }

    Ok(StyleJudgement {
        scores: StyleScores::from_dimensions(dims),
        dropped,
    })
}
