//! Agent-based engagement scoring.
//!
//! Every roster agent is prompted with its subgroup persona plus the
//! content and comment; the judge returns a like-probability in [0,1].
//! Subgroup means, gated by interaction propensity, aggregate to the
//! 0-100 engagement score under the cell weights.

use serde::{Deserialize, Serialize};

use crate::backends::{fan_out, JudgeBackend};
use crate::error::{Error, Result};
use crate::textnum;
use crate::types::ContentItem;

use super::roster::{AudienceRoster, Stratum};

pub const PERSONA_PROMPT_VERSION: &str = "persona-v1";

/// Per-cell breakdown of an engagement run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubgroupBreakdown {
    pub stratum: Stratum,
    pub name: String,
    pub weight: f64,
    /// Mean like-probability over the cell's successful agents.
    pub mean_like_probability: f64,
    /// Propensity-gated score that entered the aggregate.
    pub gated_score: f64,
    pub agents: usize,
    pub failed_agents: usize,
}

/// Aggregated engagement result.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EngagementOutcome {
    /// Weighted aggregate on 0-100.
    pub ubs: f64,
    pub per_subgroup: Vec<SubgroupBreakdown>,
    /// Like-threshold counting aggregate (fraction of agents whose
    /// gated probability exceeds 0.5, scaled to 0-100); reported only
    /// when requested.
    pub counting_ubs: Option<f64>,
}

/// How agent reactions aggregate into the score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum AggregationMode {
    #[default]
    WeightedMean,
    /// Weighted mean plus the counting variant in the same report.
    WithCounting,
}

pub fn persona_prompt(
    persona: &str,
    subgroup_name: &str,
    item: &ContentItem,
    comment: &str,
    agent_index: usize,
) -> String {
    format!(
        "{persona}\n(Audience member #{agent_index}, segment {subgroup_name}; {version})\n\n\
         You just saw this content:\n\
         Platform: {platform}\nCategory: {category}\nTitle: {title}\n\
         Description: {description}\n\n\
         And this comment under it:\n{comment}\n\n\
         How likely are you to tap like on this comment? Reply with a single \
         probability between 0 and 1.",
        persona = persona.replace("{name}", subgroup_name),
        version = PERSONA_PROMPT_VERSION,
        platform = item.platform,
        category = item.category,
        title = item.title,
        description = item.description,
        comment = comment,
        agent_index = agent_index,
        subgroup_name = subgroup_name,
    )
}

fn parse_probability(reply: &str) -> Option<f64> {
    textnum::first_number(reply).map(|v| textnum::clamp(v, 0.0, 1.0))
}

/// Run the roster against one (item, comment) pair.
///
/// A failed agent is retried once with a resample marker appended to its
/// prompt; if it fails again the subgroup mean simply excludes it. Cells
/// that end up with no successful agents are dropped and the remaining
/// cell weights renormalized.
pub fn simulate_engagement(
    item: &ContentItem,
    comment: &str,
    roster: &AudienceRoster,
    judge: &dyn JudgeBackend,
    mode: AggregationMode,
    in_flight: usize,
) -> Result<EngagementOutcome> {
    // (cell index, agent index) tasks, fanned out concurrently
    let tasks: Vec<(usize, usize)> = roster
        .cells
        .iter()
        .enumerate()
        .flat_map(|(c, cell)| (0..cell.agent_count).map(move |a| (c, a)))
        .collect();

    let results = fan_out(&tasks, in_flight, |_, &(c, a)| {
        let cell = &roster.cells[c];
        let prompt = persona_prompt(&cell.subgroup.persona_template, &cell.subgroup.name, item, comment, a);
        match judge.judge(&prompt).ok().as_deref().and_then(parse_probability) {
            Some(p) => Some(p),
            None => {
                let retry_prompt = format!("{prompt}\n(resample {a})");
                judge.judge(&retry_prompt).ok().as_deref().and_then(parse_probability)
            }
        }
    });

    let mut per_subgroup: Vec<SubgroupBreakdown> = Vec::with_capacity(roster.cells.len());
    for (c, cell) in roster.cells.iter().enumerate() {
        let scores: Vec<f64> = tasks
            .iter()
            .zip(&results)
            .filter(|((tc, _), _)| *tc == c)
            .filter_map(|(_, r)| *r)
            .collect();
        let failed = cell.agent_count - scores.len();
        let mean = if scores.is_empty() {
            0.0
        } else {
            scores.iter().sum::<f64>() / scores.len() as f64
        };
        let gated = textnum::clamp(mean * cell.subgroup.interaction_propensity, 0.0, 1.0);
        per_subgroup.push(SubgroupBreakdown {
            stratum: cell.stratum,
            name: cell.subgroup.name.clone(),
            weight: cell.weight,
            mean_like_probability: mean,
            gated_score: gated,
            agents: cell.agent_count - failed,
            failed_agents: failed,
        });
    }

    let live: Vec<&SubgroupBreakdown> = per_subgroup.iter().filter(|b| b.agents > 0).collect();
    if live.is_empty() {
        return Err(Error::Backend {
            status: None,
            body: "every roster agent failed".into(),
        });
    }
    let weight_total: f64 = live.iter().map(|b| b.weight).sum();
    let ubs = 100.0 * live.iter().map(|b| b.weight * b.gated_score).sum::<f64>() / weight_total;

    let counting_ubs = match mode {
        AggregationMode::WeightedMean => None,
        AggregationMode::WithCounting => {
            // per cell: fraction of agents whose gated probability passes 0.5
            let mut count_sum = 0.0;
            for (c, cell) in roster.cells.iter().enumerate() {
                let breakdown = &per_subgroup[c];
                if breakdown.agents == 0 {
                    continue;
                }
                let liking = tasks
                    .iter()
                    .zip(&results)
                    .filter(|((tc, _), _)| *tc == c)
                    .filter_map(|(_, r)| *r)
                    .filter(|p| p * cell.subgroup.interaction_propensity > 0.5)
                    .count();
                count_sum += cell.weight * (liking as f64 / breakdown.agents as f64);
            }
            Some(100.0 * count_sum / weight_total)
        }
    };

    Ok(EngagementOutcome {
        ubs,
        per_subgroup,
        counting_ubs,
    })
}
