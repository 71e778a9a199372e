//! Exposure modeling: the interested-user share for a (platform, category)
//! pair, adjusted by five content-level determinants of selective exposure.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::backends::JudgeBackend;
use crate::error::{Error, Result};
use crate::textnum;
use crate::types::ContentItem;

/// Signed adjustment strengths, each in [-1, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExposureDeterminants {
    pub channel_verticality: f64,
    pub distribution_channel: f64,
    pub event_salience: f64,
    pub emotional_arousal: f64,
    pub authority_involvement: f64,
}

impl ExposureDeterminants {
    pub const NEUTRAL: ExposureDeterminants = ExposureDeterminants {
        channel_verticality: 0.0,
        distribution_channel: 0.0,
        event_salience: 0.0,
        emotional_arousal: 0.0,
        authority_involvement: 0.0,
    };

    pub fn sum(&self) -> f64 {
        self.channel_verticality
            + self.distribution_channel
            + self.event_salience
            + self.emotional_arousal
            + self.authority_involvement
    }

    fn clamped(self) -> Self {
        let c = |v: f64| textnum::clamp(v, -1.0, 1.0);
        ExposureDeterminants {
            channel_verticality: c(self.channel_verticality),
            distribution_channel: c(self.distribution_channel),
            event_salience: c(self.event_salience),
            emotional_arousal: c(self.emotional_arousal),
            authority_involvement: c(self.authority_involvement),
        }
    }
}

/// How the interested share is obtained: the linear adjustment rule, or a
/// judge that outputs the share directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ShareMode {
    #[default]
    Linear,
    JudgeDirect,
}

/// Baseline exposure exclusivity per (platform, category) pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EsiConfig {
    /// Fallback base when no pair-specific entry exists.
    #[serde(default = "default_base")]
    pub default_base: f64,
    /// Keys are "platform/category".
    #[serde(default)]
    pub bases: BTreeMap<String, f64>,
    #[serde(default = "default_gain")]
    pub determinant_gain: f64,
    #[serde(default = "default_clamp")]
    pub clamp: (f64, f64),
    #[serde(default)]
    pub mode: ShareMode,
}

fn default_base() -> f64 {
    0.3
}

fn default_gain() -> f64 {
    0.15
}

fn default_clamp() -> (f64, f64) {
    (0.01, 0.99)
}

impl Default for EsiConfig {
    fn default() -> Self {
        EsiConfig {
            default_base: default_base(),
            bases: BTreeMap::new(),
            determinant_gain: default_gain(),
            clamp: default_clamp(),
            mode: ShareMode::Linear,
        }
    }
}

impl EsiConfig {
    pub fn validate(&self) -> Result<()> {
        let check = |label: &str, v: f64| {
            if !(0.0 < v && v < 1.0) {
                Err(Error::InvalidConfig(format!(
                    "esi base {label} must lie in (0,1), got {v}"
                )))
            } else {
                Ok(())
            }
        };
        check("default", self.default_base)?;
        for (key, v) in &self.bases {
            check(key, *v)?;
        }
        if self.determinant_gain <= 0.0 {
            return Err(Error::InvalidConfig("determinant_gain must be positive".into()));
        }
        Ok(())
    }

    pub fn base_for(&self, platform: &str, category: &str) -> f64 {
        self.bases
            .get(&format!("{platform}/{category}"))
            .copied()
            .unwrap_or(self.default_base)
    }
}

/// `p_I* = clamp(base + gain * sum(determinants))`; monotone nondecreasing
/// in every determinant.
pub fn compute_interested_share(
    base: f64,
    cfg: &EsiConfig,
    determinants: &ExposureDeterminants,
) -> f64 {
    let raw = base + cfg.determinant_gain * determinants.clamped().sum();
    textnum::clamp(raw, cfg.clamp.0, cfg.clamp.1)
}

pub const DETERMINANT_PROMPT_VERSION: &str = "determinants-v1";

/// Prompt asking a judge to rate the five exposure determinants.
pub fn determinant_prompt(item: &ContentItem) -> String {
    format!(
        "Rate how each factor below shifts the share of *interested* users \
         (as opposed to casual passers-by) exposed to this content. Use a \
         number in [-1, 1] per factor: negative broadens exposure to casual \
         viewers, positive narrows it to interested users. ({version})\n\n\
         Platform: {platform}\nCategory: {category}\nTitle: {title}\n\
         Description: {description}\n\n\
         Reply with exactly five lines:\n\
         channel_verticality: <number>\n\
         distribution_channel: <number>\n\
         event_salience: <number>\n\
         emotional_arousal: <number>\n\
         authority_involvement: <number>",
        version = DETERMINANT_PROMPT_VERSION,
        platform = item.platform,
        category = item.category,
        title = item.title,
        description = item.description,
    )
}

fn parse_determinants(reply: &str) -> Option<ExposureDeterminants> {
    let field = |keys: &[&str]| textnum::number_after_key(reply, keys);
    Some(
        ExposureDeterminants {
            channel_verticality: field(&["channel_verticality", "verticality"])?,
            distribution_channel: field(&["distribution_channel", "distribution"])?,
            event_salience: field(&["event_salience", "salience"])?,
            emotional_arousal: field(&["emotional_arousal", "arousal"])?,
            authority_involvement: field(&["authority_involvement", "authority", "celebrity"])?,
        }
        .clamped(),
    )
}

/// Ask the judge for the five determinants; one retry on an unparseable
/// reply, then an error.
pub fn elicit_determinants(
    item: &ContentItem,
    judge: &dyn JudgeBackend,
) -> Result<ExposureDeterminants> {
    let prompt = determinant_prompt(item);
    let mut last_reply = String::new();
    for _attempt in 0..2 {
        let reply = judge.judge(&prompt)?;
        if let Some(parsed) = parse_determinants(&reply) {
            return Ok(parsed);
        }
        last_reply = reply;
    }
    Err(Error::JudgeUnparseable { reply: last_reply })
}

pub const SHARE_PROMPT_VERSION: &str = "share-v1";

/// Judge-direct mode: the judge outputs the interested share itself.
pub fn elicit_share_directly(item: &ContentItem, judge: &dyn JudgeBackend, cfg: &EsiConfig) -> Result<f64> {
    let prompt = format!(
        "Estimate the fraction of this content's exposed audience that is \
         genuinely interested in the topic (rather than casually passing by). \
         ({version})\n\nPlatform: {platform}\nCategory: {category}\n\
         Title: {title}\n\nReply with a single number in (0, 1).",
        version = SHARE_PROMPT_VERSION,
        platform = item.platform,
        category = item.category,
        title = item.title,
    );
    let mut last_reply = String::new();
    for _attempt in 0..2 {
        let reply = judge.judge(&prompt)?;
        if let Some(value) = textnum::first_number(&reply) {
            return Ok(textnum::clamp(value, cfg.clamp.0, cfg.clamp.1));
        }
        last_reply = reply;
    }
    Err(Error::JudgeUnparseable { reply: last_reply })
}
