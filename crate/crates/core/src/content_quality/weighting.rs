//! Engagement-based reference weights.
//!
//! Like counts are normalized against the most-liked reference and mapped
//! through a Gaussian bump so influential references contribute more while
//! low-engagement ones stay above a floor.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightingConfig {
    #[serde(default = "default_floor")]
    pub floor: f64,
    #[serde(default = "default_ceil")]
    pub ceil: f64,
    #[serde(default = "default_sigma")]
    pub sigma: f64,
}

fn default_floor() -> f64 {
    0.6
}

fn default_ceil() -> f64 {
    1.0
}

fn default_sigma() -> f64 {
    0.5
}

impl Default for WeightingConfig {
    fn default() -> Self {
        WeightingConfig {
            floor: default_floor(),
            ceil: default_ceil(),
            sigma: default_sigma(),
        }
    }
}

impl WeightingConfig {
    pub fn validate(&self) -> crate::error::Result<()> {
        if !(0.0 < self.floor && self.floor < self.ceil && self.ceil <= 1.0) {
            return Err(crate::error::Error::InvalidConfig(format!(
                "weighting bounds must satisfy 0 < floor < ceil <= 1, got [{}, {}]",
                self.floor, self.ceil
            )));
        }
        if self.sigma <= 0.0 {
            return Err(crate::error::Error::InvalidConfig(
                "weighting sigma must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// `w_j = floor + (ceil - floor) * exp(-(1 - z_j)^2 / (2 sigma^2))` with
/// `z_j = like_j / max_like`. All-zero like counts weight everything at the
/// ceiling; the top reference always gets exactly the ceiling.
pub fn reference_weights(like_counts: &[u64], cfg: &WeightingConfig) -> Vec<f64> {
    let max_like = like_counts.iter().copied().max().unwrap_or(0);
    like_counts
        .iter()
        .map(|&likes| {
            let z = if max_like == 0 {
                1.0
            } else {
                likes as f64 / max_like as f64
            };
            let bump = (-(1.0 - z) * (1.0 - z) / (2.0 * cfg.sigma * cfg.sigma)).exp();
            cfg.floor + (cfg.ceil - cfg.floor) * bump
        })
        .collect()
}
