//! Audience construction: demographic-prior subgroups allocated to agents
//! under a two-stratum (interested / casual) hierarchy.
//!
//! Subgroup weights ship as a versioned priors file with illustrative,
//! non-authoritative values; the mechanism, not the numbers, is the point.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One demographic subgroup with its interaction tendency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupPrior {
    pub name: String,
    /// Share of the stratum; all weights in a stratum sum to 1.
    pub weight: f64,
    /// Persona text with `{name}` available as a placeholder.
    pub persona_template: String,
    /// Multiplier in [0,1] on the subgroup's like propensity.
    pub interaction_propensity: f64,
}

/// Priors file: subgroups per stratum.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemographicPriors {
    pub version: String,
    pub interested: Vec<SubgroupPrior>,
    pub casual: Vec<SubgroupPrior>,
}

impl DemographicPriors {
    pub fn validate(&self) -> Result<()> {
        for (label, groups) in [("interested", &self.interested), ("casual", &self.casual)] {
            if groups.is_empty() {
                return Err(Error::InvalidPriors(format!("{label} stratum is empty")));
            }
            let total: f64 = groups.iter().map(|g| g.weight).sum();
            if (total - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidPriors(format!(
                    "{label} weights sum to {total}, expected 1"
                )));
            }
            for g in groups {
                if !(0.0 < g.weight && g.weight <= 1.0) {
                    return Err(Error::InvalidPriors(format!(
                        "subgroup {} weight {} outside (0,1]",
                        g.name, g.weight
                    )));
                }
                if !(0.0..=1.0).contains(&g.interaction_propensity) {
                    return Err(Error::InvalidPriors(format!(
                        "subgroup {} propensity {} outside [0,1]",
                        g.name, g.interaction_propensity
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let priors: DemographicPriors = serde_json::from_str(&text).map_err(|e| Error::Parse {
            line: 0,
            message: e.to_string(),
        })?;
        priors.validate()?;
        Ok(priors)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stratum {
    Interested,
    Casual,
}

impl Stratum {
    pub fn tag(self) -> &'static str {
        match self {
            Stratum::Interested => "interested",
            Stratum::Casual => "casual",
        }
    }
}

/// One (stratum x subgroup) cell of the roster.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RosterCell {
    pub stratum: Stratum,
    pub subgroup: SubgroupPrior,
    /// stratum share x subgroup weight; cell weights sum to 1.
    pub weight: f64,
    pub agent_count: usize,
}

/// A concrete audience: agents allocated across cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AudienceRoster {
    pub p_interested: f64,
    pub cells: Vec<RosterCell>,
    pub n_agents: usize,
    pub seed: u64,
}

/// Allocate `n_agents` to (stratum x subgroup) cells by largest-remainder
/// rounding of `stratum share x subgroup weight x n`. Totals are exact and
/// the allocation is deterministic.
pub fn build_audience(
    priors: &DemographicPriors,
    p_interested: f64,
    n_agents: usize,
    seed: u64,
) -> Result<AudienceRoster> {
    priors.validate()?;
    if !(0.0 < p_interested && p_interested < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "p_interested {p_interested} outside (0,1)"
        )));
    }
    if n_agents == 0 {
        return Err(Error::InvalidArgument("n_agents must be positive".into()));
    }

    let mut cells: Vec<RosterCell> = Vec::new();
    for (stratum, share, groups) in [
        (Stratum::Interested, p_interested, &priors.interested),
        (Stratum::Casual, 1.0 - p_interested, &priors.casual),
    ] {
        for subgroup in groups {
            cells.push(RosterCell {
                stratum,
                subgroup: subgroup.clone(),
                weight: share * subgroup.weight,
                agent_count: 0,
            });
        }
    }

    // largest remainder: floors first, leftovers to the biggest fractions
    let mut assigned = 0usize;
    let mut remainders: Vec<(usize, f64, f64)> = Vec::with_capacity(cells.len());
    for (idx, cell) in cells.iter_mut().enumerate() {
        let exact = cell.weight * n_agents as f64;
        cell.agent_count = exact.floor() as usize;
        assigned += cell.agent_count;
        remainders.push((idx, exact - exact.floor(), cell.weight));
    }
    remainders.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap()
            .then(b.2.partial_cmp(&a.2).unwrap())
            .then(a.0.cmp(&b.0))
    });
    let leftover = n_agents - assigned;
    for k in 0..leftover {
        cells[remainders[k % remainders.len()].0].agent_count += 1;
    }

    Ok(AudienceRoster {
        p_interested,
        cells,
        n_agents,
        seed,
    })
}
