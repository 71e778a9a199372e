//! User behavior simulation: a two-level audience hierarchy (interested
//! vs casual strata over demographic-prior subgroups), agent-based
//! engagement scoring, and a within-item NDCG validation harness.

mod engagement;
mod exposure;
mod ndcg;
mod roster;

pub use engagement::{
    persona_prompt, simulate_engagement, AggregationMode, EngagementOutcome, SubgroupBreakdown,
    PERSONA_PROMPT_VERSION,
};
pub use exposure::{
    compute_interested_share, determinant_prompt, elicit_determinants, elicit_share_directly,
    EsiConfig, ExposureDeterminants, ShareMode, DETERMINANT_PROMPT_VERSION, SHARE_PROMPT_VERSION,
};
pub use ndcg::{ndcg_at_k, validate_simulator, ItemNdcg, ValidationReport};
pub use roster::{
    build_audience, AudienceRoster, DemographicPriors, RosterCell, Stratum, SubgroupPrior,
};
