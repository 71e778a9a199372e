//! Style-resonant comment generation.
//!
//! Historical popular comments define a per-dimension resonance field
//! (intensity plus orientation); a new comment is planned to align with
//! the field, realized several times under the same style configuration,
//! and the most coherent realization is emitted. Aligned styles reinforce
//! each other; incongruent ones get suppressed by the planner.

mod decompose;
mod field;
mod planner;
mod pipeline;
mod prompts;
mod superpose;

pub use decompose::decompose_style;
pub use field::{build_resonance_field, interaction_score};
pub use pipeline::{
    generate_comment, retrieve_similar, CandidateTrace, GenerationTrace, PipelineConfig,
    Retrieved, RetrievedTrace, RetrievalConfig, TRACE_SCHEMA_VERSION,
};
pub use planner::{alignment_energy, plan_alignment, PlannerConfig};
pub use prompts::{
    generation_prompt, intensity_band, refine_prompt, GENERATION_PROMPT_VERSION,
    REFINE_PROMPT_VERSION,
};
pub use superpose::{coherence, collapse, superpose, SuperpositionConfig};
