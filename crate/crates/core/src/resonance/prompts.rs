//! Versioned prompt templates for the generation pipeline.

use crate::types::{CandidatePlan, ContentItem, StyleDimension};

pub const GENERATION_PROMPT_VERSION: &str = "gen-v1";
pub const REFINE_PROMPT_VERSION: &str = "refine-v1";

// markers shared with the stub generator, which echoes exemplars back
pub use crate::backends::{EXEMPLAR_CLOSE, EXEMPLAR_OPEN};

/// Qualitative band for a planned intensity.
pub fn intensity_band(intensity: f64) -> &'static str {
    if intensity < 0.125 {
        "none"
    } else if intensity < 0.375 {
        "low"
    } else if intensity < 0.625 {
        "medium"
    } else if intensity < 0.875 {
        "high"
    } else {
        "max"
    }
}

/// Build the style-conditioned generation prompt: context, per-dimension
/// intensity bands, and exemplar comments from retrieval.
pub fn generation_prompt(
    context: &ContentItem,
    plan: &CandidatePlan,
    exemplars: &[String],
) -> String {
    let mut bands = String::new();
    for (component, &dim) in plan.components.iter().zip(&StyleDimension::ALL) {
        bands.push_str(&format!(
            "- {} ({}): {}\n",
            dim.name(),
            dim.tag(),
            intensity_band(component.intensity)
        ));
    }
    let mut exemplar_block = String::new();
    if !exemplars.is_empty() {
        exemplar_block.push_str(EXEMPLAR_OPEN);
        exemplar_block.push('\n');
        for exemplar in exemplars {
            // keep each exemplar on one line so the block stays parseable
            exemplar_block.push_str(&exemplar.replace('\n', " "));
            exemplar_block.push('\n');
        }
        exemplar_block.push_str(EXEMPLAR_CLOSE);
        exemplar_block.push('\n');
    }
    format!(
        "Write one short comment for this content. ({version})\n\n\
         Platform: {platform}\nCategory: {category}\nTitle: {title}\n\
         Description: {description}\n\n\
         Target style intensities:\n{bands}\n\
         Comments this community loved:\n{exemplars}\n\
         Reply with the comment text only.",
        version = GENERATION_PROMPT_VERSION,
        platform = context.platform,
        category = context.category,
        title = context.title,
        description = context.description,
        bands = bands,
        exemplars = exemplar_block,
    )
}

/// Single-pass refinement prompt for the collapsed candidate.
pub fn refine_prompt(text: &str) -> String {
    format!(
        "Polish this comment for clarity. Preserve its meaning, style and \
         length; fix only awkward wording. ({REFINE_PROMPT_VERSION})\n\n{text}\n\n\
         Reply with the polished comment text only."
    )
}
