//! Versioned rubric prompts for the four stylistic dimensions.
//!
//! Prompts are checked-in artifacts: a judged score is only comparable to
//! another if both were produced under the same rubric version, so reports
//! echo [`RUBRIC_VERSION`] in their provenance block.

use crate::types::{ContentItem, StyleDimension};

pub const RUBRIC_VERSION: &str = "rubric-v1";

/// What each dimension rewards. Written for a judge model: concrete
/// observable signals, not abstractions.
pub fn dimension_rubric(dim: StyleDimension) -> &'static str {
    match dim {
        StyleDimension::LE => {
            "Linguistic Expression: reward rhetorical craft and writing artistry - humor, \
             irony, metaphor, rhythm, wordplay, and fluent phrasing that make the comment \
             vivid and readable. Penalize flat, mechanical wording."
        }
        StyleDimension::CI => {
            "Creative Imagination: reward originality and associative leaps - linking \
             distant ideas, building unexpected or imaginative scenarios, reframing the \
             topic in a surprising way. Penalize stock phrases and predictable reactions."
        }
        StyleDimension::ER => {
            "Emotional Resonance: reward affective depth and a clear attitudinal stance - \
             comments that evoke empathy, carry genuine sentiment, or land a strong \
             emotional tone readers feel. Penalize detached or emotionless statements."
        }
        StyleDimension::SCI => {
            "Social and Cultural Influence: reward propagation potential - memes, cultural \
             references, catchphrases, and intertextual hooks that invite sharing, \
             imitation, and collective riffing. Penalize insular phrasing with no handles \
             for a community to pick up."
        }
    }
}

/// Prompt asking for a single 0-100 integer score on one dimension.
pub fn score_prompt(comment: &str, context: &ContentItem, dim: StyleDimension) -> String {
    format!(
        "You are scoring one online comment on a single stylistic dimension.\n\
         Rubric ({version}): {rubric}\n\n\
         Content the comment replies to:\n\
         Title: {title}\n\
         Category: {category}\n\
         Description: {description}\n\n\
         Comment:\n{comment}\n\n\
         Reply with a single integer from 0 to 100 on its own line. No other text.",
        version = RUBRIC_VERSION,
        rubric = dimension_rubric(dim),
        title = context.title,
        category = context.category,
        description = context.description,
        comment = comment,
    )
}

/// Prompt asking for a score plus a one-sentence rationale; used when the
/// caller also needs an orientation text for the dimension.
pub fn score_with_rationale_prompt(
    comment: &str,
    context: &ContentItem,
    dim: StyleDimension,
) -> String {
    format!(
        "You are analyzing one online comment on a single stylistic dimension.\n\
         Rubric ({version}): {rubric}\n\n\
         Content the comment replies to:\n\
         Title: {title}\n\
         Category: {category}\n\n\
         Comment:\n{comment}\n\n\
         Reply with exactly two lines:\n\
         score: <integer 0-100>\n\
         rationale: <one sentence describing how this comment expresses {tag}>",
        version = RUBRIC_VERSION,
        rubric = dimension_rubric(dim),
        title = context.title,
        category = context.category,
        comment = comment,
        tag = dim.name(),
    )
}
