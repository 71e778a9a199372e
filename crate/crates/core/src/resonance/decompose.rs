//! Style decomposition: a judge scores each of the four dimensions and
//! supplies a one-sentence rationale whose embedding becomes the
//! dimension's orientation.
//!
//! With a stub judge there is no rationale, so the orientation falls back
//! to the embedding of the text plus the dimension tag, which keeps the
//! whole decomposition deterministic.

use crate::backends::{EmbedderBackend, JudgeBackend};
use crate::error::{Error, Result};
use crate::style_judge::rubric;
use crate::textnum;
use crate::types::{ContentItem, StyleComponent, StyleDimension};
use crate::vector;

fn parse_score_and_rationale(reply: &str) -> Option<(f64, Option<String>)> {
    let score = textnum::number_after_key(reply, &["score"])
        .or_else(|| textnum::first_number(reply))?;
    let rationale = reply
        .lines()
        .find_map(|line| {
            let lower = line.to_lowercase();
            lower
                .find("rationale:")
                .map(|pos| line[pos + "rationale:".len()..].trim().to_string())
        })
        .filter(|r| !r.is_empty());
    Some((textnum::clamp(score, 0.0, 100.0), rationale))
}

/// Decompose one text into its four style components.
pub fn decompose_style(
    text: &str,
    context: &ContentItem,
    judge: &dyn JudgeBackend,
    embedder: &dyn EmbedderBackend,
) -> Result<[StyleComponent; 4]> {
    let mut components: Vec<StyleComponent> = Vec::with_capacity(4);
    for &dim in &StyleDimension::ALL {
        let prompt = rubric::score_with_rationale_prompt(text, context, dim);
        let mut parsed: Option<(f64, Option<String>)> = None;
        let mut last_reply = String::new();
        for _attempt in 0..2 {
            let reply = judge.judge(&prompt)?;
            if let Some(p) = parse_score_and_rationale(&reply) {
                parsed = Some(p);
                break;
            }
            last_reply = reply;
        }
        let (score, rationale) =
            parsed.ok_or(Error::JudgeUnparseable { reply: last_reply })?;
        let intensity = score / 100.0;

        let component = if intensity == 0.0 {
            StyleComponent::zero(dim, embedder.dimension())
        } else {
            let orientation_text =
                rationale.unwrap_or_else(|| format!("{} [{}]", text, dim.tag()));
            let raw = embedder.embed_one(&orientation_text)?;
            let unit = vector::normalize_or_zero(&raw);
            if vector::is_zero(&unit) {
                StyleComponent::zero(dim, embedder.dimension())
            } else {
                StyleComponent::new(dim, intensity, unit)?
            }
        };
        components.push(component);
    }
    Ok(components.try_into().expect("four dimensions"))
}
