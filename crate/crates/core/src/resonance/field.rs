//! Field aggregation: weighted averaging of per-comment style components
//! into the community's resonance field, and the interaction score between
//! candidate and community directions.

use crate::error::{Error, Result};
use crate::types::{ResonanceField, StyleComponent, StyleDimension};
use crate::vector;

/// Aggregate per-comment decompositions into a field.
///
/// Per dimension: the weighted mean intensity and the unit-normalized
/// weighted mean orientation. Opposing orientations cancel; when the mean
/// orientation vanishes the dimension's intensity is forced to zero
/// (destructive interference leaves no coherent direction to prefer).
pub fn build_resonance_field(
    decompositions: &[[StyleComponent; 4]],
    weights: Option<&[f64]>,
) -> Result<ResonanceField> {
    if decompositions.is_empty() {
        return Err(Error::EmptyInput);
    }
    let uniform = vec![1.0; decompositions.len()];
    let weights = match weights {
        Some(w) => {
            if w.len() != decompositions.len() {
                return Err(Error::LengthMismatch {
                    left: w.len(),
                    right: decompositions.len(),
                });
            }
            w
        }
        None => &uniform,
    };
    let weight_total: f64 = weights.iter().sum();
    if weight_total <= 0.0 {
        return Err(Error::InvalidArgument("weights must sum to > 0".into()));
    }
    let dim_len = decompositions[0][0].orientation.len();

    let mut components: Vec<StyleComponent> = Vec::with_capacity(4);
    for (d, &dim) in StyleDimension::ALL.iter().enumerate() {
        let mut mean_intensity = 0.0;
        let mut mean_orientation = vec![0.0; dim_len];
        for (decomposition, &w) in decompositions.iter().zip(weights) {
            let component = &decomposition[d];
            mean_intensity += w * component.intensity;
            vector::add_scaled(&mut mean_orientation, &component.orientation, w);
        }
        mean_intensity /= weight_total;
        let unit = vector::normalize_or_zero(&mean_orientation);
        if vector::is_zero(&unit) {
            components.push(StyleComponent::zero(dim, dim_len));
        } else {
            components.push(StyleComponent::new(dim, mean_intensity, unit)?);
        }
    }

    ResonanceField::from_components(
        components.try_into().expect("four dimensions"),
        decompositions.len(),
    )
}

/// Dot product between a candidate direction and a community direction;
/// zero vectors score 0. Clamped to [-1, 1] against rounding drift.
pub fn interaction_score(candidate_dir: &[f64], community_dir: &[f64]) -> f64 {
    vector::dot(candidate_dir, community_dir).clamp(-1.0, 1.0)
}
