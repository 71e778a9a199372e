//! Alignment-driven style planning.
//!
//! Exhaustive search over a small intensity grid and per-dimension
//! orientation pools for the configuration maximizing
//! `sum_{i<j} A_i A_j (d_i . dbar_j) - lambda * sum_i A_i^2`.
//! The quadratic penalty keeps the objective from saturating at all-ones
//! whenever every interaction is positive; the stored alignment energy is
//! always the unpenalized sum.
//!
//! The interaction term pairs the candidate direction of the lower-index
//! dimension with the community direction of the higher one; the printed
//! form is asymmetric and is implemented as written.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{CandidatePlan, ResonanceField, StyleComponent, StyleDimension};
use crate::vector;

use super::field::interaction_score;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlannerConfig {
    /// Sorted candidate intensities; must include 0 and 1.
    #[serde(default = "default_grid")]
    pub intensity_grid: Vec<f64>,
    /// Max orientations per dimension when pools are built from retrieval.
    #[serde(default = "default_pool_size")]
    pub orientation_pool_size: usize,
    /// Quadratic intensity penalty weight (lambda).
    #[serde(default = "default_penalty")]
    pub intensity_penalty: f64,
}

fn default_grid() -> Vec<f64> {
    vec![0.0, 0.25, 0.5, 0.75, 1.0]
}

fn default_pool_size() -> usize {
    5
}

fn default_penalty() -> f64 {
    0.1
}

impl Default for PlannerConfig {
    fn default() -> Self {
        PlannerConfig {
            intensity_grid: default_grid(),
            orientation_pool_size: default_pool_size(),
            intensity_penalty: default_penalty(),
        }
    }
}

impl PlannerConfig {
    pub fn validate(&self) -> Result<()> {
        let grid = &self.intensity_grid;
        if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig(
                "intensity grid must be sorted and strictly increasing".into(),
            ));
        }
        if grid.iter().any(|a| !(0.0..=1.0).contains(a)) {
            return Err(Error::InvalidConfig("intensities must lie in [0,1]".into()));
        }
        if grid.first() != Some(&0.0) || grid.last() != Some(&1.0) {
            return Err(Error::InvalidConfig("intensity grid must contain 0 and 1".into()));
        }
        if self.intensity_penalty < 0.0 {
            return Err(Error::InvalidConfig("intensity penalty must be nonnegative".into()));
        }
        if self.orientation_pool_size == 0 {
            return Err(Error::InvalidConfig("orientation pool size must be positive".into()));
        }
        Ok(())
    }
}

/// Unpenalized objective of a candidate configuration against the field,
/// pairs summed in canonical (0,1),(0,2),(0,3),(1,2),(1,3),(2,3) order.
pub fn alignment_energy(components: &[StyleComponent; 4], field: &ResonanceField) -> f64 {
    let mut energy = 0.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            energy += components[i].intensity
                * components[j].intensity
                * interaction_score(&components[i].orientation, &field.components[j].orientation);
        }
    }
    energy
}

/// Exhaustive plan search.
///
/// Ties break toward the lexicographically smaller intensity tuple, then
/// smaller pool indices. A zero pool direction admits only zero intensity
/// (there is no style direction to be intense about).
#[allow(clippy::needless_range_loop)] // index tuples mirror the search-space structure
pub fn plan_alignment(
    field: &ResonanceField,
    orientation_pools: &[Vec<Vec<f64>>; 4],
    cfg: &PlannerConfig,
) -> Result<CandidatePlan> {
    cfg.validate()?;
    for (d, pool) in orientation_pools.iter().enumerate() {
        if pool.is_empty() {
            return Err(Error::empty_pool(format!(
                "orientation pool for dimension {} is empty",
                StyleDimension::ALL[d].tag()
            )));
        }
        for direction in pool {
            if direction.len() != field.dim_len() {
                return Err(Error::LengthMismatch {
                    left: direction.len(),
                    right: field.dim_len(),
                });
            }
        }
    }

    // interactions[i][p][j] = pool_i[p] . dbar_j
    let interactions: Vec<Vec<[f64; 4]>> = orientation_pools
        .iter()
        .map(|pool| {
            pool.iter()
                .map(|dir| {
                    let mut row = [0.0; 4];
                    for (j, slot) in row.iter_mut().enumerate() {
                        *slot = interaction_score(dir, &field.components[j].orientation);
                    }
                    row
                })
                .collect()
        })
        .collect();
    let zero_dir: Vec<Vec<bool>> = orientation_pools
        .iter()
        .map(|pool| pool.iter().map(|d| vector::is_zero(d)).collect())
        .collect();

    let grid = &cfg.intensity_grid;
    let lambda = cfg.intensity_penalty;

    let mut best_score = f64::NEG_INFINITY;
    let mut best: Option<([f64; 4], [usize; 4])> = None;

    // intensities iterate outermost so the first strict maximum is the
    // lexicographically smallest argmax
    for &a0 in grid {
        for &a1 in grid {
            for &a2 in grid {
                for &a3 in grid {
                    let a = [a0, a1, a2, a3];
                    let penalty = lambda * (a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3);
                    for p0 in 0..orientation_pools[0].len() {
                        if a0 > 0.0 && zero_dir[0][p0] {
                            continue;
                        }
                        for p1 in 0..orientation_pools[1].len() {
                            if a1 > 0.0 && zero_dir[1][p1] {
                                continue;
                            }
                            for p2 in 0..orientation_pools[2].len() {
                                if a2 > 0.0 && zero_dir[2][p2] {
                                    continue;
                                }
                                for p3 in 0..orientation_pools[3].len() {
                                    if a3 > 0.0 && zero_dir[3][p3] {
                                        continue;
                                    }
                                    let p = [p0, p1, p2, p3];
                                    let mut energy = 0.0;
                                    for i in 0..4 {
                                        for j in (i + 1)..4 {
                                            energy += a[i] * a[j] * interactions[i][p[i]][j];
                                        }
                                    }
                                    let score = energy - penalty;
                                    if score > best_score {
                                        best_score = score;
                                        best = Some((a, p));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let (a, p) = best.ok_or_else(|| Error::empty_pool("no admissible configuration"))?;
    let components: Vec<StyleComponent> = StyleDimension::ALL
        .iter()
        .enumerate()
        .map(|(i, &dim)| {
            let direction = orientation_pools[i][p[i]].clone();
            if a[i] == 0.0 && vector::is_zero(&direction) {
                Ok(StyleComponent::zero(dim, field.dim_len()))
            } else {
                StyleComponent::new(dim, a[i], direction)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let components: [StyleComponent; 4] = components.try_into().expect("four dimensions");
    let energy = alignment_energy(&components, field);
    Ok(CandidatePlan {
        components,
        alignment_energy: energy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aligned_field(direction: &[f64]) -> ResonanceField {
        let components = StyleDimension::ALL
            .map(|dim| StyleComponent::new(dim, 0.5, direction.to_vec()).unwrap());
        ResonanceField::from_components(components, 1).unwrap()
    }

    #[test]
    fn all_aligned_unpenalized_optimum_is_six() {
        let dir = vec![1.0, 0.0];
        let field = aligned_field(&dir);
        let pools: [Vec<Vec<f64>>; 4] = std::array::from_fn(|_| vec![dir.clone()]);
        let cfg = PlannerConfig {
            intensity_penalty: 0.0,
            ..PlannerConfig::default()
        };
        let plan = plan_alignment(&field, &pools, &cfg).unwrap();
        for c in &plan.components {
            assert_eq!(c.intensity, 1.0);
        }
        // C(4,2) pairs, each contributing 1
        assert!((plan.alignment_energy - 6.0).abs() < 1e-12);
    }

    #[test]
    fn incongruent_dimension_is_suppressed() {
        // dimension 0's only direction opposes every community direction;
        // under the literal pairing it poisons pairs (0,1),(0,2),(0,3)
        let dir = vec![1.0, 0.0];
        let anti = vec![-1.0, 0.0];
        let field = aligned_field(&dir);
        let pools: [Vec<Vec<f64>>; 4] = [
            vec![anti],
            vec![dir.clone()],
            vec![dir.clone()],
            vec![dir.clone()],
        ];
        let cfg = PlannerConfig {
            intensity_penalty: 0.0,
            ..PlannerConfig::default()
        };
        let plan = plan_alignment(&field, &pools, &cfg).unwrap();
        assert_eq!(plan.components[0].intensity, 0.0);
        for c in &plan.components[1..] {
            assert_eq!(c.intensity, 1.0);
        }
    }

    #[test]
    fn huge_penalty_zeroes_everything() {
        let dir = vec![1.0, 0.0];
        let field = aligned_field(&dir);
        let pools: [Vec<Vec<f64>>; 4] = std::array::from_fn(|_| vec![dir.clone()]);
        let cfg = PlannerConfig {
            intensity_penalty: 100.0,
            ..PlannerConfig::default()
        };
        let plan = plan_alignment(&field, &pools, &cfg).unwrap();
        for c in &plan.components {
            assert_eq!(c.intensity, 0.0);
        }
        assert_eq!(plan.alignment_energy, 0.0);
    }

    #[test]
    fn stored_energy_matches_recomputation() {
        let dir = vec![0.6, 0.8];
        let other = vec![0.8, -0.6];
        let field = aligned_field(&dir);
        let pools: [Vec<Vec<f64>>; 4] = [
            vec![dir.clone(), other.clone()],
            vec![other.clone(), dir.clone()],
            vec![dir.clone()],
            vec![other, dir],
        ];
        let plan = plan_alignment(&field, &pools, &PlannerConfig::default()).unwrap();
        let recomputed = alignment_energy(&plan.components, &field);
        assert!((plan.alignment_energy - recomputed).abs() < 1e-9);
    }

    #[test]
    fn empty_pool_is_an_error() {
        let dir = vec![1.0, 0.0];
        let field = aligned_field(&dir);
        let pools: [Vec<Vec<f64>>; 4] = [vec![dir.clone()], vec![], vec![dir.clone()], vec![dir]];
        assert!(matches!(
            plan_alignment(&field, &pools, &PlannerConfig::default()),
            Err(Error::EmptyPool { .. })
        ));
    }

    #[test]
    fn zero_direction_admits_only_zero_intensity() {
        let dir = vec![1.0, 0.0];
        let zero = vec![0.0, 0.0];
        let field = aligned_field(&dir);
        let pools: [Vec<Vec<f64>>; 4] = [
            vec![dir.clone()],
            vec![dir.clone()],
            vec![dir],
            vec![zero],
        ];
        let cfg = PlannerConfig {
            intensity_penalty: 0.0,
            ..PlannerConfig::default()
        };
        let plan = plan_alignment(&field, &pools, &cfg).unwrap();
        assert_eq!(plan.components[3].intensity, 0.0);
    }

    #[test]
    fn grid_must_contain_zero_and_one() {
        let cfg = PlannerConfig {
            intensity_grid: vec![0.25, 0.5, 1.0],
            ..PlannerConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
