//! Shared domain types.
//!
//! Everything here is immutable after construction and all operations on
//! these types are pure, so values can be shared across worker threads
//! freely.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector;

/// Source platform of a content item.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Platform {
    NewsA,
    NewsB,
    VideoA,
    Other(String),
}

impl Platform {
    pub fn as_str(&self) -> &str {
        match self {
            Platform::NewsA => "NewsA",
            Platform::NewsB => "NewsB",
            Platform::VideoA => "VideoA",
            Platform::Other(s) => s,
        }
    }
}

impl From<&str> for Platform {
    fn from(s: &str) -> Self {
        match s {
            "NewsA" => Platform::NewsA,
            "NewsB" => Platform::NewsB,
            "VideoA" => Platform::VideoA,
            other => Platform::Other(other.to_string()),
        }
    }
}

impl std::fmt::Display for Platform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Platform {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Platform {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(Platform::from(s.as_str()))
    }
}

/// Content modality. Video items are represented by their textual metadata
/// only; no media decoding happens anywhere in the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Modality {
    Text,
    Video,
}

/// An article or video with its platform metadata; the evaluation context.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContentItem {
    pub id: String,
    pub platform: Platform,
    pub category: String,
    pub title: String,
    pub keywords: Vec<String>,
    pub description: String,
    /// UTC epoch seconds.
    pub publish_time: i64,
    pub modality: Modality,
}

impl ContentItem {
    /// Textual context used for embeddings: title, joined keywords, and
    /// description on separate lines.
    pub fn context_text(&self) -> String {
        format!(
            "{}\n{}\n{}",
            self.title,
            self.keywords.join(", "),
            self.description
        )
    }
}

/// Popularity label assigned by the labeling module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Label {
    Popular,
    NonPopular,
}

/// A user comment attached to a content item.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comment {
    pub id: String,
    pub content_id: String,
    pub text: String,
    pub like_count: u64,
    /// UTC epoch seconds.
    pub publish_time: i64,
    /// Assigned by the labeling module; never read from raw input corpora.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<Label>,
}

/// The four stylistic dimensions, in their canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StyleDimension {
    /// Linguistic Expression
    LE,
    /// Creative Imagination
    CI,
    /// Emotional Resonance
    ER,
    /// Social and Cultural Influence
    SCI,
}

impl StyleDimension {
    pub const ALL: [StyleDimension; 4] = [
        StyleDimension::LE,
        StyleDimension::CI,
        StyleDimension::ER,
        StyleDimension::SCI,
    ];

    pub fn index(self) -> usize {
        match self {
            StyleDimension::LE => 0,
            StyleDimension::CI => 1,
            StyleDimension::ER => 2,
            StyleDimension::SCI => 3,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            StyleDimension::LE => "LE",
            StyleDimension::CI => "CI",
            StyleDimension::ER => "ER",
            StyleDimension::SCI => "SCI",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StyleDimension::LE => "linguistic expression",
            StyleDimension::CI => "creative imagination",
            StyleDimension::ER => "emotional resonance",
            StyleDimension::SCI => "social and cultural influence",
        }
    }
}

impl std::fmt::Display for StyleDimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// Intensity plus unit orientation for one stylistic dimension.
///
/// Invariant: orientation is unit L2 norm (within 1e-6) unless intensity
/// is zero, in which case it may be the zero vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StyleComponent {
    pub dimension: StyleDimension,
    pub intensity: f64,
    pub orientation: Vec<f64>,
}

impl StyleComponent {
    pub fn new(dimension: StyleDimension, intensity: f64, orientation: Vec<f64>) -> Result<Self> {
        if !(0.0..=1.0).contains(&intensity) {
            return Err(Error::InvalidArgument(format!(
                "intensity {intensity} outside [0,1]"
            )));
        }
        let n = vector::norm(&orientation);
        let unit_ok = (n - 1.0).abs() <= 1e-6;
        let zero_ok = intensity == 0.0 && vector::is_zero(&orientation);
        if !unit_ok && !zero_ok {
            return Err(Error::InvalidArgument(format!(
                "orientation norm {n} neither unit nor (zero with zero intensity)"
            )));
        }
        Ok(StyleComponent {
            dimension,
            intensity,
            orientation,
        })
    }

    /// A dormant component: zero intensity, zero orientation.
    pub fn zero(dimension: StyleDimension, dim_len: usize) -> Self {
        StyleComponent {
            dimension,
            intensity: 0.0,
            orientation: vec![0.0; dim_len],
        }
    }

    /// intensity * orientation.
    pub fn contribution(&self) -> Vec<f64> {
        self.orientation.iter().map(|x| x * self.intensity).collect()
    }
}

/// Community-side style summary: one component per dimension plus their
/// aggregate vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResonanceField {
    pub components: [StyleComponent; 4],
    /// Sum over dimensions of intensity * orientation.
    pub psi0: Vec<f64>,
    /// Number of retrieved comments the field was built from.
    pub source_count: usize,
}

impl ResonanceField {
    /// Build a field from its components; `psi0` is derived, which keeps
    /// the reconstruction invariant true by construction.
    pub fn from_components(components: [StyleComponent; 4], source_count: usize) -> Result<Self> {
        if source_count == 0 {
            return Err(Error::InvalidArgument(
                "source_count must be positive".into(),
            ));
        }
        let dim_len = components[0].orientation.len();
        for c in &components {
            if c.orientation.len() != dim_len {
                return Err(Error::LengthMismatch {
                    left: dim_len,
                    right: c.orientation.len(),
                });
            }
        }
        let mut psi0 = vec![0.0; dim_len];
        for c in &components {
            vector::add_scaled(&mut psi0, &c.orientation, c.intensity);
        }
        Ok(ResonanceField {
            components,
            psi0,
            source_count,
        })
    }

    pub fn dim_len(&self) -> usize {
        self.psi0.len()
    }
}

/// Planner output: the chosen candidate-side style configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidatePlan {
    pub components: [StyleComponent; 4],
    /// Unpenalized planner objective of these components against the field.
    pub alignment_energy: f64,
}

/// One generated text with its realized style representation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratedCandidate {
    pub text: String,
    pub psi_k: Vec<f64>,
    pub realized_components: [StyleComponent; 4],
    pub noise_seed: u64,
    pub coherence: Option<f64>,
}
