//! Evaluation and generation engine for online-comment popularity.
//!
//! The crate quantifies how likely a comment is to resonate with a
//! platform's audience along three axes — reference-based content quality,
//! a trained popularity predictor, and an agent-based audience simulation —
//! and generates new comments by planning a stylistic configuration against
//! the community's resonance field. All model dependencies (embedding,
//! judging, generation) sit behind pluggable backends with deterministic
//! in-process stubs.

pub mod backends;
pub mod content_quality;
pub mod corpus;
pub mod error;
pub mod labeling;
pub mod predictor;
pub mod resonance;
pub mod seeds;
pub mod simulation;
pub mod style_judge;
pub mod textnum;
pub mod types;
pub mod vector;

pub use error::{Error, Result};
pub use types::{
    CandidatePlan, Comment, ContentItem, GeneratedCandidate, Label, Modality, Platform,
    ResonanceField, StyleComponent, StyleDimension,
};
