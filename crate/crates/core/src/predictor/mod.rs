//! Platform-level popularity prediction.
//!
//! Feature vectors concatenate a frozen embedding of the item's textual
//! metadata with an embedding of the comment; a natively trained MLP head
//! classifies popular vs non-popular under a joint cross-entropy +
//! supervised-contrastive objective. One model is trained per platform.

mod loss;
mod model;
mod persist;
mod train;

pub use loss::{loss, scl_loss_from_hidden, Example, Gradients};
pub use model::{EvalMetrics, ForwardPass, PredictorModel, TrainMeta};
pub use persist::{from_json, load, save, to_json, MODEL_SCHEMA_VERSION};
pub use train::{evaluate, synthetic_blobs, train, TrainConfig, TrainOutcome};

use serde::{Deserialize, Serialize};

use crate::backends::EmbedderBackend;
use crate::error::Result;
use crate::types::{Comment, ContentItem};

/// Concatenated (content, comment) embedding with provenance ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub values: Vec<f64>,
    pub content_id: String,
    pub comment_id: String,
}

/// Embed the item context and the comment text, then concatenate.
pub fn build_features(
    item: &ContentItem,
    comment: &Comment,
    embedder: &dyn EmbedderBackend,
) -> Result<FeatureVector> {
    let texts = [item.context_text(), comment.text.clone()];
    let mut vectors = embedder.embed(&texts)?;
    let comment_part = vectors.pop().expect("two embeddings requested");
    let mut values = vectors.pop().expect("two embeddings requested");
    values.extend(comment_part);
    Ok(FeatureVector {
        values,
        content_id: item.id.clone(),
        comment_id: comment.id.clone(),
    })
}

/// End-to-end scoring: features then forward; returns the class-1
/// (popular) probability.
pub fn predict(
    model: &PredictorModel,
    item: &ContentItem,
    comment: &Comment,
    embedder: &dyn EmbedderBackend,
) -> Result<f64> {
    let features = build_features(item, comment, embedder)?;
    let (prob, _) = model.forward(&features.values)?;
    Ok(prob)
}
