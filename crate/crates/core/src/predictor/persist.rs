//! Model persistence: one JSON document, tensors as base64-encoded
//! little-endian f64 with explicit shapes. Language-neutral and diffable.

use std::collections::BTreeMap;
use std::path::Path;

use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::model::{PredictorModel, TrainMeta};

pub const MODEL_SCHEMA_VERSION: &str = "predictor-v1";

#[derive(Debug, Serialize, Deserialize)]
struct TensorDoc {
    shape: Vec<usize>,
    data: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelDoc {
    schema_version: String,
    input_dim: usize,
    hidden_dim: usize,
    temperature: f64,
    lambda_scl: f64,
    tensors: BTreeMap<String, TensorDoc>,
    train_meta: TrainMeta,
}

fn encode(values: &[f64], shape: Vec<usize>) -> TensorDoc {
    let mut bytes = Vec::with_capacity(values.len() * 8);
    for v in values {
        bytes.extend_from_slice(&v.to_le_bytes());
    }
    TensorDoc {
        shape,
        data: BASE64.encode(bytes),
    }
}

fn decode(doc: &TensorDoc) -> Result<Vec<f64>> {
    let bytes = BASE64
        .decode(&doc.data)
        .map_err(|e| Error::InvalidArgument(format!("tensor base64: {e}")))?;
    if bytes.len() % 8 != 0 {
        return Err(Error::InvalidArgument("tensor bytes not f64-aligned".into()));
    }
    let values: Vec<f64> = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
        .collect();
    let expected: usize = doc.shape.iter().product();
    if values.len() != expected {
        return Err(Error::ShapeMismatch {
            expected,
            actual: values.len(),
        });
    }
    Ok(values)
}

pub fn to_json(model: &PredictorModel) -> Result<String> {
    let mut tensors = BTreeMap::new();
    tensors.insert(
        "w1".to_string(),
        encode(&model.w1, vec![model.hidden_dim, model.input_dim]),
    );
    tensors.insert("b1".to_string(), encode(&model.b1, vec![model.hidden_dim]));
    tensors.insert(
        "w2".to_string(),
        encode(&model.w2, vec![2, model.hidden_dim]),
    );
    tensors.insert("b2".to_string(), encode(&model.b2, vec![2]));
    let doc = ModelDoc {
        schema_version: MODEL_SCHEMA_VERSION.to_string(),
        input_dim: model.input_dim,
        hidden_dim: model.hidden_dim,
        temperature: model.temperature,
        lambda_scl: model.lambda_scl,
        tensors,
        train_meta: model.train_meta.clone(),
    };
    serde_json::to_string_pretty(&doc).map_err(|e| Error::InvalidArgument(e.to_string()))
}

pub fn from_json(json: &str) -> Result<PredictorModel> {
    let doc: ModelDoc = serde_json::from_str(json).map_err(|e| Error::Parse {
        line: 0,
        message: e.to_string(),
    })?;
    if doc.schema_version != MODEL_SCHEMA_VERSION {
        return Err(Error::InvalidConfig(format!(
            "unsupported model schema {}",
            doc.schema_version
        )));
    }
    let get = |name: &str| -> Result<Vec<f64>> {
        doc.tensors
            .get(name)
            .ok_or_else(|| Error::InvalidConfig(format!("missing tensor {name}")))
            .and_then(decode)
    };
    if doc.temperature <= 0.0 {
        return Err(Error::InvalidConfig("temperature must be positive".into()));
    }
    let model = PredictorModel {
        input_dim: doc.input_dim,
        hidden_dim: doc.hidden_dim,
        w1: get("w1")?,
        b1: get("b1")?,
        w2: get("w2")?,
        b2: get("b2")?,
        temperature: doc.temperature,
        lambda_scl: doc.lambda_scl,
        train_meta: doc.train_meta,
    };
    for (len, expected) in [
        (model.w1.len(), model.hidden_dim * model.input_dim),
        (model.b1.len(), model.hidden_dim),
        (model.w2.len(), 2 * model.hidden_dim),
        (model.b2.len(), 2),
    ] {
        if len != expected {
            return Err(Error::ShapeMismatch {
                expected,
                actual: len,
            });
        }
    }
    Ok(model)
}

pub fn save(model: &PredictorModel, path: &Path) -> Result<()> {
    std::fs::write(path, to_json(model)?)?;
    Ok(())
}

pub fn load(path: &Path) -> Result<PredictorModel> {
    let json = std::fs::read_to_string(path)?;
    from_json(&json)
}
