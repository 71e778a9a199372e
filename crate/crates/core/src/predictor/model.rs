//! Two-layer MLP classifier: ReLU hidden layer, softmax over two logits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Final evaluation metrics stored with a trained model.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EvalMetrics {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TrainMeta {
    pub platform: String,
    pub epochs: usize,
    pub seed: u64,
    pub final_metrics: EvalMetrics,
}

/// MLP head parameters plus training metadata. Immutable once trained;
/// safe to share across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictorModel {
    pub input_dim: usize,
    pub hidden_dim: usize,
    /// hidden_dim x input_dim, row-major.
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    /// 2 x hidden_dim, row-major.
    pub w2: Vec<f64>,
    pub b2: Vec<f64>,
    /// Contrastive temperature.
    pub temperature: f64,
    pub lambda_scl: f64,
    pub train_meta: TrainMeta,
}

/// Intermediate activations kept for backpropagation.
#[derive(Debug, Clone)]
pub struct ForwardPass {
    pub hidden_pre: Vec<f64>,
    pub hidden: Vec<f64>,
    pub logits: [f64; 2],
    pub probs: [f64; 2],
}

impl PredictorModel {
    pub fn zeroed(input_dim: usize, hidden_dim: usize, temperature: f64, lambda_scl: f64) -> Self {
        PredictorModel {
            input_dim,
            hidden_dim,
            w1: vec![0.0; hidden_dim * input_dim],
            b1: vec![0.0; hidden_dim],
            w2: vec![0.0; 2 * hidden_dim],
            b2: vec![0.0; 2],
            temperature,
            lambda_scl,
            train_meta: TrainMeta::default(),
        }
    }

    #[allow(clippy::needless_range_loop)]
    pub fn forward_pass(&self, x: &[f64]) -> Result<ForwardPass> {
        if x.len() != self.input_dim {
            return Err(Error::ShapeMismatch {
                expected: self.input_dim,
                actual: x.len(),
            });
        }
        let mut hidden_pre = vec![0.0; self.hidden_dim];
        for h in 0..self.hidden_dim {
            let row = &self.w1[h * self.input_dim..(h + 1) * self.input_dim];
            hidden_pre[h] = self.b1[h] + row.iter().zip(x).map(|(w, v)| w * v).sum::<f64>();
        }
        let hidden: Vec<f64> = hidden_pre.iter().map(|&v| v.max(0.0)).collect();

        let mut logits = [0.0f64; 2];
        for (k, logit) in logits.iter_mut().enumerate() {
            let row = &self.w2[k * self.hidden_dim..(k + 1) * self.hidden_dim];
            *logit = self.b2[k] + row.iter().zip(&hidden).map(|(w, v)| w * v).sum::<f64>();
        }
        let probs = softmax2(logits);
        Ok(ForwardPass {
            hidden_pre,
            hidden,
            logits,
            probs,
        })
    }

    /// Class-1 probability plus the penultimate (hidden) representation.
    pub fn forward(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
        let pass = self.forward_pass(x)?;
        Ok((pass.probs[1], pass.hidden))
    }
}

/// Numerically stable two-class softmax.
pub fn softmax2(logits: [f64; 2]) -> [f64; 2] {
    let m = logits[0].max(logits[1]);
    let e0 = (logits[0] - m).exp();
    let e1 = (logits[1] - m).exp();
    let z = e0 + e1;
    [e0 / z, e1 / z]
}

/// `log(probs[class])` computed via log-sum-exp for stability.
pub fn log_prob2(logits: [f64; 2], class: usize) -> f64 {
    let m = logits[0].max(logits[1]);
    let lse = m + ((logits[0] - m).exp() + (logits[1] - m).exp()).ln();
    logits[class] - lse
}
