//! Mini-batch training with Adam and best-validation-F1 checkpointing.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seeds::counter_gaussian;

use super::loss::{loss, Example, Gradients};
use super::model::{EvalMetrics, PredictorModel, TrainMeta};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainConfig {
    #[serde(default = "default_epochs")]
    pub epochs: usize,
    #[serde(default = "default_batch_size")]
    pub batch_size: usize,
    #[serde(default = "default_learning_rate")]
    pub learning_rate: f64,
    /// Hidden width H.
    #[serde(default = "default_hidden_dim")]
    pub hidden_dim: usize,
    #[serde(default = "default_temperature")]
    pub temperature: f64,
    #[serde(default = "default_lambda_scl")]
    pub lambda_scl: f64,
    pub seed: u64,
}

fn default_epochs() -> usize {
    50
}
fn default_batch_size() -> usize {
    32
}
fn default_learning_rate() -> f64 {
    0.01
}
fn default_hidden_dim() -> usize {
    128
}
fn default_temperature() -> f64 {
    0.1
}
fn default_lambda_scl() -> f64 {
    0.5
}

impl TrainConfig {
    pub fn with_seed(seed: u64) -> Self {
        TrainConfig {
            epochs: default_epochs(),
            batch_size: default_batch_size(),
            learning_rate: default_learning_rate(),
            hidden_dim: default_hidden_dim(),
            temperature: default_temperature(),
            lambda_scl: default_lambda_scl(),
            seed,
        }
    }
}

const BETA1: f64 = 0.9;
const BETA2: f64 = 0.999;
const ADAM_EPS: f64 = 1e-8;

struct AdamState {
    m: Vec<f64>,
    v: Vec<f64>,
    t: u64,
}

impl AdamState {
    fn new(len: usize) -> Self {
        AdamState {
            m: vec![0.0; len],
            v: vec![0.0; len],
            t: 0,
        }
    }

    fn step(&mut self, params: &mut [f64], grads: &[f64], lr: f64) {
        self.t += 1;
        let bc1 = 1.0 - BETA1.powi(self.t as i32);
        let bc2 = 1.0 - BETA2.powi(self.t as i32);
        for i in 0..params.len() {
            self.m[i] = BETA1 * self.m[i] + (1.0 - BETA1) * grads[i];
            self.v[i] = BETA2 * self.v[i] + (1.0 - BETA2) * grads[i] * grads[i];
            let m_hat = self.m[i] / bc1;
            let v_hat = self.v[i] / bc2;
            params[i] -= lr * m_hat / (v_hat.sqrt() + ADAM_EPS);
        }
    }
}

/// Training result: the best-validation checkpoint plus the loss history
/// for diagnostics. `epoch_losses[0]` is the frozen pre-training loss;
/// entry `e + 1` is the mean batch loss during epoch `e`.
#[derive(Debug, Clone)]
pub struct TrainOutcome {
    pub model: PredictorModel,
    pub epoch_losses: Vec<f64>,
    pub best_epoch: usize,
    pub best_val_f1: f64,
}

fn init_model(input_dim: usize, cfg: &TrainConfig) -> PredictorModel {
    let mut model =
        PredictorModel::zeroed(input_dim, cfg.hidden_dim, cfg.temperature, cfg.lambda_scl);
    // He-style init from the deterministic counter Gaussian
    let scale1 = (2.0 / input_dim as f64).sqrt();
    for (i, w) in model.w1.iter_mut().enumerate() {
        *w = scale1 * counter_gaussian(cfg.seed ^ 0x57A7_0001, i as u64);
    }
    let scale2 = (2.0 / cfg.hidden_dim as f64).sqrt();
    for (i, w) in model.w2.iter_mut().enumerate() {
        *w = scale2 * counter_gaussian(cfg.seed ^ 0x57A7_0002, i as u64);
    }
    model
}

/// Train on mini-batches; deterministic given the seed. Returns the
/// checkpoint with the best validation F1.
pub fn train(train_set: &[Example], val_set: &[Example], cfg: &TrainConfig) -> Result<TrainOutcome> {
    let has_pos = train_set.iter().any(|(_, y)| *y == 1);
    let has_neg = train_set.iter().any(|(_, y)| *y == 0);
    if !has_pos || !has_neg {
        return Err(Error::SingleClassDataset);
    }
    let input_dim = train_set[0].0.len();

    let mut model = init_model(input_dim, cfg);
    let mut adam_w1 = AdamState::new(model.w1.len());
    let mut adam_b1 = AdamState::new(model.b1.len());
    let mut adam_w2 = AdamState::new(model.w2.len());
    let mut adam_b2 = AdamState::new(model.b2.len());

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut order: Vec<usize> = (0..train_set.len()).collect();

    let mut best_model = model.clone();
    let mut best_f1 = f64::NEG_INFINITY;
    let mut best_epoch = 0usize;
    let mut epoch_losses = Vec::with_capacity(cfg.epochs + 1);

    // frozen evaluation before any update anchors the loss curve
    {
        let mut initial = 0.0;
        let mut batches = 0usize;
        for chunk in order.chunks(cfg.batch_size.max(2)) {
            if chunk.len() < 2 {
                continue;
            }
            let batch: Vec<Example> = chunk.iter().map(|&i| train_set[i].clone()).collect();
            let (batch_loss, _) = loss(&model, &batch, cfg.lambda_scl, cfg.temperature)?;
            initial += batch_loss;
            batches += 1;
        }
        epoch_losses.push(if batches > 0 { initial / batches as f64 } else { 0.0 });
    }

    for epoch in 0..cfg.epochs {
        order.shuffle(&mut rng);
        let mut epoch_loss = 0.0;
        let mut batches = 0usize;
        for chunk in order.chunks(cfg.batch_size.max(2)) {
            if chunk.len() < 2 {
                continue; // a singleton tail cannot form a batch
            }
            let batch: Vec<Example> = chunk.iter().map(|&i| train_set[i].clone()).collect();
            let (batch_loss, grads) = loss(&model, &batch, cfg.lambda_scl, cfg.temperature)?;
            apply(
                &mut model,
                &grads,
                cfg.learning_rate,
                &mut adam_w1,
                &mut adam_b1,
                &mut adam_w2,
                &mut adam_b2,
            );
            epoch_loss += batch_loss;
            batches += 1;
        }
        epoch_losses.push(if batches > 0 { epoch_loss / batches as f64 } else { 0.0 });

        let metrics = evaluate(&model, val_set)?;
        if metrics.f1 > best_f1 {
            best_f1 = metrics.f1;
            best_model = model.clone();
            best_epoch = epoch;
        }
    }

    best_model.train_meta = TrainMeta {
        platform: String::new(),
        epochs: cfg.epochs,
        seed: cfg.seed,
        final_metrics: evaluate(&best_model, val_set)?,
    };
    Ok(TrainOutcome {
        model: best_model,
        epoch_losses,
        best_epoch,
        best_val_f1: best_f1,
    })
}

#[allow(clippy::too_many_arguments)]
fn apply(
    model: &mut PredictorModel,
    grads: &Gradients,
    lr: f64,
    adam_w1: &mut AdamState,
    adam_b1: &mut AdamState,
    adam_w2: &mut AdamState,
    adam_b2: &mut AdamState,
) {
    adam_w1.step(&mut model.w1, &grads.w1, lr);
    adam_b1.step(&mut model.b1, &grads.b1, lr);
    adam_w2.step(&mut model.w2, &grads.w2, lr);
    adam_b2.step(&mut model.b2, &grads.b2, lr);
}

/// Standard binary metrics at threshold 0.5; class 1 is positive.
pub fn evaluate(model: &PredictorModel, test_set: &[Example]) -> Result<EvalMetrics> {
    let mut tp = 0usize;
    let mut fp = 0usize;
    let mut tn = 0usize;
    let mut fn_ = 0usize;
    for (x, y) in test_set {
        let (prob, _) = model.forward(x)?;
        let predicted = prob >= 0.5;
        match (predicted, *y == 1) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, false) => tn += 1,
            (false, true) => fn_ += 1,
        }
    }
    let total = (tp + fp + tn + fn_) as f64;
    let accuracy = if total > 0.0 {
        (tp + tn) as f64 / total
    } else {
        0.0
    };
    let precision = if tp + fp > 0 {
        tp as f64 / (tp + fp) as f64
    } else {
        0.0
    };
    let recall = if tp + fn_ > 0 {
        tp as f64 / (tp + fn_) as f64
    } else {
        0.0
    };
    let f1 = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    Ok(EvalMetrics {
        accuracy,
        precision,
        recall,
        f1,
    })
}

/// Deterministic two-blob dataset: class means at +/- `separation` along
/// every fourth coordinate, unit Gaussian spread. Used by training oracles.
pub fn synthetic_blobs(n: usize, dim: usize, separation: f64, seed: u64) -> Vec<Example> {
    (0..n)
        .map(|i| {
            let label = (i % 2) as u8;
            let sign = if label == 1 { 1.0 } else { -1.0 };
            let x: Vec<f64> = (0..dim)
                .map(|d| {
                    let noise = counter_gaussian(seed ^ (i as u64).wrapping_mul(0x9E37), d as u64);
                    let mean = if d % 4 == 0 { sign * separation } else { 0.0 };
                    mean + noise
                })
                .collect();
            (x, label)
        })
        .collect()
}
