//! Joint objective: cross-entropy plus a supervised contrastive term,
//! with analytic gradients via backpropagation.
//!
//! The contrastive term operates on L2-normalized penultimate vectors
//! with temperature tau: for each anchor that has at least one same-class
//! positive, the mean over positives of `-log(exp(sim/tau) / sum over all
//! others of exp(sim/tau))`, averaged over anchors. When the batch lacks
//! one of the classes the term is zero.

use crate::error::{Error, Result};
use crate::vector;

use super::model::{log_prob2, PredictorModel};

/// Parameter gradients, same shapes as the model tensors.
#[derive(Debug, Clone)]
pub struct Gradients {
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: Vec<f64>,
}

impl Gradients {
    fn zeroed(model: &PredictorModel) -> Self {
        Gradients {
            w1: vec![0.0; model.w1.len()],
            b1: vec![0.0; model.b1.len()],
            w2: vec![0.0; model.w2.len()],
            b2: vec![0.0; model.b2.len()],
        }
    }
}

/// One training example: feature values plus binary label (1 = popular).
pub type Example = (Vec<f64>, u8);

/// Forward-only contrastive loss over raw hidden vectors; exposed so the
/// scale-invariance property (normalization makes rescaled activations
/// equivalent) can be asserted at exactly this boundary.
pub fn scl_loss_from_hidden(hidden: &[Vec<f64>], labels: &[u8], tau: f64) -> f64 {
    let z: Vec<Vec<f64>> = hidden.iter().map(|h| vector::normalize_or_zero(h)).collect();
    scl_from_normalized(&z, labels, tau).0
}

/// Returns (loss, d_loss/d_z for every example).
fn scl_from_normalized(z: &[Vec<f64>], labels: &[u8], tau: f64) -> (f64, Vec<Vec<f64>>) {
    let n = z.len();
    let dim = z.first().map(|v| v.len()).unwrap_or(0);
    let mut grad_z = vec![vec![0.0; dim]; n];

    let has_both = labels.contains(&0) && labels.contains(&1);
    if n < 2 || !has_both {
        return (0.0, grad_z);
    }

    // anchors need at least one same-class positive
    let anchors: Vec<usize> = (0..n)
        .filter(|&i| (0..n).any(|p| p != i && labels[p] == labels[i]))
        .collect();
    if anchors.is_empty() {
        return (0.0, grad_z);
    }

    let sim = |i: usize, j: usize| vector::dot(&z[i], &z[j]) / tau;

    let mut total = 0.0;
    let inv_anchors = 1.0 / anchors.len() as f64;
    // ds[i][a] accumulates d loss / d sim(i, a)
    let mut ds = vec![vec![0.0; n]; n];
    for &i in &anchors {
        let positives: Vec<usize> = (0..n).filter(|&p| p != i && labels[p] == labels[i]).collect();
        let others: Vec<usize> = (0..n).filter(|&a| a != i).collect();

        // stable log-sum-exp over others
        let sims: Vec<f64> = others.iter().map(|&a| sim(i, a)).collect();
        let max_sim = sims.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let denom: f64 = sims.iter().map(|s| (s - max_sim).exp()).sum();
        let log_denom = max_sim + denom.ln();

        let inv_pos = 1.0 / positives.len() as f64;
        let mut loss_i = log_denom;
        for &p in &positives {
            loss_i -= inv_pos * sim(i, p);
            ds[i][p] -= inv_anchors * inv_pos;
        }
        for (&a, s) in others.iter().zip(&sims) {
            ds[i][a] += inv_anchors * (s - max_sim).exp() / denom;
        }
        total += inv_anchors * loss_i;
    }

    // sim(i,a) = z_i . z_a / tau touches both endpoints
    for i in 0..n {
        for a in 0..n {
            let g = ds[i][a];
            if g == 0.0 {
                continue;
            }
            for d in 0..dim {
                grad_z[i][d] += g * z[a][d] / tau;
                grad_z[a][d] += g * z[i][d] / tau;
            }
        }
    }
    (total, grad_z)
}

/// Total loss `CE + lambda_scl * SCL` with gradients for every parameter.
#[allow(clippy::needless_range_loop)] // parallel tensor indexing reads clearer here
pub fn loss(model: &PredictorModel, batch: &[Example], lambda_scl: f64, tau: f64) -> Result<(f64, Gradients)> {
    if batch.len() < 2 {
        return Err(Error::DegenerateBatch);
    }
    let n = batch.len();
    let labels: Vec<u8> = batch.iter().map(|(_, y)| *y).collect();

    let passes: Vec<_> = batch
        .iter()
        .map(|(x, _)| model.forward_pass(x))
        .collect::<Result<Vec<_>>>()?;

    // cross-entropy
    let mut ce = 0.0;
    for (pass, &y) in passes.iter().zip(&labels) {
        ce -= log_prob2(pass.logits, y as usize);
    }
    ce /= n as f64;

    // contrastive term through normalized hidden vectors
    let hidden: Vec<Vec<f64>> = passes.iter().map(|p| p.hidden.clone()).collect();
    let z: Vec<Vec<f64>> = hidden.iter().map(|h| vector::normalize_or_zero(h)).collect();
    let (scl, grad_z) = scl_from_normalized(&z, &labels, tau);

    let total = ce + lambda_scl * scl;

    // backward
    let mut grads = Gradients::zeroed(model);
    let inv_n = 1.0 / n as f64;
    for i in 0..n {
        let pass = &passes[i];
        let x = &batch[i].0;
        let y = labels[i] as usize;

        // d CE / d logits = (probs - onehot) / n
        let mut dlogits = [pass.probs[0] * inv_n, pass.probs[1] * inv_n];
        dlogits[y] -= inv_n;

        // hidden gradient from the CE path
        let mut dhidden = vec![0.0; model.hidden_dim];
        for k in 0..2 {
            let row = &model.w2[k * model.hidden_dim..(k + 1) * model.hidden_dim];
            for (dh, w) in dhidden.iter_mut().zip(row) {
                *dh += dlogits[k] * w;
            }
            for (slot, h) in grads.w2[k * model.hidden_dim..(k + 1) * model.hidden_dim]
                .iter_mut()
                .zip(&pass.hidden)
            {
                *slot += dlogits[k] * h;
            }
            grads.b2[k] += dlogits[k];
        }

        // hidden gradient from the SCL path, through z = h / ||h||:
        // dL/dh = (g - (g.z) z) / ||h||
        let h_norm = vector::norm(&pass.hidden);
        if lambda_scl != 0.0 && h_norm >= vector::ZERO_NORM_EPS {
            let g = &grad_z[i];
            let g_dot_z = vector::dot(g, &z[i]);
            for d in 0..model.hidden_dim {
                dhidden[d] += lambda_scl * (g[d] - g_dot_z * z[i][d]) / h_norm;
            }
        }

        // through ReLU into the first layer
        for h in 0..model.hidden_dim {
            if pass.hidden_pre[h] <= 0.0 {
                continue;
            }
            let dpre = dhidden[h];
            grads.b1[h] += dpre;
            for (slot, v) in grads.w1[h * model.input_dim..(h + 1) * model.input_dim]
                .iter_mut()
                .zip(x)
            {
                *slot += dpre * v;
            }
        }
    }

    Ok((total, grads))
}
