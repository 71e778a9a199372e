//! Dense vector helpers used by the style-field math and the metrics.
//!
//! All vectors are plain `Vec<f64>`; dimensions are small (embedding
//! dimension, default 64) so no linear-algebra crate is warranted.

use crate::error::{Error, Result};

/// Norms below this are treated as zero.
pub const ZERO_NORM_EPS: f64 = 1e-12;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Cosine similarity between two nonzero vectors of equal length.
pub fn cosine(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let (na, nb) = (norm(a), norm(b));
    if na < ZERO_NORM_EPS || nb < ZERO_NORM_EPS {
        return Err(Error::ZeroVector);
    }
    Ok(dot(a, b) / (na * nb))
}

/// Scale `a` in place by `factor`.
pub fn scale(a: &mut [f64], factor: f64) {
    for x in a.iter_mut() {
        *x *= factor;
    }
}

/// Accumulate `weight * b` into `acc`.
pub fn add_scaled(acc: &mut [f64], b: &[f64], weight: f64) {
    debug_assert_eq!(acc.len(), b.len());
    for (x, y) in acc.iter_mut().zip(b) {
        *x += weight * y;
    }
}

/// Unit-normalize, returning the zero vector when the input norm is
/// (numerically) zero.
pub fn normalize_or_zero(a: &[f64]) -> Vec<f64> {
    let n = norm(a);
    if n < ZERO_NORM_EPS {
        vec![0.0; a.len()]
    } else {
        a.iter().map(|x| x / n).collect()
    }
}

pub fn is_zero(a: &[f64]) -> bool {
    norm(a) < ZERO_NORM_EPS
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosine_identical_unit_vectors() {
        assert_eq!(cosine(&[1.0, 0.0], &[1.0, 0.0]).unwrap(), 1.0);
    }

    #[test]
    fn cosine_orthogonal() {
        assert_eq!(cosine(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
    }

    #[test]
    fn cosine_hand_arithmetic() {
        // a.b = 2 + 2 + 4 = 8, |a| = |b| = 3
        let got = cosine(&[1.0, 2.0, 2.0], &[2.0, 1.0, 2.0]).unwrap();
        assert!((got - 8.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn cosine_zero_vector_rejected() {
        assert!(matches!(
            cosine(&[0.0, 0.0], &[1.0, 0.0]),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn cosine_length_mismatch() {
        assert!(matches!(
            cosine(&[1.0], &[1.0, 0.0]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn cosine_symmetric_and_scale_invariant() {
        let a = [0.3, -1.2, 0.7];
        let b = [1.1, 0.4, -0.2];
        let ab = cosine(&a, &b).unwrap();
        let ba = cosine(&b, &a).unwrap();
        assert!((ab - ba).abs() < 1e-9);
        let scaled: Vec<f64> = a.iter().map(|x| x * 7.5).collect();
        assert!((cosine(&scaled, &b).unwrap() - ab).abs() < 1e-9);
    }

    #[test]
    fn normalize_or_zero_handles_zero() {
        assert_eq!(normalize_or_zero(&[0.0, 0.0]), vec![0.0, 0.0]);
        let u = normalize_or_zero(&[3.0, 4.0]);
        assert!((norm(&u) - 1.0).abs() < 1e-12);
    }
}
