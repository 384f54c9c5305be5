//! Full-batch proximal gradient descent with backtracking, shared by the
//! logistic and multi-instance learners.
//!
//! The smooth part `f` is supplied by the caller; the L2 penalty
//! `λ/2 · Σ θ_j²` over the masked coordinates is handled by its proximal map
//! `θ_j ← θ_j / (1 + tλ)`, which keeps very large penalties stable.

use super::{DivergenceGuard, LearnError};

pub(crate) struct ProxSettings<'a> {
    pub initial_step: f64,
    pub l2: f64,
    /// Coordinates subject to the penalty (bias terms are excluded).
    pub penalized: &'a [bool],
    pub epochs: usize,
}

fn penalty(theta: &[f64], mask: &[bool], l2: f64) -> f64 {
    0.5 * l2
        * theta
            .iter()
            .zip(mask)
            .filter(|(_, &m)| m)
            .map(|(t, _)| t * t)
            .sum::<f64>()
}

/// Returns the final parameters and the per-epoch objective trace.
pub(crate) fn minimize<F>(
    mut smooth: F,
    mut theta: Vec<f64>,
    s: &ProxSettings,
) -> Result<(Vec<f64>, Vec<f64>), LearnError>
where
    F: FnMut(&[f64], bool) -> (f64, Vec<f64>),
{
    let mut guard = DivergenceGuard::default();
    let mut trace = Vec::with_capacity(s.epochs);
    let mut step = s.initial_step;
    let (mut f, mut grad) = smooth(&theta, true);
    let mut candidate = vec![0.0; theta.len()];

    for epoch in 0..s.epochs {
        let mut t = (step * 2.0).min(s.initial_step);
        let mut accepted = None;
        for _ in 0..80 {
            for j in 0..theta.len() {
                let u = theta[j] - t * grad[j];
                candidate[j] = if s.penalized[j] { u / (1.0 + t * s.l2) } else { u };
            }
            let (fc, _) = smooth(&candidate, false);
            let mut lin = 0.0;
            let mut sq = 0.0;
            for j in 0..theta.len() {
                let d = candidate[j] - theta[j];
                lin += grad[j] * d;
                sq += d * d;
            }
            if fc.is_finite() && fc <= f + lin + sq / (2.0 * t) + 1e-15 * f.abs() {
                accepted = Some(sq);
                break;
            }
            t *= 0.5;
        }
        let Some(moved) = accepted else {
            return Err(LearnError::Diverged { epoch });
        };
        step = t;
        std::mem::swap(&mut theta, &mut candidate);
        let (fn_, gn) = smooth(&theta, true);
        f = fn_;
        grad = gn;
        let objective = f + penalty(&theta, s.penalized, s.l2);
        guard.observe(epoch, objective)?;
        trace.push(objective);
        if moved.sqrt() < 1e-12 * (1.0 + theta.iter().map(|v| v * v).sum::<f64>().sqrt()) {
            break;
        }
    }
    Ok((theta, trace))
}
