use serde::{Deserialize, Serialize};

use super::{check_training, LearnError};
use crate::corpus::Label;

pub const VARIANCE_FLOOR: f64 = 1e-9;

/// Per-class Gaussian likelihoods. Index 0 is the sarcastic class, index 1
/// the non-sarcastic class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GnbModel {
    pub priors: [f64; 2],
    pub means: [Vec<f64>; 2],
    pub variances: [Vec<f64>; 2],
}

fn class_slot(l: Label) -> usize {
    if l.is_positive() {
        0
    } else {
        1
    }
}

pub fn train_gnb(x: &[Vec<f64>], y: &[Label]) -> Result<GnbModel, LearnError> {
    let d = check_training(x, y)?;
    let mut counts = [0usize; 2];
    let mut means = [vec![0.0; d], vec![0.0; d]];
    for (xi, &yi) in x.iter().zip(y) {
        let c = class_slot(yi);
        counts[c] += 1;
        for (m, v) in means[c].iter_mut().zip(xi) {
            *m += v;
        }
    }
    for c in 0..2 {
        means[c].iter_mut().for_each(|m| *m /= counts[c] as f64);
    }
    let mut variances = [vec![0.0; d], vec![0.0; d]];
    for (xi, &yi) in x.iter().zip(y) {
        let c = class_slot(yi);
        for j in 0..d {
            let r = xi[j] - means[c][j];
            variances[c][j] += r * r;
        }
    }
    for c in 0..2 {
        variances[c]
            .iter_mut()
            .for_each(|v| *v = (*v / counts[c] as f64).max(VARIANCE_FLOOR));
    }
    let n = x.len() as f64;
    Ok(GnbModel {
        priors: [counts[0] as f64 / n, counts[1] as f64 / n],
        means,
        variances,
    })
}

impl GnbModel {
    /// Log prior plus summed Gaussian log-densities, per class.
    pub fn log_joint(&self, x: &[f64]) -> [f64; 2] {
        let mut out = [0.0; 2];
        for (c, slot) in out.iter_mut().enumerate() {
            let mut s = self.priors[c].ln();
            for ((v, &var), &mean) in x.iter().zip(&self.variances[c]).zip(&self.means[c]) {
                let r = v - mean;
                s -= 0.5 * ((2.0 * std::f64::consts::PI * var).ln() + r * r / var);
            }
            *slot = s;
        }
        out
    }

    /// Posterior probability of the sarcastic class.
    pub fn probability(&self, x: &[f64]) -> f64 {
        let [a, b] = self.log_joint(x);
        super::sigmoid(a - b)
    }
}

/// Ties go to the non-sarcastic class.
pub fn predict_gnb(model: &GnbModel, x: &[f64]) -> Label {
    let [pos, neg] = model.log_joint(x);
    if pos > neg {
        Label::Sarcastic
    } else {
        Label::NonSarcastic
    }
}
