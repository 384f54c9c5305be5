use serde::{Deserialize, Serialize};

use super::StatsError;
use crate::corpus::Label;

/// Counts with the sarcastic class as positive.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub tp: usize,
    pub fn_: usize,
    pub fp: usize,
    pub tn: usize,
}

impl Confusion {
    pub fn from_predictions(pred: &[Label], gold: &[Label]) -> Self {
        let mut c = Confusion::default();
        for (&p, &g) in pred.iter().zip(gold) {
            match (g.is_positive(), p.is_positive()) {
                (true, true) => c.tp += 1,
                (true, false) => c.fn_ += 1,
                (false, true) => c.fp += 1,
                (false, false) => c.tn += 1,
            }
        }
        c
    }

    pub fn total(&self) -> usize {
        self.tp + self.fn_ + self.fp + self.tn
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn scores(tp: usize, fp: usize, fn_: usize) -> ClassScores {
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fn_);
    let f1 = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    ClassScores { precision, recall, f1 }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub confusion: Confusion,
    /// Class `1` (sarcastic).
    pub sarcastic: ClassScores,
    /// Class `-1` (non-sarcastic).
    pub non_sarcastic: ClassScores,
    /// Averages weighted by gold class support.
    pub weighted: ClassScores,
    /// Unweighted mean of the two classes.
    pub macro_avg: ClassScores,
    pub accuracy: f64,
    pub kappa: f64,
}

impl Metrics {
    pub fn from_confusion(c: Confusion) -> Self {
        let n = c.total() as f64;
        let sarcastic = scores(c.tp, c.fp, c.fn_);
        let non_sarcastic = scores(c.tn, c.fn_, c.fp);
        let (w_pos, w_neg) = if n > 0.0 {
            ((c.tp + c.fn_) as f64 / n, (c.tn + c.fp) as f64 / n)
        } else {
            (0.0, 0.0)
        };
        let mix = |f: fn(&ClassScores) -> f64, a: f64, b: f64| a * f(&sarcastic) + b * f(&non_sarcastic);
        let weighted = ClassScores {
            precision: mix(|s| s.precision, w_pos, w_neg),
            recall: mix(|s| s.recall, w_pos, w_neg),
            f1: mix(|s| s.f1, w_pos, w_neg),
        };
        let macro_avg = ClassScores {
            precision: mix(|s| s.precision, 0.5, 0.5),
            recall: mix(|s| s.recall, 0.5, 0.5),
            f1: mix(|s| s.f1, 0.5, 0.5),
        };
        let accuracy = if n > 0.0 { (c.tp + c.tn) as f64 / n } else { 0.0 };
        // chance agreement from the marginals
        let pe = if n > 0.0 {
            ((c.tp + c.fn_) as f64 * (c.tp + c.fp) as f64 + (c.tn + c.fp) as f64 * (c.tn + c.fn_) as f64) / (n * n)
        } else {
            0.0
        };
        let kappa = if (1.0 - pe).abs() < f64::EPSILON {
            if accuracy == 1.0 {
                1.0
            } else {
                0.0
            }
        } else {
            (accuracy - pe) / (1.0 - pe)
        };
        Metrics {
            confusion: c,
            sarcastic,
            non_sarcastic,
            weighted,
            macro_avg,
            accuracy,
            kappa,
        }
    }
}

pub fn classification_metrics(predictions: &[Label], gold: &[Label]) -> Result<Metrics, StatsError> {
    if predictions.len() != gold.len() {
        return Err(StatsError::LengthMismatch(predictions.len(), gold.len()));
    }
    if gold.is_empty() {
        return Err(StatsError::InvalidArgument("no predictions to score".into()));
    }
    Ok(Metrics::from_confusion(Confusion::from_predictions(predictions, gold)))
}
