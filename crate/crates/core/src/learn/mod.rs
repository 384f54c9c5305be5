//! Classifiers trained from scratch: Gaussian naive Bayes, L2 logistic
//! regression, a linear SVM, a one-hidden-layer network and multi-instance
//! logistic regression.
//!
//! Every trainer is deterministic given its data and [`TrainConfig`].

mod gnb;
mod linear;
mod milr;
mod mlp;
mod model;
mod optim;
mod svm;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Label;

pub use gnb::{predict_gnb, train_gnb, GnbModel, VARIANCE_FLOOR};
pub use linear::{sigmoid, softplus, train_logreg, LinearModel, LogisticObjective};
pub use milr::{bag_probability, predict_bag, train_milr, MilrCombine, MilrObjective};
pub use mlp::{train_mlp, MlpModel};
pub use model::{ClassifierConfig, ClassifierKind, TrainedModel};
pub use svm::{svm_objective, train_svm, train_svm_traced};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LearnError {
    #[error("training data contains a single class")]
    SingleClassTraining,
    #[error("training diverged at epoch {epoch}")]
    Diverged { epoch: usize },
    #[error("no training examples")]
    EmptyTraining,
    #[error("feature dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid training configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub learning_rate: f64,
    /// L2 penalty strength (λ).
    pub l2: f64,
    pub epochs: usize,
    /// Minibatch size for the SVM's stochastic sub-gradient steps.
    pub batch_size: usize,
    pub seed: u64,
    pub hidden_units: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            learning_rate: 0.5,
            l2: 1e-4,
            epochs: 300,
            batch_size: 16,
            seed: 42,
            hidden_units: 8,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<(), LearnError> {
        let bad = |what: &str| Err(LearnError::InvalidConfig(what.to_string()));
        if !(self.learning_rate > 0.0) || !self.learning_rate.is_finite() {
            return bad("learning_rate must be positive");
        }
        if !(self.l2 > 0.0) || !self.l2.is_finite() {
            return bad("l2 must be positive");
        }
        if self.epochs == 0 {
            return bad("epochs must be positive");
        }
        if self.batch_size == 0 {
            return bad("batch_size must be positive");
        }
        if self.hidden_units == 0 {
            return bad("hidden_units must be positive");
        }
        Ok(())
    }
}

/// {−1, +1} label as a {0, 1} target.
pub(crate) fn target(y: Label) -> f64 {
    if y.is_positive() {
        1.0
    } else {
        0.0
    }
}

/// Ties at exactly 0.5 go to the majority (non-sarcastic) class.
pub fn label_from_probability(p: f64) -> Label {
    if p > 0.5 {
        Label::Sarcastic
    } else {
        Label::NonSarcastic
    }
}

pub(crate) fn check_training(x: &[Vec<f64>], y: &[Label]) -> Result<usize, LearnError> {
    if x.is_empty() {
        return Err(LearnError::EmptyTraining);
    }
    if x.len() != y.len() {
        return Err(LearnError::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    let d = x[0].len();
    if let Some(row) = x.iter().find(|r| r.len() != d) {
        return Err(LearnError::DimensionMismatch {
            expected: d,
            found: row.len(),
        });
    }
    let pos = y.iter().filter(|l| l.is_positive()).count();
    if pos == 0 || pos == y.len() {
        return Err(LearnError::SingleClassTraining);
    }
    Ok(d)
}

/// Tracks the objective per epoch and reports divergence after ten
/// consecutive increases or a non-finite value.
#[derive(Debug, Default)]
pub(crate) struct DivergenceGuard {
    last: Option<f64>,
    rising: usize,
}

impl DivergenceGuard {
    pub fn observe(&mut self, epoch: usize, loss: f64) -> Result<(), LearnError> {
        if !loss.is_finite() {
            return Err(LearnError::Diverged { epoch });
        }
        match self.last {
            Some(prev) if loss > prev => self.rising += 1,
            _ => self.rising = 0,
        }
        self.last = Some(loss);
        if self.rising >= 10 {
            return Err(LearnError::Diverged { epoch });
        }
        Ok(())
    }
}
