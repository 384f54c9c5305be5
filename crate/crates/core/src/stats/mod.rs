//! Statistical kernel: special functions, Welch's t-test, classification
//! metrics with Cohen's kappa, McNemar's test, feature ranking and
//! stratified fold assignment.

mod folds;
mod mcnemar;
mod metrics;
mod ranking;
pub mod special;
mod ttest;

use thiserror::Error;

pub use folds::{stratified_kfold, stratified_split, FoldAssignment, Split};
pub use mcnemar::{mcnemar, McNemarMethod, McNemarResult, DEFAULT_ALPHA};
pub use metrics::{classification_metrics, ClassScores, Confusion, Metrics};
pub use ranking::{
    chi_squared_merit, discretize, entropy_bits, info_gain_merit, mutual_information_bits, rank_chi_squared,
    rank_info_gain, FeatureRanking, RankMethod, RankedFeature, DEFAULT_BINS,
};
pub use special::{reg_incomplete_beta, reg_incomplete_gamma};
pub use ttest::{welch_ttest, TTestResult};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("argument outside function domain: {0}")]
    DomainError(String),
    #[error("{0} did not converge")]
    NoConvergence(&'static str),
    #[error("each sample needs at least two observations")]
    InsufficientData,
    #[error("both samples have zero variance")]
    ZeroVariance,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("labels must contain both classes")]
    DegenerateLabels,
    #[error("class {class} has {count} items, fewer than k = {k}")]
    TooFewPerClass { class: i8, count: usize, k: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
