//! Experiment orchestration: cross-validation, classifier comparison,
//! training-size ablation, per-participant t-tests, feature ranking and the
//! leakage audit.

mod ablation;
mod bundle;
mod compare;
mod crossval;
mod ranking;
mod table;
mod ttest;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{Corpus, CorpusError};
use crate::dataset::{sha256_hex, DatasetError};
use crate::learn::LearnError;
use crate::stats::StatsError;
use crate::textfeat::DEFAULT_UNIGRAM_K;

pub use ablation::{run_ablation, AblationReport, AblationRow, DEFAULT_FRACTIONS};
pub use bundle::ModelBundle;
pub use compare::{run_comparison, ComparisonReport, PairComparison};
pub use crossval::{audit_leakage, run_crossval, EvalReport, FoldArtifacts, FoldResult, LeakageAudit};
pub use ranking::{rank_features, render_ranking_svg};
pub use table::metrics_table;
pub use ttest::{fdur_by_participant, run_ttest_table, TTestRow, TTestTable};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    Learn(#[from] LearnError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("reports do not share a fold assignment: {0}")]
    FoldMismatch(String),
    #[error("{0}")]
    Invalid(String),
}

impl EvalError {
    /// Failures of the numerical machinery rather than of the input data.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            EvalError::Learn(LearnError::Diverged { .. })
                | EvalError::Stats(StatsError::NoConvergence(_) | StatsError::DomainError(_))
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalOptions {
    pub k: usize,
    pub seed: u64,
    pub unigram_k: usize,
    /// Folds evaluated concurrently; results do not depend on it.
    pub jobs: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            k: 10,
            seed: 42,
            unigram_k: DEFAULT_UNIGRAM_K,
            jobs: 1,
        }
    }
}

/// SHA-256 over the corpus in its canonical CSV form.
pub fn corpus_hash(corpus: &Corpus) -> String {
    let mut bytes = corpus.to_sentences_csv();
    bytes.extend(corpus.to_fixations_csv());
    sha256_hex(&bytes)
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T, EvalError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| EvalError::Invalid(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}
