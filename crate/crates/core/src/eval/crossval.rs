use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{corpus_hash, with_pool, EvalError, EvalOptions, ModelBundle};
use crate::corpus::{Corpus, Label, Lexicons};
use crate::dataset::{artifact_hash, precompute, FeatureConfig, Precomputed};
use crate::learn::ClassifierConfig;
use crate::stats::{classification_metrics, stratified_kfold, FoldAssignment, Metrics};

/// Content hashes of everything fitted on one training fold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldArtifacts {
    pub lexical: String,
    pub scaler: String,
    pub model: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldResult {
    pub fold: usize,
    pub train_size: usize,
    pub test_size: usize,
    pub metrics: Metrics,
    pub artifacts: FoldArtifacts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub feature_config: FeatureConfig,
    pub classifier: ClassifierConfig,
    pub k: usize,
    pub seed: u64,
    pub unigram_k: usize,
    pub corpus_hash: String,
    pub fold_hash: String,
    /// Columns as fitted on the first fold.
    pub feature_names: Vec<String>,
    pub sentence_ids: Vec<u32>,
    pub gold: Vec<Label>,
    /// Held-out prediction for every sentence, pooled over folds.
    pub predictions: Vec<Label>,
    /// Scores of the pooled predictions.
    pub metrics: Metrics,
    pub per_fold: Vec<FoldResult>,
    pub mean_fold_weighted_f: f64,
}

impl EvalReport {
    pub fn hash(&self) -> String {
        artifact_hash(self)
    }

    pub fn label(&self) -> String {
        format!("{}/{}", self.classifier.kind, self.feature_config)
    }
}

fn evaluate_fold(
    pre: &Precomputed,
    labels: &[Label],
    folds: &FoldAssignment,
    fold: usize,
    lexicons: Option<&Lexicons>,
    classifier: &ClassifierConfig,
    unigram_k: usize,
) -> Result<(ModelBundle, Vec<usize>, Vec<Label>), EvalError> {
    let train = folds.train_indices(fold);
    let test = folds.test_indices(fold);
    let bundle = ModelBundle::fit(pre, labels, &train, lexicons, classifier, unigram_k)?;
    let predictions = bundle.predict(pre, &test)?;
    Ok((bundle, test, predictions))
}

pub fn run_crossval(
    corpus: &Corpus,
    lexicons: Option<&Lexicons>,
    config: FeatureConfig,
    classifier: &ClassifierConfig,
    options: &EvalOptions,
) -> Result<EvalReport, EvalError> {
    let pre = precompute(corpus, lexicons, config)?;
    let labels = corpus.labels();
    let folds = stratified_kfold(&labels, options.k, options.seed)?;
    let outcomes = with_pool(options.jobs, || {
        (0..options.k)
            .into_par_iter()
            .map(|f| evaluate_fold(&pre, &labels, &folds, f, lexicons, classifier, options.unigram_k))
            .collect::<Result<Vec<_>, EvalError>>()
    })??;

    let mut predictions = vec![Label::NonSarcastic; labels.len()];
    let mut per_fold = Vec::with_capacity(options.k);
    for (fold, (bundle, test, pred)) in outcomes.iter().enumerate() {
        let gold: Vec<Label> = test.iter().map(|&i| labels[i]).collect();
        for (&i, &p) in test.iter().zip(pred) {
            predictions[i] = p;
        }
        per_fold.push(FoldResult {
            fold,
            train_size: labels.len() - test.len(),
            test_size: test.len(),
            metrics: classification_metrics(pred, &gold)?,
            artifacts: bundle.artifacts(),
        });
    }
    let mean_fold_weighted_f = per_fold.iter().map(|f| f.metrics.weighted.f1).sum::<f64>() / per_fold.len() as f64;
    Ok(EvalReport {
        feature_config: config,
        classifier: classifier.clone(),
        k: options.k,
        seed: options.seed,
        unigram_k: options.unigram_k,
        corpus_hash: corpus_hash(corpus),
        fold_hash: folds.hash(),
        feature_names: outcomes[0].0.schema.names.clone(),
        sentence_ids: pre.sentences.iter().map(|s| s.id).collect(),
        metrics: classification_metrics(&predictions, &labels)?,
        gold: labels,
        predictions,
        per_fold,
        mean_fold_weighted_f,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeakageAudit {
    pub label: String,
    /// Per fold: whether every artifact hash survived permuting that fold's test labels.
    pub folds: Vec<bool>,
    pub passed: bool,
}

/// Refits every fold of `report` with that fold's test labels shuffled and
/// checks that no fitted artifact changes.
pub fn audit_leakage(
    corpus: &Corpus,
    lexicons: Option<&Lexicons>,
    report: &EvalReport,
    jobs: usize,
) -> Result<LeakageAudit, EvalError> {
    let pre = precompute(corpus, lexicons, report.feature_config)?;
    let labels = corpus.labels();
    let folds = stratified_kfold(&labels, report.k, report.seed)?;
    if folds.hash() != report.fold_hash {
        return Err(EvalError::FoldMismatch("corpus does not reproduce the report's folds".into()));
    }
    let verdicts = with_pool(jobs, || {
        (0..report.k)
            .into_par_iter()
            .map(|f| {
                let test = folds.test_indices(f);
                let mut shuffled: Vec<Label> = test.iter().map(|&i| labels[i]).collect();
                shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(report.seed ^ (f as u64 + 1)));
                let mut permuted = labels.clone();
                for (&i, &l) in test.iter().zip(&shuffled) {
                    permuted[i] = l;
                }
                let (bundle, _, _) = evaluate_fold(
                    &pre,
                    &permuted,
                    &folds,
                    f,
                    lexicons,
                    &report.classifier,
                    report.unigram_k,
                )?;
                Ok(bundle.artifacts() == report.per_fold[f].artifacts)
            })
            .collect::<Result<Vec<bool>, EvalError>>()
    })??;
    Ok(LeakageAudit {
        label: report.label(),
        passed: verdicts.iter().all(|&v| v),
        folds: verdicts,
    })
}
