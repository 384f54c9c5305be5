use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::EvalError;
use crate::corpus::Corpus;
use crate::gaze::simple_gaze_features;
use crate::saliency::SaliencyError;
use crate::dataset::DatasetError;
use crate::stats::{welch_ttest, TTestResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TTestRow {
    pub participant: String,
    pub result: TTestResult,
    pub significant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TTestTable {
    pub alpha: f64,
    pub rows: Vec<TTestRow>,
}

/// `participant → (sarcastic, non-sarcastic)` samples.
pub type ReaderSamples = BTreeMap<String, (Vec<f64>, Vec<f64>)>;

/// Average fixation duration per word of every trial, split by label.
pub fn fdur_by_participant(corpus: &Corpus) -> Result<ReaderSamples, EvalError> {
    let mut out = ReaderSamples::new();
    for trial in corpus.trials() {
        let s = corpus
            .sentence(trial.sentence_id)
            .expect("validated corpus resolves every trial");
        let fdur = simple_gaze_features(trial, s)
            .map_err(|e| DatasetError::Saliency(SaliencyError::from(e)))?
            .fdur;
        let entry = out.entry(trial.participant_id.clone()).or_default();
        if s.label.is_positive() {
            entry.0.push(fdur);
        } else {
            entry.1.push(fdur);
        }
    }
    Ok(out)
}

/// Welch's t-test of sarcastic against non-sarcastic reading time, per participant.
pub fn run_ttest_table(corpus: &Corpus, alpha: f64) -> Result<TTestTable, EvalError> {
    let rows = fdur_by_participant(corpus)?
        .into_iter()
        .map(|(participant, (s, ns))| {
            let result = welch_ttest(&s, &ns)?;
            Ok(TTestRow {
                participant,
                significant: result.p < alpha,
                result,
            })
        })
        .collect::<Result<_, EvalError>>()?;
    Ok(TTestTable { alpha, rows })
}

impl TTestTable {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<12} {:>9} {:>9} {:>9} {:>9} {:>8} {:>10} {:>4}",
            "Participant", "μ_S", "σ_S", "μ_NS", "σ_NS", "t", "p", "sig"
        );
        for r in &self.rows {
            let t = &r.result;
            let _ = writeln!(
                out,
                "{:<12} {:>9.1} {:>9.1} {:>9.1} {:>9.1} {:>8.2} {:>10.2e} {:>4}",
                r.participant,
                t.mean_a,
                t.sd_a,
                t.mean_b,
                t.sd_b,
                t.t,
                t.p,
                if r.significant { "yes" } else { "no" }
            );
        }
        out
    }
}
