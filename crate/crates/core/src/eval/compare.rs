use serde::{Deserialize, Serialize};

use super::{EvalError, EvalReport};
use crate::stats::{mcnemar, McNemarMethod, McNemarResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairComparison {
    pub a: String,
    pub b: String,
    pub weighted_f_a: f64,
    pub weighted_f_b: f64,
    pub mcnemar: McNemarResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub fold_hash: String,
    pub pairs: Vec<PairComparison>,
}

/// McNemar's test on the pooled predictions of every pair of reports.
pub fn run_comparison(reports: &[&EvalReport], alpha: f64, method: McNemarMethod) -> Result<ComparisonReport, EvalError> {
    let first = reports
        .first()
        .ok_or_else(|| EvalError::Invalid("nothing to compare".into()))?;
    for r in reports {
        if r.fold_hash != first.fold_hash || r.sentence_ids != first.sentence_ids {
            return Err(EvalError::FoldMismatch(format!("{} vs {}", first.label(), r.label())));
        }
    }
    let mut pairs = Vec::new();
    for (i, a) in reports.iter().enumerate() {
        for b in &reports[i + 1..] {
            pairs.push(PairComparison {
                a: a.label(),
                b: b.label(),
                weighted_f_a: a.metrics.weighted.f1,
                weighted_f_b: b.metrics.weighted.f1,
                mcnemar: mcnemar(&a.predictions, &b.predictions, &a.gold, alpha, method)?,
            });
        }
    }
    Ok(ComparisonReport {
        fold_hash: first.fold_hash.clone(),
        pairs,
    })
}
