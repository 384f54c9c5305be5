use serde::{Deserialize, Serialize};

use super::crossval::FoldArtifacts;
use super::EvalError;
use crate::corpus::{Label, Lexicons};
use crate::dataset::{artifact_hash, fit_lexical_models, FeatureConfig, FeatureSchema, LexicalModels, Precomputed, Scaler};
use crate::learn::{ClassifierConfig, ClassifierKind, TrainedModel};

pub const BUNDLE_SCHEMA: &str = "sarcaze.model/1";

/// Everything needed to classify new sentences: lexical models, scaler,
/// classifier and the feature schema they were fitted against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelBundle {
    pub schema_id: String,
    pub feature_config: FeatureConfig,
    pub schema: FeatureSchema,
    pub classifier: ClassifierConfig,
    pub lexical: LexicalModels,
    pub scaler: Option<Scaler>,
    pub model: TrainedModel,
}

impl ModelBundle {
    /// Fits on the sentences at `train`, reading labels from `labels` (indexed like `pre`).
    pub fn fit(
        pre: &Precomputed,
        labels: &[Label],
        train: &[usize],
        lexicons: Option<&Lexicons>,
        classifier: &ClassifierConfig,
        unigram_k: usize,
    ) -> Result<Self, EvalError> {
        let lexical = fit_lexical_models(pre, train, lexicons, unigram_k, &classifier.train)?;
        let y: Vec<Label> = train.iter().map(|&i| labels[i]).collect();
        let (scaler, model) = if classifier.kind == ClassifierKind::Milr {
            let bags = pre.bags(&lexical, train)?;
            let instances: Vec<Vec<f64>> = bags.iter().flat_map(|b| b.instances.iter().cloned()).collect();
            let scaler = Scaler::fit(&instances);
            let x: Vec<Vec<Vec<f64>>> = bags.iter().map(|b| scaler.transform(&b.instances)).collect();
            (Some(scaler), TrainedModel::fit(classifier, &x, &y)?)
        } else {
            let x: Vec<Vec<f64>> = pre.averaged(&lexical, train)?.into_iter().map(|v| v.values).collect();
            if classifier.kind.wants_scaling() {
                let scaler = Scaler::fit(&x);
                let model = TrainedModel::fit_vectors(classifier, &scaler.transform(&x), &y)?;
                (Some(scaler), model)
            } else {
                (None, TrainedModel::fit_vectors(classifier, &x, &y)?)
            }
        };
        Ok(ModelBundle {
            schema_id: BUNDLE_SCHEMA.to_string(),
            feature_config: pre.config,
            schema: lexical.schema(pre.config),
            classifier: classifier.clone(),
            lexical,
            scaler,
            model,
        })
    }

    fn scale(&self, rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
        match &self.scaler {
            Some(s) => s.transform(rows),
            None => rows.to_vec(),
        }
    }

    /// Predicts the sentences at `indices`: bags for MILR, averaged vectors otherwise.
    pub fn predict(&self, pre: &Precomputed, indices: &[usize]) -> Result<Vec<Label>, EvalError> {
        if pre.config != self.feature_config {
            return Err(EvalError::Invalid(format!(
                "model expects feature configuration {}, data has {}",
                self.feature_config, pre.config
            )));
        }
        if self.classifier.kind == ClassifierKind::Milr {
            Ok(pre
                .bags(&self.lexical, indices)?
                .iter()
                .map(|b| self.model.predict_bag(&self.scale(&b.instances)))
                .collect())
        } else {
            let x: Vec<Vec<f64>> = pre.averaged(&self.lexical, indices)?.into_iter().map(|v| v.values).collect();
            Ok(self.scale(&x).iter().map(|v| self.model.predict_vector(v)).collect())
        }
    }

    pub fn artifacts(&self) -> FoldArtifacts {
        FoldArtifacts {
            lexical: artifact_hash(&self.lexical),
            scaler: artifact_hash(&self.scaler),
            model: artifact_hash(&self.model),
        }
    }
}
