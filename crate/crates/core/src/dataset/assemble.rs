use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Bag, DatasetError, FeatureConfig, FeatureMatrix, FeatureSchema, FeatureVector};
use crate::corpus::{Corpus, Label, Lexicons, Sentence};
use crate::gaze::simple_gaze_features;
use crate::learn::TrainConfig;
use crate::saliency::{build_saliency_graph, complex_gaze_features};
use crate::textfeat::{
    apply_lp, fit_unigrams, flesch_score, project_unigrams, textual_features, train_lp, LpModel, TextFeatError,
    TextFeatures, UnigramModel,
};

/// Everything about each sentence that does not depend on a training fold:
/// lexicon features, readability and the per-participant gaze blocks.
#[derive(Debug, Clone)]
pub struct Precomputed {
    pub config: FeatureConfig,
    pub sentences: Vec<Sentence>,
    pub labels: Vec<Label>,
    text: Vec<Option<TextFeatures>>,
    textual: Vec<[f64; 2]>,
    /// (participant, gaze block values) per sentence.
    gaze: Vec<Vec<(String, Vec<f64>)>>,
}

impl Precomputed {
    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }
}

fn gaze_block(config: &FeatureConfig, corpus: &Corpus, s: &Sentence) -> Result<Vec<(String, Vec<f64>)>, DatasetError> {
    let mut out = Vec::new();
    for trial in corpus.trials_for(s.id) {
        let mut v = Vec::new();
        if config.simple_gaze {
            v.extend(simple_gaze_features(trial, s).map_err(|e| DatasetError::Saliency(e.into()))?.to_array());
        }
        if config.complex_gaze {
            v.extend(complex_gaze_features(&build_saliency_graph(trial, s)?)?.to_array());
        }
        if config.reading_time {
            v.push(trial.total_duration());
        }
        out.push((trial.participant_id.clone(), v));
    }
    if out.is_empty() {
        return Err(DatasetError::MissingTrials(s.id));
    }
    Ok(out)
}

/// Computes the fold-independent inputs, in parallel over sentences.
pub fn precompute(corpus: &Corpus, lexicons: Option<&Lexicons>, config: FeatureConfig) -> Result<Precomputed, DatasetError> {
    config.validate()?;
    if config.sarcasm && lexicons.is_none() {
        return Err(TextFeatError::LexiconMissing.into());
    }
    type Row = (Option<TextFeatures>, [f64; 2], Vec<(String, Vec<f64>)>);
    let rows: Vec<Row> = corpus
        .sentences()
        .par_iter()
        .map(|s| {
            let text = if config.sarcasm { Some(textual_features(s, lexicons)?) } else { None };
            let textual = if config.textual {
                [flesch_score(s)?, s.tokens.len() as f64]
            } else {
                [0.0; 2]
            };
            let gaze = if config.uses_gaze() { gaze_block(&config, corpus, s)? } else { Vec::new() };
            Ok((text, textual, gaze))
        })
        .collect::<Result<_, DatasetError>>()?;
    let mut pre = Precomputed {
        config,
        sentences: corpus.sentences().to_vec(),
        labels: corpus.labels(),
        text: Vec::with_capacity(rows.len()),
        textual: Vec::with_capacity(rows.len()),
        gaze: Vec::with_capacity(rows.len()),
    };
    for (t, r, g) in rows {
        pre.text.push(t);
        pre.textual.push(r);
        pre.gaze.push(g);
    }
    Ok(pre)
}

/// Models fitted on a training fold: the unigram PCA and the polarity classifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LexicalModels {
    pub unigram: Option<UnigramModel>,
    pub lp: Option<LpModel>,
}

impl LexicalModels {
    pub fn unigram_k(&self) -> usize {
        self.unigram.as_ref().map_or(0, UnigramModel::k)
    }

    pub fn schema(&self, config: FeatureConfig) -> FeatureSchema {
        FeatureSchema::new(config, self.unigram_k())
    }
}

/// Fits the lexical models on the sentences at `train`. The requested
/// `unigram_k` is capped at what the training fold supports.
pub fn fit_lexical_models(
    pre: &Precomputed,
    train: &[usize],
    lexicons: Option<&Lexicons>,
    unigram_k: usize,
    train_config: &TrainConfig,
) -> Result<LexicalModels, DatasetError> {
    let sentences: Vec<&Sentence> = train.iter().map(|&i| &pre.sentences[i]).collect();
    let unigram = if pre.config.unigram {
        let model = match fit_unigrams(&sentences, unigram_k) {
            Err(TextFeatError::InvalidK { max, .. }) if max > 0 && unigram_k > max => fit_unigrams(&sentences, max)?,
            r => r?,
        };
        Some(model)
    } else {
        None
    };
    let lp = if pre.config.sarcasm {
        Some(train_lp(&sentences, lexicons, train_config)?)
    } else {
        None
    };
    Ok(LexicalModels { unigram, lp })
}

impl Precomputed {
    /// Unigram, sarcasm and textual blocks: identical for every instance of a sentence.
    fn text_values(&self, i: usize, models: &LexicalModels) -> Vec<f64> {
        let s = &self.sentences[i];
        let mut v = Vec::new();
        if let Some(u) = &models.unigram {
            v.extend(project_unigrams(u, s));
        }
        if let Some(t) = &self.text[i] {
            let lp = models.lp.as_ref().map_or(0.0, |m| f64::from(apply_lp(m, s).sign()));
            v.extend([
                f64::from(t.pun),
                f64::from(u8::from(t.imp)),
                f64::from(t.exp),
                f64::from(t.lar),
                f64::from(t.pos),
                f64::from(t.neg),
                lp,
            ]);
        }
        if self.config.textual {
            v.extend(self.textual[i]);
        }
        v
    }

    fn check_finite(&self, i: usize, values: &[f64], models: &LexicalModels) -> Result<(), DatasetError> {
        if let Some(j) = values.iter().position(|v| !v.is_finite()) {
            return Err(DatasetError::NonFinite {
                sentence_id: self.sentences[i].id,
                feature: models.schema(self.config).names[j].clone(),
            });
        }
        Ok(())
    }

    /// One vector per sentence with gaze blocks averaged over participants.
    pub fn averaged(&self, models: &LexicalModels, indices: &[usize]) -> Result<Vec<FeatureVector>, DatasetError> {
        indices
            .iter()
            .map(|&i| {
                let mut values = self.text_values(i, models);
                let trials = &self.gaze[i];
                if !trials.is_empty() {
                    let n = trials.len() as f64;
                    let mut mean = vec![0.0; trials[0].1.len()];
                    for (_, g) in trials {
                        mean.iter_mut().zip(g).for_each(|(m, x)| *m += x / n);
                    }
                    values.extend(mean);
                }
                self.check_finite(i, &values, models)?;
                Ok(FeatureVector {
                    sentence_id: self.sentences[i].id,
                    values,
                    label: self.labels[i],
                })
            })
            .collect()
    }

    /// One bag per sentence, one instance per participant. Configurations
    /// without gaze blocks give single-instance bags.
    pub fn bags(&self, models: &LexicalModels, indices: &[usize]) -> Result<Vec<Bag>, DatasetError> {
        indices
            .iter()
            .map(|&i| {
                let text = self.text_values(i, models);
                let (participants, instances) = if self.gaze[i].is_empty() {
                    (Vec::new(), vec![text])
                } else {
                    self.gaze[i]
                        .iter()
                        .map(|(p, g)| {
                            let mut v = text.clone();
                            v.extend_from_slice(g);
                            (p.clone(), v)
                        })
                        .unzip()
                };
                for inst in &instances {
                    self.check_finite(i, inst, models)?;
                }
                Ok(Bag {
                    sentence_id: self.sentences[i].id,
                    participants,
                    instances,
                    label: self.labels[i],
                })
            })
            .collect()
    }
}

/// Averaged feature matrix over the whole corpus, lexical models fitted on all of it.
pub fn assemble_averaged(
    corpus: &Corpus,
    lexicons: Option<&Lexicons>,
    config: FeatureConfig,
    unigram_k: usize,
    train_config: &TrainConfig,
) -> Result<FeatureMatrix, DatasetError> {
    let pre = precompute(corpus, lexicons, config)?;
    let all: Vec<usize> = (0..pre.len()).collect();
    let models = fit_lexical_models(&pre, &all, lexicons, unigram_k, train_config)?;
    Ok(FeatureMatrix {
        schema: models.schema(config),
        rows: pre.averaged(&models, &all)?,
    })
}

pub fn assemble_bags(
    corpus: &Corpus,
    lexicons: Option<&Lexicons>,
    config: FeatureConfig,
    unigram_k: usize,
    train_config: &TrainConfig,
) -> Result<(FeatureSchema, Vec<Bag>), DatasetError> {
    let pre = precompute(corpus, lexicons, config)?;
    let all: Vec<usize> = (0..pre.len()).collect();
    let models = fit_lexical_models(&pre, &all, lexicons, unigram_k, train_config)?;
    Ok((models.schema(config), pre.bags(&models, &all)?))
}
