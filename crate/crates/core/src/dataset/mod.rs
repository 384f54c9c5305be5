//! Per-sentence feature vectors and multi-instance bags in a fixed canonical
//! column order, the fold-local lexical models they depend on, and z-scoring.

mod assemble;
mod scaler;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::corpus::Label;
use crate::gaze::SimpleGazeFeatures;
use crate::saliency::{ComplexGazeFeatures, SaliencyError};
use crate::textfeat::TextFeatError;

pub use assemble::{
    assemble_averaged, assemble_bags, fit_lexical_models, precompute, LexicalModels, Precomputed,
};
pub use scaler::Scaler;

#[derive(Debug, Error, PartialEq)]
pub enum DatasetError {
    #[error("sentence {0} has no trials but the configuration uses gaze features")]
    MissingTrials(u32),
    #[error("feature configuration enables no blocks")]
    EmptyConfig,
    #[error("unknown feature configuration `{0}`")]
    UnknownConfig(String),
    #[error("non-finite value in feature {feature} of sentence {sentence_id}")]
    NonFinite { sentence_id: u32, feature: String },
    #[error(transparent)]
    Text(#[from] TextFeatError),
    #[error(transparent)]
    Saliency(#[from] SaliencyError),
}

pub const SARCASM_NAMES: [&str; 7] = ["PUN", "IMP", "EXP", "LAR", "+VE", "-VE", "LP"];
pub const TEXTUAL_NAMES: [&str; 2] = ["RED", "LEN"];
pub const READING_TIME_NAME: &str = "RT";

/// Which canonical blocks a configuration enables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FeatureConfig {
    pub unigram: bool,
    pub sarcasm: bool,
    pub textual: bool,
    pub simple_gaze: bool,
    pub complex_gaze: bool,
    pub reading_time: bool,
}

impl FeatureConfig {
    pub const UNIGRAM: Self = Self::blocks(true, false, false, false, false, false);
    pub const SARCASM: Self = Self::blocks(true, true, false, false, false, false);
    pub const GAZE: Self = Self::blocks(false, false, true, true, true, false);
    pub const GAZE_SARCASM: Self = Self::blocks(true, true, true, true, true, false);
    pub const READING_TIME: Self = Self::blocks(true, true, true, false, false, true);

    pub const PRESETS: [(&'static str, Self); 5] = [
        ("unigram", Self::UNIGRAM),
        ("sarcasm", Self::SARCASM),
        ("gaze", Self::GAZE),
        ("gaze+sarcasm", Self::GAZE_SARCASM),
        ("reading-time", Self::READING_TIME),
    ];

    const fn blocks(unigram: bool, sarcasm: bool, textual: bool, simple: bool, complex: bool, rt: bool) -> Self {
        FeatureConfig {
            unigram,
            sarcasm,
            textual,
            simple_gaze: simple,
            complex_gaze: complex,
            reading_time: rt,
        }
    }

    pub fn uses_gaze(&self) -> bool {
        self.simple_gaze || self.complex_gaze || self.reading_time
    }

    pub fn validate(&self) -> Result<(), DatasetError> {
        if !(self.unigram || self.sarcasm || self.textual || self.uses_gaze()) {
            return Err(DatasetError::EmptyConfig);
        }
        Ok(())
    }

    /// Canonical column names for `unigram_k` principal components.
    pub fn feature_names(&self, unigram_k: usize) -> Vec<String> {
        let mut names = Vec::new();
        if self.unigram {
            names.extend((1..=unigram_k).map(|i| format!("UNI_{i}")));
        }
        let mut block = |on: bool, list: &[&str]| {
            if on {
                names.extend(list.iter().map(|s| s.to_string()));
            }
        };
        block(self.sarcasm, &SARCASM_NAMES);
        block(self.textual, &TEXTUAL_NAMES);
        block(self.simple_gaze, &SimpleGazeFeatures::NAMES);
        block(self.complex_gaze, &ComplexGazeFeatures::NAMES);
        block(self.reading_time, &[READING_TIME_NAME]);
        names
    }
}

impl fmt::Display for FeatureConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match Self::PRESETS.iter().find(|(_, c)| c == self) {
            Some((name, _)) => f.write_str(name),
            None => write!(f, "{self:?}"),
        }
    }
}

impl FromStr for FeatureConfig {
    type Err = DatasetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Self::PRESETS
            .iter()
            .find(|(name, _)| *name == key)
            .map(|(_, c)| *c)
            .ok_or_else(|| DatasetError::UnknownConfig(s.to_string()))
    }
}

/// Gaze-derived columns are every simple, complex and reading-time feature.
pub fn is_gaze_feature(name: &str) -> bool {
    name == READING_TIME_NAME
        || SimpleGazeFeatures::NAMES.contains(&name)
        || ComplexGazeFeatures::NAMES.contains(&name)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureSchema {
    pub config: FeatureConfig,
    pub names: Vec<String>,
    /// SHA-256 over the newline-joined names.
    pub hash: String,
}

impl FeatureSchema {
    pub fn new(config: FeatureConfig, unigram_k: usize) -> Self {
        let names = config.feature_names(unigram_k);
        let hash = sha256_hex(names.join("\n").as_bytes());
        FeatureSchema { config, names, hash }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Content hash of any serializable artifact.
pub fn artifact_hash<T: Serialize>(value: &T) -> String {
    sha256_hex(&serde_json::to_vec(value).expect("artifact serializes"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub sentence_id: u32,
    pub values: Vec<f64>,
    pub label: Label,
}

/// One instance per participant who read the sentence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bag {
    pub sentence_id: u32,
    pub participants: Vec<String>,
    pub instances: Vec<Vec<f64>>,
    pub label: Label,
}

impl Bag {
    /// Feature-wise arithmetic mean of the instances.
    pub fn mean(&self) -> Vec<f64> {
        let n = self.instances.len() as f64;
        let mut m = vec![0.0; self.instances[0].len()];
        for inst in &self.instances {
            m.iter_mut().zip(inst).for_each(|(a, b)| *a += b / n);
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    pub schema: FeatureSchema,
    pub rows: Vec<FeatureVector>,
}

impl FeatureMatrix {
    /// Header `sentence_id,label,<names…>`.
    pub fn to_csv(&self) -> Vec<u8> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["sentence_id".to_string(), "label".to_string()];
        header.extend(self.schema.names.iter().cloned());
        w.write_record(&header).expect("in-memory write");
        for r in &self.rows {
            let mut rec = vec![r.sentence_id.to_string(), r.label.sign().to_string()];
            rec.extend(r.values.iter().map(|v| v.to_string()));
            w.write_record(&rec).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }
}
