//! Textual features: punctuation, explicit and implicit incongruity, lexicon
//! polarity counts, readability, length, the unigram principal components and
//! the learned sentence polarity.

mod lp;
mod readability;
mod unigram;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::tokenize::is_punctuation;
use crate::corpus::{Lexicons, Polarity, Sentence};
use crate::learn::LearnError;

pub use lp::{apply_lp, train_lp, LpModel};
pub use readability::{count_syllables, flesch_score};
pub use unigram::{fit_unigrams, project_unigrams, UnigramModel, DEFAULT_UNIGRAM_K};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TextFeatError {
    #[error("sentence {0} has no alphabetic tokens")]
    NoWords(u32),
    #[error("polarity lexicons are required for textual features")]
    LexiconMissing,
    #[error("unigram matrix has zero variance")]
    DegenerateMatrix,
    #[error("unigram k = {k} outside 1..={max}")]
    InvalidK { k: usize, max: usize },
    #[error("need at least two training sentences, got {0}")]
    TooFewSentences(usize),
    #[error(transparent)]
    Learn(#[from] LearnError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TextFeatures {
    /// Punctuation tokens.
    pub pun: u32,
    /// Adjacent opposite-sign pairs in the polar-token subsequence.
    pub exp: u32,
    /// Longest constant-sign run in the polar-token subsequence.
    pub lar: u32,
    pub pos: u32,
    pub neg: u32,
    /// Learned sentence polarity; filled by [`apply_lp`].
    pub lp: Option<Polarity>,
    pub imp: bool,
    pub red: f64,
    pub len: u32,
}

/// Lowercased non-punctuation tokens.
pub(crate) fn content_tokens(sentence: &Sentence) -> impl Iterator<Item = String> + '_ {
    sentence.tokens.iter().filter(|t| !is_punctuation(t)).map(|t| t.to_lowercase())
}

fn contains_run(haystack: &[String], needle: &[String]) -> bool {
    !needle.is_empty() && haystack.windows(needle.len()).any(|w| w == needle)
}

pub fn textual_features(sentence: &Sentence, lexicons: Option<&Lexicons>) -> Result<TextFeatures, TextFeatError> {
    let lex = lexicons.ok_or(TextFeatError::LexiconMissing)?;
    let lowered: Vec<String> = sentence.tokens.iter().map(|t| t.to_lowercase()).collect();
    let polar: Vec<Polarity> = lowered.iter().filter_map(|t| lex.polarity_of(t)).collect();

    let pos = polar.iter().filter(|&&p| p == Polarity::Positive).count() as u32;
    let neg = polar.len() as u32 - pos;
    let exp = polar.windows(2).filter(|w| w[0] != w[1]).count() as u32;
    let mut lar = 0;
    let mut run = 0;
    for (i, p) in polar.iter().enumerate() {
        run = if i > 0 && polar[i - 1] == *p { run + 1 } else { 1 };
        lar = lar.max(run);
    }
    let imp = lex
        .implicit_phrases
        .iter()
        .any(|(phrase, pol)| polar.contains(&pol.opposite()) && contains_run(&lowered, phrase));

    Ok(TextFeatures {
        pun: sentence.tokens.iter().filter(|t| is_punctuation(t)).count() as u32,
        exp,
        lar,
        pos,
        neg,
        lp: None,
        imp,
        red: flesch_score(sentence)?,
        len: sentence.tokens.len() as u32,
    })
}
