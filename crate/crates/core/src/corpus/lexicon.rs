use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{tokenize, CorpusError, Polarity};

/// Sentiment word lists and the implicit-incongruity phrase list.
///
/// Words and phrases are stored lowercased.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Lexicons {
    pub positive: BTreeSet<String>,
    pub negative: BTreeSet<String>,
    pub implicit_phrases: Vec<(Vec<String>, Polarity)>,
}

fn word_list(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

impl Lexicons {
    pub fn new(
        positive: BTreeSet<String>,
        negative: BTreeSet<String>,
        implicit_phrases: Vec<(Vec<String>, Polarity)>,
    ) -> Result<Self, CorpusError> {
        let positive: BTreeSet<String> = positive.into_iter().map(|w| w.to_lowercase()).collect();
        let negative: BTreeSet<String> = negative.into_iter().map(|w| w.to_lowercase()).collect();
        if let Some(w) = positive.intersection(&negative).next() {
            return Err(CorpusError::Lexicon(format!(
                "`{w}` is listed as both positive and negative"
            )));
        }
        let implicit_phrases = implicit_phrases
            .into_iter()
            .map(|(p, pol)| (p.into_iter().map(|t| t.to_lowercase()).collect(), pol))
            .collect();
        Ok(Lexicons {
            positive,
            negative,
            implicit_phrases,
        })
    }

    /// Parses the three lexicon files from their contents.
    pub fn parse(positive: &str, negative: &str, implicit_tsv: &str) -> Result<Self, CorpusError> {
        let mut phrases = Vec::new();
        for (i, line) in implicit_tsv.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (phrase, pol) = line.split_once('\t').ok_or_else(|| {
                CorpusError::Lexicon(format!("implicit_phrases.tsv line {}: expected phrase<TAB>polarity", i + 1))
            })?;
            let polarity = Polarity::parse(pol).ok_or_else(|| {
                CorpusError::Lexicon(format!("implicit_phrases.tsv line {}: bad polarity `{pol}`", i + 1))
            })?;
            let tokens = tokenize(phrase);
            if tokens.is_empty() {
                return Err(CorpusError::Lexicon(format!(
                    "implicit_phrases.tsv line {}: empty phrase",
                    i + 1
                )));
            }
            phrases.push((tokens, polarity));
        }
        Lexicons::new(word_list(positive), word_list(negative), phrases)
    }

    /// Loads `positive.txt`, `negative.txt` and `implicit_phrases.tsv` from a
    /// directory. A missing phrase file is treated as empty.
    pub fn load_dir(dir: &Path) -> Result<Self, CorpusError> {
        let positive = fs::read_to_string(dir.join("positive.txt"))?;
        let negative = fs::read_to_string(dir.join("negative.txt"))?;
        let phrases = match fs::read_to_string(dir.join("implicit_phrases.tsv")) {
            Ok(s) => s,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => String::new(),
            Err(e) => return Err(e.into()),
        };
        Lexicons::parse(&positive, &negative, &phrases)
    }

    pub fn write_dir(&self, dir: &Path) -> Result<(), CorpusError> {
        fs::create_dir_all(dir)?;
        let join = |s: &BTreeSet<String>| s.iter().map(|w| format!("{w}\n")).collect::<String>();
        fs::write(dir.join("positive.txt"), join(&self.positive))?;
        fs::write(dir.join("negative.txt"), join(&self.negative))?;
        let tsv: String = self
            .implicit_phrases
            .iter()
            .map(|(p, pol)| format!("{}\t{}\n", p.join(" "), pol.sign()))
            .collect();
        fs::write(dir.join("implicit_phrases.tsv"), tsv)?;
        Ok(())
    }

    /// Polarity of a single token (case-insensitive).
    pub fn polarity_of(&self, token: &str) -> Option<Polarity> {
        let lower = token.to_lowercase();
        if self.positive.contains(&lower) {
            Some(Polarity::Positive)
        } else if self.negative.contains(&lower) {
            Some(Polarity::Negative)
        } else {
            None
        }
    }
}
