//! Sentence corpus, fixation logs and lexicons, with their CSV/text formats.
//!
//! `sentences.csv` has the header `sentence_id,label,text` and may carry the
//! optional columns `polarity` (`1`/`-1`) and `aspect`. `fixations.csv` has
//! `sentence_id,participant_id,fixation_index,word_index,duration_ms,x_px`.

mod lexicon;
pub mod tokenize;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use lexicon::Lexicons;
pub use tokenize::tokenize;

pub const MAX_TOKENS: usize = 200;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: malformed row: {reason}")]
    MalformedRow { line: u64, reason: String },
    #[error("missing required column `{0}`")]
    MissingColumn(&'static str),
    #[error("duplicate sentence id {0}")]
    DuplicateId(u32),
    #[error("line {line}: fixation_index {index} does not increase for sentence {sentence_id}, participant {participant}")]
    NonMonotoneIndex {
        line: u64,
        sentence_id: u32,
        participant: String,
        index: i64,
    },
    #[error("line {line}: fixation duration must be positive, got {duration}")]
    NonPositiveDuration { line: u64, duration: f64 },
    #[error("trial for sentence {sentence_id}, participant {participant} has no fixations")]
    EmptyTrial { sentence_id: u32, participant: String },
    #[error("trial of participant {participant} references missing sentence {sentence_id}")]
    DanglingSentenceRef { sentence_id: u32, participant: String },
    #[error("sentence {sentence_id}, participant {participant}: word_index {word_index} outside 1..={token_count}")]
    WordIndexOutOfRange {
        sentence_id: u32,
        participant: String,
        word_index: usize,
        token_count: usize,
    },
    #[error("duplicate trial for sentence {sentence_id}, participant {participant}")]
    DuplicateTrial { sentence_id: u32, participant: String },
    #[error("lexicon: {0}")]
    Lexicon(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Gold class. Serialized as `1` (sarcastic) and `-1` (non-sarcastic).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Label {
    Sarcastic,
    NonSarcastic,
}

impl Label {
    pub fn from_sign(v: i64) -> Option<Self> {
        match v {
            1 => Some(Label::Sarcastic),
            -1 => Some(Label::NonSarcastic),
            _ => None,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Label::Sarcastic => 1,
            Label::NonSarcastic => -1,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Label::Sarcastic
    }

    pub fn flip(self) -> Self {
        match self {
            Label::Sarcastic => Label::NonSarcastic,
            Label::NonSarcastic => Label::Sarcastic,
        }
    }
}

impl From<Label> for i8 {
    fn from(l: Label) -> i8 {
        l.sign()
    }
}

impl TryFrom<i8> for Label {
    type Error = String;
    fn try_from(v: i8) -> Result<Self, String> {
        Label::from_sign(v as i64).ok_or_else(|| format!("label must be 1 or -1, got {v}"))
    }
}

/// Sentiment polarity of a sentence, word or phrase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn sign(self) -> i8 {
        match self {
            Polarity::Positive => 1,
            Polarity::Negative => -1,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "+1" | "+" | "pos" | "positive" => Some(Polarity::Positive),
            "-1" | "-" | "neg" | "negative" => Some(Polarity::Negative),
            _ => None,
        }
    }
}

impl From<Polarity> for i8 {
    fn from(p: Polarity) -> i8 {
        p.sign()
    }
}

impl TryFrom<i8> for Polarity {
    type Error = String;
    fn try_from(v: i8) -> Result<Self, String> {
        match v {
            1 => Ok(Polarity::Positive),
            -1 => Ok(Polarity::Negative),
            _ => Err(format!("polarity must be 1 or -1, got {v}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sentence {
    pub id: u32,
    pub text: String,
    pub tokens: Vec<String>,
    pub label: Label,
    #[serde(default)]
    pub polarity: Option<Polarity>,
    #[serde(default)]
    pub aspect: Option<String>,
}

impl Sentence {
    /// Builds a sentence from raw text; tokens come from [`tokenize`].
    pub fn new(id: u32, text: impl Into<String>, label: Label) -> Result<Self, CorpusError> {
        let text = text.into();
        let tokens = tokenize(&text);
        if tokens.is_empty() || tokens.len() > MAX_TOKENS {
            return Err(CorpusError::MalformedRow {
                line: 0,
                reason: format!("sentence {id} has {} tokens (allowed 1..={MAX_TOKENS})", tokens.len()),
            });
        }
        Ok(Sentence {
            id,
            text,
            tokens,
            label,
            polarity: None,
            aspect: None,
        })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Fixation {
    /// 1-based token position.
    pub word_index: usize,
    /// Milliseconds.
    pub duration: f64,
    /// Horizontal display position in pixels.
    pub x: f64,
}

/// One participant's scanpath over one sentence, in recorded temporal order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trial {
    pub sentence_id: u32,
    pub participant_id: String,
    pub fixations: Vec<Fixation>,
}

impl Trial {
    pub fn new(
        sentence_id: u32,
        participant_id: impl Into<String>,
        fixations: Vec<Fixation>,
    ) -> Result<Self, CorpusError> {
        let participant_id = participant_id.into();
        if fixations.is_empty() {
            return Err(CorpusError::EmptyTrial {
                sentence_id,
                participant: participant_id,
            });
        }
        if let Some(f) = fixations.iter().find(|f| !(f.duration > 0.0) || !f.duration.is_finite()) {
            return Err(CorpusError::NonPositiveDuration {
                line: 0,
                duration: f.duration,
            });
        }
        Ok(Trial {
            sentence_id,
            participant_id,
            fixations,
        })
    }

    pub fn key(&self) -> (u32, String) {
        (self.sentence_id, self.participant_id.clone())
    }

    pub fn total_duration(&self) -> f64 {
        self.fixations.iter().map(|f| f.duration).sum()
    }
}

fn malformed(line: u64, reason: impl Into<String>) -> CorpusError {
    CorpusError::MalformedRow {
        line,
        reason: reason.into(),
    }
}

fn csv_reader(bytes: &[u8]) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::Headers)
        .from_reader(bytes)
}

fn column(headers: &csv::StringRecord, name: &'static str) -> Result<usize, CorpusError> {
    headers
        .iter()
        .position(|h| h == name)
        .ok_or(CorpusError::MissingColumn(name))
}

fn record_line(rec: &csv::StringRecord) -> u64 {
    rec.position().map(|p| p.line()).unwrap_or(0)
}

fn csv_error(e: csv::Error) -> CorpusError {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CorpusError::Io(io),
        other => malformed(line, format!("{other:?}")),
    }
}

/// Parses `sentences.csv`. Row order is preserved.
pub fn parse_sentences(bytes: &[u8]) -> Result<Vec<Sentence>, CorpusError> {
    let mut rdr = csv_reader(bytes);
    let headers = rdr.headers().map_err(csv_error)?.clone();
    let id_col = column(&headers, "sentence_id")?;
    let label_col = column(&headers, "label")?;
    let text_col = column(&headers, "text")?;
    let polarity_col = headers.iter().position(|h| h == "polarity");
    let aspect_col = headers.iter().position(|h| h == "aspect");

    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_error)?;
        let line = record_line(&rec);
        if rec.len() != headers.len() {
            return Err(malformed(
                line,
                format!("expected {} columns, found {}", headers.len(), rec.len()),
            ));
        }
        let id: u32 = rec[id_col]
            .trim()
            .parse()
            .map_err(|_| malformed(line, format!("sentence_id `{}` is not an integer", &rec[id_col])))?;
        let label = rec[label_col]
            .trim()
            .parse::<i64>()
            .ok()
            .and_then(Label::from_sign)
            .ok_or_else(|| malformed(line, format!("label `{}` not in {{1,-1}}", &rec[label_col])))?;
        let mut sentence = Sentence::new(id, &rec[text_col], label).map_err(|e| match e {
            CorpusError::MalformedRow { reason, .. } => malformed(line, reason),
            other => other,
        })?;
        if let Some(c) = polarity_col {
            let raw = rec[c].trim();
            if !raw.is_empty() {
                sentence.polarity = Some(
                    Polarity::parse(raw)
                        .ok_or_else(|| malformed(line, format!("polarity `{raw}` not in {{1,-1}}")))?,
                );
            }
        }
        if let Some(c) = aspect_col {
            let raw = rec[c].trim();
            if !raw.is_empty() {
                sentence.aspect = Some(raw.to_string());
            }
        }
        if seen.insert(id, line).is_some() {
            return Err(CorpusError::DuplicateId(id));
        }
        out.push(sentence);
    }
    Ok(out)
}

/// Parses `fixations.csv`, grouping rows into trials keyed by
/// (sentence, participant). Trials are returned in order of first appearance.
pub fn parse_trials(bytes: &[u8]) -> Result<Vec<Trial>, CorpusError> {
    let mut rdr = csv_reader(bytes);
    let headers = rdr.headers().map_err(csv_error)?.clone();
    let cols = [
        column(&headers, "sentence_id")?,
        column(&headers, "participant_id")?,
        column(&headers, "fixation_index")?,
        column(&headers, "word_index")?,
        column(&headers, "duration_ms")?,
        column(&headers, "x_px")?,
    ];

    let mut order: Vec<(u32, String)> = Vec::new();
    let mut groups: HashMap<(u32, String), (i64, Vec<Fixation>)> = HashMap::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_error)?;
        let line = record_line(&rec);
        if rec.len() != headers.len() {
            return Err(malformed(
                line,
                format!("expected {} columns, found {}", headers.len(), rec.len()),
            ));
        }
        let field = |i: usize| rec[cols[i]].trim();
        let sentence_id: u32 = field(0)
            .parse()
            .map_err(|_| malformed(line, format!("sentence_id `{}` is not an integer", field(0))))?;
        let participant = field(1).to_string();
        if participant.is_empty() {
            return Err(malformed(line, "empty participant_id"));
        }
        let index: i64 = field(2)
            .parse()
            .map_err(|_| malformed(line, format!("fixation_index `{}` is not an integer", field(2))))?;
        let word_index: usize = field(3)
            .parse()
            .ok()
            .filter(|&w| w >= 1)
            .ok_or_else(|| malformed(line, format!("word_index `{}` is not a positive integer", field(3))))?;
        let duration: f64 = field(4)
            .parse()
            .map_err(|_| malformed(line, format!("duration_ms `{}` is not a number", field(4))))?;
        if !(duration > 0.0) || !duration.is_finite() {
            return Err(CorpusError::NonPositiveDuration { line, duration });
        }
        let x: f64 = field(5)
            .parse()
            .ok()
            .filter(|x: &f64| *x >= 0.0 && x.is_finite())
            .ok_or_else(|| malformed(line, format!("x_px `{}` is not a non-negative number", field(5))))?;

        let key = (sentence_id, participant);
        let entry = groups.entry(key.clone()).or_insert_with(|| {
            order.push(key.clone());
            (i64::MIN, Vec::new())
        });
        if index <= entry.0 {
            return Err(CorpusError::NonMonotoneIndex {
                line,
                sentence_id,
                participant: key.1,
                index,
            });
        }
        entry.0 = index;
        entry.1.push(Fixation {
            word_index,
            duration,
            x,
        });
    }

    order
        .into_iter()
        .map(|key| {
            let (_, fixations) = groups.remove(&key).unwrap();
            Trial::new(key.0, key.1, fixations)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub sarcastic: usize,
    pub non_sarcastic: usize,
}

impl ClassCounts {
    pub fn add(&mut self, label: Label) {
        match label {
            Label::Sarcastic => self.sarcastic += 1,
            Label::NonSarcastic => self.non_sarcastic += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.sarcastic + self.non_sarcastic
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub sentences: usize,
    pub trials: usize,
    pub participants: usize,
    pub class_counts: ClassCounts,
    /// Trials per participant, and the class split of the sentences they cover.
    pub per_participant: BTreeMap<String, ClassCounts>,
    pub sentences_without_trials: Vec<u32>,
}

impl ValidationReport {
    /// `"350:650"` style sarcastic:non-sarcastic ratio.
    pub fn class_ratio(&self) -> String {
        format!("{}:{}", self.class_counts.sarcastic, self.class_counts.non_sarcastic)
    }
}

/// Validated sentences plus their trials. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    sentences: Vec<Sentence>,
    index: HashMap<u32, usize>,
    trials: BTreeMap<(u32, String), Trial>,
    participants: BTreeSet<String>,
}

/// Enforces referential integrity and word-index bounds, and assembles the
/// corpus together with a summary report.
pub fn validate_corpus(
    sentences: Vec<Sentence>,
    trials: Vec<Trial>,
) -> Result<(Corpus, ValidationReport), CorpusError> {
    let mut index = HashMap::with_capacity(sentences.len());
    for (i, s) in sentences.iter().enumerate() {
        if index.insert(s.id, i).is_some() {
            return Err(CorpusError::DuplicateId(s.id));
        }
        if s.tokens.is_empty() || s.tokens.len() > MAX_TOKENS {
            return Err(malformed(0, format!("sentence {} has {} tokens", s.id, s.tokens.len())));
        }
    }

    let mut map = BTreeMap::new();
    let mut participants = BTreeSet::new();
    for trial in trials {
        let Some(&si) = index.get(&trial.sentence_id) else {
            return Err(CorpusError::DanglingSentenceRef {
                sentence_id: trial.sentence_id,
                participant: trial.participant_id,
            });
        };
        if trial.fixations.is_empty() {
            return Err(CorpusError::EmptyTrial {
                sentence_id: trial.sentence_id,
                participant: trial.participant_id,
            });
        }
        let n = sentences[si].tokens.len();
        if let Some(f) = trial.fixations.iter().find(|f| f.word_index == 0 || f.word_index > n) {
            return Err(CorpusError::WordIndexOutOfRange {
                sentence_id: trial.sentence_id,
                participant: trial.participant_id,
                word_index: f.word_index,
                token_count: n,
            });
        }
        participants.insert(trial.participant_id.clone());
        let key = trial.key();
        if map.contains_key(&key) {
            return Err(CorpusError::DuplicateTrial {
                sentence_id: key.0,
                participant: key.1,
            });
        }
        map.insert(key, trial);
    }

    let corpus = Corpus {
        sentences,
        index,
        trials: map,
        participants,
    };
    let report = corpus.report();
    Ok((corpus, report))
}

impl Corpus {
    pub fn sentences(&self) -> &[Sentence] {
        &self.sentences
    }

    pub fn sentence(&self, id: u32) -> Option<&Sentence> {
        self.index.get(&id).map(|&i| &self.sentences[i])
    }

    pub fn trials(&self) -> impl Iterator<Item = &Trial> {
        self.trials.values()
    }

    /// Trials of one sentence, ordered by participant id.
    pub fn trials_for(&self, sentence_id: u32) -> impl Iterator<Item = &Trial> {
        self.trials
            .range((sentence_id, String::new())..)
            .take_while(move |((s, _), _)| *s == sentence_id)
            .map(|(_, t)| t)
    }

    pub fn trial(&self, sentence_id: u32, participant: &str) -> Option<&Trial> {
        self.trials.get(&(sentence_id, participant.to_string()))
    }

    pub fn participants(&self) -> &BTreeSet<String> {
        &self.participants
    }

    pub fn labels(&self) -> Vec<Label> {
        self.sentences.iter().map(|s| s.label).collect()
    }

    pub fn report(&self) -> ValidationReport {
        let mut class_counts = ClassCounts::default();
        for s in &self.sentences {
            class_counts.add(s.label);
        }
        let mut per_participant: BTreeMap<String, ClassCounts> = BTreeMap::new();
        for t in self.trials.values() {
            let label = self.sentences[self.index[&t.sentence_id]].label;
            per_participant.entry(t.participant_id.clone()).or_default().add(label);
        }
        let sentences_without_trials = self
            .sentences
            .iter()
            .filter(|s| self.trials_for(s.id).next().is_none())
            .map(|s| s.id)
            .collect();
        ValidationReport {
            sentences: self.sentences.len(),
            trials: self.trials.len(),
            participants: self.participants.len(),
            class_counts,
            per_participant,
            sentences_without_trials,
        }
    }

    /// Copy of the corpus with the labels of the given sentences replaced.
    pub fn with_labels(&self, labels: &HashMap<u32, Label>) -> Corpus {
        let mut out = self.clone();
        for s in &mut out.sentences {
            if let Some(&l) = labels.get(&s.id) {
                s.label = l;
            }
        }
        out
    }

    pub fn to_sentences_csv(&self) -> Vec<u8> {
        write_sentences_csv(&self.sentences)
    }

    pub fn to_fixations_csv(&self) -> Vec<u8> {
        write_trials_csv(self.trials.values())
    }
}

pub fn write_sentences_csv(sentences: &[Sentence]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["sentence_id", "label", "text", "polarity", "aspect"])
        .expect("in-memory write");
    for s in sentences {
        let polarity = s.polarity.map(|p| p.sign().to_string()).unwrap_or_default();
        w.write_record([
            s.id.to_string(),
            s.label.sign().to_string(),
            s.text.clone(),
            polarity,
            s.aspect.clone().unwrap_or_default(),
        ])
        .expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

pub fn write_trials_csv<'a>(trials: impl IntoIterator<Item = &'a Trial>) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "sentence_id",
        "participant_id",
        "fixation_index",
        "word_index",
        "duration_ms",
        "x_px",
    ])
    .expect("in-memory write");
    for t in trials {
        for (i, f) in t.fixations.iter().enumerate() {
            w.write_record([
                t.sentence_id.to_string(),
                t.participant_id.clone(),
                (i + 1).to_string(),
                f.word_index.to_string(),
                f.duration.to_string(),
                f.x.to_string(),
            ])
            .expect("in-memory write");
        }
    }
    w.into_inner().expect("in-memory flush")
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIX_HEADER: &str = "sentence_id,participant_id,fixation_index,word_index,duration_ms,x_px\n";

    #[test]
    fn parses_sentence_rows() {
        let csv = "sentence_id,label,text\n1,1,\"I love being ignored\"\n2,-1,\"The movie is extremely well cast\"\n";
        let s = parse_sentences(csv.as_bytes()).unwrap();
        assert_eq!(s[0].id, 1);
        assert_eq!(s[0].label, Label::Sarcastic);
        assert_eq!(s[0].tokens, vec!["I", "love", "being", "ignored"]);
        assert_eq!(s[1].tokens.len(), 6);
        assert_eq!(s[1].label, Label::NonSarcastic);
    }

    #[test]
    fn rejects_label_outside_domain() {
        let csv = "sentence_id,label,text\n3,0,\"x\"\n";
        assert!(matches!(
            parse_sentences(csv.as_bytes()),
            Err(CorpusError::MalformedRow { .. })
        ));
    }

    #[test]
    fn rejects_bad_id_and_column_count() {
        let csv = "sentence_id,label,text\nabc,1,\"x\"\n";
        assert!(matches!(parse_sentences(csv.as_bytes()), Err(CorpusError::MalformedRow { .. })));
        let csv = "sentence_id,label,text\n1,1\n";
        assert!(matches!(parse_sentences(csv.as_bytes()), Err(CorpusError::MalformedRow { .. })));
    }

    #[test]
    fn rejects_duplicate_ids() {
        let csv = "sentence_id,label,text\n1,1,a\n1,-1,b\n";
        assert!(matches!(parse_sentences(csv.as_bytes()), Err(CorpusError::DuplicateId(1))));
    }

    #[test]
    fn optional_columns() {
        let csv = "sentence_id,label,text,polarity,aspect\n1,1,\"Great, just great.\",-1,service\n";
        let s = parse_sentences(csv.as_bytes()).unwrap();
        assert_eq!(s[0].polarity, Some(Polarity::Negative));
        assert_eq!(s[0].aspect.as_deref(), Some("service"));
    }

    #[test]
    fn groups_fixation_rows() {
        let csv = format!("{FIX_HEADER}1,P1,1,1,200,50\n1,P1,2,2,250,150\n");
        let t = parse_trials(csv.as_bytes()).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].fixations.len(), 2);
        assert_eq!(t[0].participant_id, "P1");
    }

    #[test]
    fn rejects_non_monotone_index() {
        let csv = format!("{FIX_HEADER}1,P1,2,1,200,50\n1,P1,1,2,250,150\n");
        assert!(matches!(
            parse_trials(csv.as_bytes()),
            Err(CorpusError::NonMonotoneIndex { .. })
        ));
    }

    #[test]
    fn rejects_zero_duration() {
        let csv = format!("{FIX_HEADER}1,P1,1,1,0,50\n");
        assert!(matches!(
            parse_trials(csv.as_bytes()),
            Err(CorpusError::NonPositiveDuration { .. })
        ));
    }

    #[test]
    fn rejects_missing_x_column() {
        let csv = "sentence_id,participant_id,fixation_index,word_index,duration_ms\n1,P1,1,1,200\n";
        assert!(matches!(
            parse_trials(csv.as_bytes()),
            Err(CorpusError::MissingColumn("x_px"))
        ));
    }

    #[test]
    fn empty_trial_is_distinct_error() {
        assert!(matches!(Trial::new(1, "P1", vec![]), Err(CorpusError::EmptyTrial { .. })));
    }

    fn sentence(id: u32, text: &str, label: Label) -> Sentence {
        Sentence::new(id, text, label).unwrap()
    }

    fn trial(sid: u32, p: &str, words: &[usize]) -> Trial {
        let fx = words
            .iter()
            .map(|&w| Fixation {
                word_index: w,
                duration: 200.0,
                x: 10.0 * w as f64,
            })
            .collect();
        Trial::new(sid, p, fx).unwrap()
    }

    #[test]
    fn dangling_reference() {
        let s = vec![sentence(1, "a b c", Label::Sarcastic)];
        let err = validate_corpus(s, vec![trial(99, "P1", &[1])]).unwrap_err();
        assert!(matches!(err, CorpusError::DanglingSentenceRef { sentence_id: 99, .. }));
    }

    #[test]
    fn word_index_out_of_range() {
        let s = vec![sentence(1, "a b c d e", Label::Sarcastic)];
        let err = validate_corpus(s, vec![trial(1, "P1", &[1, 9])]).unwrap_err();
        assert!(matches!(
            err,
            CorpusError::WordIndexOutOfRange {
                word_index: 9,
                token_count: 5,
                ..
            }
        ));
    }

    #[test]
    fn duplicate_trial() {
        let s = vec![sentence(1, "a b c", Label::Sarcastic)];
        let err = validate_corpus(s, vec![trial(1, "P1", &[1]), trial(1, "P1", &[2])]).unwrap_err();
        assert!(matches!(err, CorpusError::DuplicateTrial { .. }));
    }

    #[test]
    fn report_counts_classes_and_participants() {
        let mut sentences = Vec::new();
        let mut trials = Vec::new();
        for id in 0..20u32 {
            let label = if id < 7 { Label::Sarcastic } else { Label::NonSarcastic };
            sentences.push(sentence(id, "one two three", label));
            for p in ["P1", "P2"] {
                trials.push(trial(id, p, &[1, 2, 3]));
            }
        }
        sentences.push(sentence(100, "lonely", Label::NonSarcastic));
        let (corpus, report) = validate_corpus(sentences, trials).unwrap();
        assert_eq!(report.class_ratio(), "7:14");
        assert_eq!(report.participants, 2);
        assert_eq!(report.per_participant["P1"].sarcastic, 7);
        assert_eq!(report.sentences_without_trials, vec![100]);
        assert_eq!(corpus.trials_for(3).count(), 2);
        assert_eq!(corpus.trials_for(100).count(), 0);
    }
}
