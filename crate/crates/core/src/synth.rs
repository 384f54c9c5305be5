//! Seeded synthetic corpora with gaze logs: sarcastic sentences are read with
//! longer fixations and more (often half-crossing) regressions, and carry a
//! planted positive/negative word clash.

use std::path::Path;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal, Normal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::tokenize::is_word;
use crate::corpus::{write_sentences_csv, write_trials_csv, CorpusError, Fixation, Label, Lexicons, Polarity, Sentence, Trial};
use crate::gaze::first_half_end;

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("invalid synthetic configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthConfig {
    pub n_sentences: usize,
    pub n_sarcastic: usize,
    pub n_participants: usize,
    /// Neutral words; the polar vocabulary comes on top.
    pub vocabulary_size: usize,
    pub min_words: usize,
    pub max_words: usize,
    /// Sarcastic over non-sarcastic mean fixation duration per word.
    pub duration_ratio: f64,
    /// Mean reading time per word for non-sarcastic sentences, in ms.
    pub base_duration: f64,
    /// Log-scale standard deviation of per-trial and per-fixation duration noise.
    pub noise_std: f64,
    /// Log-scale standard deviation of a per-sentence difficulty shared by all readers.
    pub sentence_noise_std: f64,
    pub skip_probability: f64,
    /// Chance of a regression after each fixation.
    pub regression_probability: f64,
    /// Added to `regression_probability` for sarcastic sentences.
    pub regression_boost: f64,
    /// Chance that a sarcastic sentence carries a positive/negative clash.
    pub clash_probability: f64,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            n_sentences: 1000,
            n_sarcastic: 350,
            n_participants: 7,
            vocabulary_size: 150,
            min_words: 6,
            max_words: 14,
            duration_ratio: 1.5,
            base_duration: 200.0,
            noise_std: 0.35,
            sentence_noise_std: 0.25,
            skip_probability: 0.15,
            regression_probability: 0.05,
            regression_boost: 0.06,
            clash_probability: 0.5,
            seed: 11,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<(), SynthError> {
        let bad = |m: String| Err(SynthError::InvalidConfig(m));
        if self.n_sentences < 2 || self.n_sarcastic == 0 || self.n_sarcastic >= self.n_sentences {
            return bad(format!(
                "need both classes: {} sarcastic of {} sentences",
                self.n_sarcastic, self.n_sentences
            ));
        }
        if self.n_participants == 0 {
            return bad("at least one participant".into());
        }
        if self.vocabulary_size < 10 {
            return bad("vocabulary_size must be at least 10".into());
        }
        if self.min_words < 4 || self.max_words < self.min_words || self.max_words > 150 {
            return bad(format!("words per sentence {}..={} outside 4..=150", self.min_words, self.max_words));
        }
        if !(self.duration_ratio > 0.0) || !(self.base_duration > 0.0) || !(self.noise_std >= 0.0)
            || !(self.sentence_noise_std >= 0.0)
        {
            return bad("duration_ratio and base_duration must be positive, noise terms non-negative".into());
        }
        for (name, p) in [
            ("skip_probability", self.skip_probability),
            ("regression_probability", self.regression_probability),
            ("regression_boost", self.regression_boost),
            ("clash_probability", self.clash_probability),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} = {p} outside [0, 1]"));
            }
        }
        if self.regression_probability + self.regression_boost > 1.0 {
            return bad("regression_probability + regression_boost exceeds 1".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SynthCorpus {
    pub sentences: Vec<Sentence>,
    pub trials: Vec<Trial>,
    pub lexicons: Lexicons,
}

impl SynthCorpus {
    pub fn sentences_csv(&self) -> Vec<u8> {
        write_sentences_csv(&self.sentences)
    }

    pub fn fixations_csv(&self) -> Vec<u8> {
        write_trials_csv(&self.trials)
    }

    /// Writes `sentences.csv`, `fixations.csv` and the lexicon files under `dir/lexicons`.
    pub fn write_dir(&self, dir: &Path) -> Result<(), SynthError> {
        std::fs::create_dir_all(dir).map_err(CorpusError::from)?;
        std::fs::write(dir.join("sentences.csv"), self.sentences_csv()).map_err(CorpusError::from)?;
        std::fs::write(dir.join("fixations.csv"), self.fixations_csv()).map_err(CorpusError::from)?;
        self.lexicons.write_dir(&dir.join("lexicons"))?;
        Ok(())
    }
}

const POSITIVE: [&str; 12] = [
    "love", "great", "wonderful", "awesome", "fantastic", "brilliant", "perfect", "lovely", "amazing", "excellent",
    "delightful", "superb",
];
const NEGATIVE: [&str; 12] = [
    "terrible", "awful", "horrible", "hate", "broken", "boring", "painful", "miserable", "dreadful", "rude", "ugly",
    "lousy",
];
const IMPLICIT: [&str; 6] = [
    "being ignored",
    "waiting forever",
    "working overtime",
    "stuck in traffic",
    "getting sick",
    "losing everything",
];
const ONSETS: [&str; 14] = ["b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z"];
const NUCLEI: [&str; 5] = ["a", "e", "i", "o", "u"];

fn vocabulary(size: usize, rng: &mut ChaCha8Rng) -> Vec<String> {
    let mut words = std::collections::BTreeSet::new();
    while words.len() < size {
        let syllables = rng.random_range(1..=3);
        let w: String = (0..syllables)
            .map(|_| format!("{}{}", ONSETS.choose(rng).unwrap(), NUCLEI.choose(rng).unwrap()))
            .collect::<String>()
            + ONSETS.choose(rng).unwrap();
        words.insert(w);
    }
    let mut v: Vec<String> = words.into_iter().collect();
    v.shuffle(rng);
    v
}

fn sentence_words(label: Label, config: &SynthConfig, vocab: &[String], rng: &mut ChaCha8Rng) -> (Vec<String>, Polarity) {
    let n = rng.random_range(config.min_words..=config.max_words);
    let mut words: Vec<String> = (0..n).map(|_| vocab.choose(rng).unwrap().clone()).collect();
    let pick = |list: &[&str], rng: &mut ChaCha8Rng| list.choose(rng).unwrap().to_string();
    let place = |words: &mut Vec<String>, w: String, rng: &mut ChaCha8Rng| {
        let at = rng.random_range(0..words.len());
        words[at] = w;
    };
    let polarity;
    if label.is_positive() {
        // positive surface over a negative situation
        polarity = Polarity::Positive;
        place(&mut words, pick(&POSITIVE, rng), rng);
        if rng.random_bool(config.clash_probability) {
            if rng.random_bool(0.5) {
                place(&mut words, pick(&NEGATIVE, rng), rng);
            } else {
                let phrase: Vec<String> = pick(&IMPLICIT, rng).split(' ').map(String::from).collect();
                let at = rng.random_range(0..=words.len() - phrase.len());
                words.splice(at..at + phrase.len(), phrase);
            }
        }
    } else {
        polarity = if rng.random_bool(0.5) { Polarity::Positive } else { Polarity::Negative };
        let list: &[&str] = if polarity == Polarity::Positive { &POSITIVE } else { &NEGATIVE };
        for _ in 0..rng.random_range(0..=2) {
            place(&mut words, pick(list, rng), rng);
        }
    }
    (words, polarity)
}

/// Pixel centre of each token on a single line of monospaced text.
fn token_centres(tokens: &[String]) -> Vec<f64> {
    let mut x = 40.0;
    tokens
        .iter()
        .map(|t| {
            let w = 11.0 * t.chars().count() as f64;
            let c = x + w / 2.0;
            x += w + 11.0;
            c
        })
        .collect()
}

fn scanpath(sentence: &Sentence, sarcastic: bool, speed: f64, config: &SynthConfig, rng: &mut ChaCha8Rng) -> Vec<Fixation> {
    let n = sentence.tokens.len();
    let words: Vec<usize> = (1..=n).filter(|&i| is_word(&sentence.tokens[i - 1])).collect();
    let half = first_half_end(n);
    let p_reg = config.regression_probability + if sarcastic { config.regression_boost } else { 0.0 };
    let mut path: Vec<usize> = Vec::new();
    for (k, &w) in words.iter().enumerate() {
        let last = k + 1 == words.len();
        if !last && !path.is_empty() && rng.random_bool(config.skip_probability) {
            continue;
        }
        path.push(w);
        let earlier: Vec<usize> = words[..k].to_vec();
        if !earlier.is_empty() && rng.random_bool(p_reg) {
            let crossing: Vec<usize> = earlier.iter().copied().filter(|&e| e <= half).collect();
            let target = if sarcastic && w > half && !crossing.is_empty() && rng.random_bool(0.6) {
                *crossing.choose(rng).unwrap()
            } else {
                *earlier.choose(rng).unwrap()
            };
            path.push(target);
            if !last {
                // return to where reading left off
                path.push(w);
            }
        }
    }
    path.dedup();

    let centres = token_centres(&sentence.tokens);
    let per_fix = LogNormal::new(0.0, config.noise_std / 2.0).expect("valid sigma");
    let jitter = Normal::new(0.0, 3.0).expect("valid sd");
    let mut durations: Vec<f64> = path.iter().map(|_| per_fix.sample(rng)).collect();
    // rescale so the trial's reading time per word hits its target
    let trial_noise = LogNormal::new(0.0, config.noise_std).expect("valid sigma").sample(rng);
    let ratio = if sarcastic { config.duration_ratio } else { 1.0 };
    let target_total = config.base_duration * ratio * speed * trial_noise * n as f64;
    let sum: f64 = durations.iter().sum();
    durations.iter_mut().for_each(|d| *d = (*d * target_total / sum).max(1.0));
    path.iter()
        .zip(durations)
        .map(|(&w, duration)| Fixation {
            word_index: w,
            duration: duration.round().max(1.0),
            x: (centres[w - 1] + jitter.sample(rng)).round(),
        })
        .collect()
}

pub fn generate(config: &SynthConfig) -> Result<SynthCorpus, SynthError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let vocab = vocabulary(config.vocabulary_size, &mut rng);

    let mut labels: Vec<Label> = (0..config.n_sentences)
        .map(|i| if i < config.n_sarcastic { Label::Sarcastic } else { Label::NonSarcastic })
        .collect();
    labels.shuffle(&mut rng);

    let mut sentences = Vec::with_capacity(config.n_sentences);
    for (i, &label) in labels.iter().enumerate() {
        let (words, polarity) = sentence_words(label, config, &vocab, &mut rng);
        let mut text = words.join(" ");
        text.push_str(if rng.random_bool(if label.is_positive() { 0.35 } else { 0.2 }) { "!" } else { "." });
        let mut s = Sentence::new(i as u32 + 1, text, label)?;
        s.polarity = Some(polarity);
        sentences.push(s);
    }

    let speeds: Vec<f64> = (0..config.n_participants).map(|_| rng.random_range(0.8..1.2)).collect();
    let difficulty = LogNormal::new(0.0, config.sentence_noise_std).expect("valid sigma");
    let mut trials = Vec::with_capacity(config.n_sentences * config.n_participants);
    for s in &sentences {
        let d = difficulty.sample(&mut rng);
        for (p, &speed) in speeds.iter().enumerate() {
            let fixations = scanpath(s, s.label.is_positive(), speed * d, config, &mut rng);
            trials.push(Trial::new(s.id, format!("P{}", p + 1), fixations)?);
        }
    }

    let lexicons = Lexicons::new(
        POSITIVE.iter().map(|s| s.to_string()).collect(),
        NEGATIVE.iter().map(|s| s.to_string()).collect(),
        IMPLICIT
            .iter()
            .map(|p| (p.split(' ').map(String::from).collect(), Polarity::Negative))
            .collect(),
    )?;
    Ok(SynthCorpus {
        sentences,
        trials,
        lexicons,
    })
}
