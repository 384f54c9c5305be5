//! Saccade extraction and the simple gaze features of a single trial.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{Sentence, Trial};
use crate::svg::Svg;

#[derive(Debug, Error, PartialEq)]
pub enum GazeError {
    #[error("trial for sentence {trial_sentence} does not belong to sentence {sentence}")]
    TrialSentenceMismatch { trial_sentence: u32, sentence: u32 },
    #[error("word_index {word_index} exceeds token count {token_count} of sentence {sentence}")]
    WordIndexOutOfRange {
        sentence: u32,
        word_index: usize,
        token_count: usize,
    },
    #[error("trial has no fixations")]
    EmptyTrial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Regressive,
}

/// A jump between fixations on two different words.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Saccade {
    pub from_word: usize,
    pub to_word: usize,
    pub from_x: f64,
    pub to_x: f64,
}

impl Saccade {
    pub fn direction(&self) -> Direction {
        if self.to_word < self.from_word {
            Direction::Regressive
        } else {
            Direction::Forward
        }
    }

    pub fn is_regression(&self) -> bool {
        self.direction() == Direction::Regressive
    }

    /// Distance in words.
    pub fn word_distance(&self) -> usize {
        self.from_word.abs_diff(self.to_word)
    }

    /// Distance in pixels.
    pub fn pixel_amplitude(&self) -> f64 {
        (self.to_x - self.from_x).abs()
    }
}

/// One saccade per consecutive fixation pair landing on different words.
pub fn derive_saccades(trial: &Trial) -> Vec<Saccade> {
    trial
        .fixations
        .windows(2)
        .filter(|w| w[0].word_index != w[1].word_index)
        .map(|w| Saccade {
            from_word: w[0].word_index,
            to_word: w[1].word_index,
            from_x: w[0].x,
            to_x: w[1].x,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimpleGazeFeatures {
    /// Total fixation duration per word (ms).
    pub fdur: f64,
    /// Fixations per word.
    pub fc: f64,
    /// Summed saccade length in words, per word.
    pub sl: f64,
    /// Regression count.
    pub reg: u32,
    /// Fraction of tokens never fixated.
    pub skip: f64,
    /// Regressions from the second half of the sentence into the first half.
    pub rsf: u32,
    /// Position of the word launching the widest (in pixels) regression, over
    /// the word count. Zero without regressions.
    pub lreg: f64,
}

impl SimpleGazeFeatures {
    pub const NAMES: [&'static str; 7] = ["FDUR", "FC", "SL", "REG", "SKIP", "RSF", "LREG"];

    pub fn to_array(&self) -> [f64; 7] {
        [
            self.fdur,
            self.fc,
            self.sl,
            self.reg as f64,
            self.skip,
            self.rsf as f64,
            self.lreg,
        ]
    }
}

/// Checks that `trial` was recorded over `sentence` and that every fixation
/// lands on one of its tokens.
pub fn check_alignment(trial: &Trial, sentence: &Sentence) -> Result<(), GazeError> {
    if trial.sentence_id != sentence.id {
        return Err(GazeError::TrialSentenceMismatch {
            trial_sentence: trial.sentence_id,
            sentence: sentence.id,
        });
    }
    if trial.fixations.is_empty() {
        return Err(GazeError::EmptyTrial);
    }
    let n = sentence.tokens.len();
    if let Some(f) = trial.fixations.iter().find(|f| f.word_index == 0 || f.word_index > n) {
        return Err(GazeError::WordIndexOutOfRange {
            sentence: sentence.id,
            word_index: f.word_index,
            token_count: n,
        });
    }
    Ok(())
}

/// Index of the last word in the first half of an `n`-token sentence.
/// Odd lengths put the extra word in the second half.
pub fn first_half_end(n: usize) -> usize {
    n / 2
}

pub fn simple_gaze_features(trial: &Trial, sentence: &Sentence) -> Result<SimpleGazeFeatures, GazeError> {
    check_alignment(trial, sentence)?;
    let n = sentence.tokens.len();
    let nf = n as f64;
    let saccades = derive_saccades(trial);
    let half = first_half_end(n);

    let total: f64 = trial.fixations.iter().map(|f| f.duration).sum();
    let fixated: BTreeSet<usize> = trial.fixations.iter().map(|f| f.word_index).collect();
    let path_words: usize = saccades.iter().map(Saccade::word_distance).sum();

    let mut reg = 0u32;
    let mut rsf = 0u32;
    // (amplitude, from_word) of the widest regression; strict `>` keeps the earliest on ties
    let mut widest: Option<(f64, usize)> = None;
    for s in saccades.iter().filter(|s| s.is_regression()) {
        reg += 1;
        if s.from_word > half && s.to_word <= half {
            rsf += 1;
        }
        let amp = s.pixel_amplitude();
        if widest.is_none_or(|(best, _)| amp > best) {
            widest = Some((amp, s.from_word));
        }
    }

    Ok(SimpleGazeFeatures {
        fdur: total / nf,
        fc: trial.fixations.len() as f64 / nf,
        sl: path_words as f64 / nf,
        reg,
        skip: (n - fixated.len()) as f64 / nf,
        rsf,
        lreg: widest.map_or(0.0, |(_, w)| w as f64 / nf),
    })
}

/// Scanpath plot: words along x, cumulative time (ms) down y, one circle per
/// fixation with radius proportional to its duration and one segment per
/// consecutive fixation pair.
pub fn render_scanpath_svg(trial: &Trial, sentence: &Sentence) -> Vec<u8> {
    const LEFT: f64 = 40.0;
    const TOP: f64 = 60.0;
    const COL: f64 = 70.0;
    const PLOT_H: f64 = 400.0;
    const MAX_R: f64 = 18.0;

    let n = sentence.tokens.len().max(1);
    let total = trial.total_duration().max(1.0);
    let max_dur = trial
        .fixations
        .iter()
        .map(|f| f.duration)
        .fold(0.0_f64, f64::max)
        .max(1.0);
    let width = LEFT * 2.0 + COL * n as f64;
    let height = TOP + PLOT_H + 50.0;
    let mut svg = Svg::new(width, height);

    let col_x = |w: usize| LEFT + COL * (w as f64 - 0.5);
    svg.text(
        "title",
        LEFT,
        24.0,
        "start",
        &format!("sentence {} / participant {}", sentence.id, trial.participant_id),
    );
    svg.line("axis", LEFT, TOP, LEFT + COL * n as f64, TOP, "");
    svg.line("axis", LEFT, TOP, LEFT, TOP + PLOT_H, "");
    for (i, tok) in sentence.tokens.iter().enumerate() {
        svg.text("word", col_x(i + 1), TOP - 10.0, "middle", tok);
    }
    svg.text("axis-label", LEFT - 6.0, TOP + PLOT_H + 20.0, "end", &format!("{total:.0} ms"));

    let mut onset = 0.0;
    let mut points = Vec::with_capacity(trial.fixations.len());
    for f in &trial.fixations {
        let y = TOP + PLOT_H * onset / total;
        points.push((col_x(f.word_index), y, f.duration, f.word_index));
        onset += f.duration;
    }
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        let class = if b.3 < a.3 { "segment regression" } else { "segment" };
        svg.line(class, a.0, a.1, b.0, b.1, "");
    }
    for (i, &(x, y, d, w)) in points.iter().enumerate() {
        svg.circle(
            "fixation",
            x,
            y,
            MAX_R * d / max_dur,
            &format!("#{} word {} {:.0} ms", i + 1, w, d),
        );
    }
    svg.finish(
        ".axis{stroke:#333}.segment{stroke:#1f77b4;stroke-width:1.5}.regression{stroke:#d62728}\
         .fixation{fill:#1f77b4;fill-opacity:0.45}text{font-family:sans-serif;font-size:12px}",
    )
}
