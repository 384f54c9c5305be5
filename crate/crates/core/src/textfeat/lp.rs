use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{content_tokens, TextFeatError};
use crate::corpus::{Label, Lexicons, Polarity, Sentence};
use crate::learn::{train_logreg, LinearModel, TrainConfig};

/// Logistic regression from unigram presence to sentence polarity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpModel {
    pub vocabulary: BTreeMap<String, usize>,
    pub model: LinearModel,
}

impl LpModel {
    fn presence(&self, sentence: &Sentence) -> Vec<f64> {
        let mut x = vec![0.0; self.vocabulary.len()];
        for t in content_tokens(sentence) {
            if let Some(&j) = self.vocabulary.get(&t) {
                x[j] = 1.0;
            }
        }
        x
    }
}

/// Annotated polarity, else the sign of the lexicon balance. `None` when neither decides.
fn polarity_target(sentence: &Sentence, lexicons: Option<&Lexicons>) -> Option<Polarity> {
    if sentence.polarity.is_some() {
        return sentence.polarity;
    }
    let balance: i32 = content_tokens(sentence)
        .filter_map(|t| lexicons?.polarity_of(&t))
        .map(|p| i32::from(p.sign()))
        .sum();
    match balance.signum() {
        1 => Some(Polarity::Positive),
        -1 => Some(Polarity::Negative),
        _ => None,
    }
}

/// Trains on sentences with a polarity target. When only one polarity is
/// present the model reduces to a constant bias of that sign.
pub fn train_lp(
    train: &[&Sentence],
    lexicons: Option<&Lexicons>,
    config: &TrainConfig,
) -> Result<LpModel, TextFeatError> {
    let mut vocabulary = BTreeMap::new();
    for s in train {
        for t in content_tokens(s) {
            vocabulary.entry(t).or_insert(0);
        }
    }
    for (i, col) in vocabulary.values_mut().enumerate() {
        *col = i;
    }
    let mut lp = LpModel {
        model: LinearModel::zeros(vocabulary.len()),
        vocabulary,
    };
    let mut x = Vec::new();
    let mut y = Vec::new();
    for s in train {
        if let Some(p) = polarity_target(s, lexicons) {
            x.push(lp.presence(s));
            y.push(if p == Polarity::Positive { Label::Sarcastic } else { Label::NonSarcastic });
        }
    }
    let positives = y.iter().filter(|l| l.is_positive()).count();
    if positives == 0 || positives == y.len() {
        lp.model.bias = if positives > 0 { 1.0 } else { -1.0 };
        return Ok(lp);
    }
    lp.model = train_logreg(&x, &y, config)?;
    Ok(lp)
}

pub fn apply_lp(model: &LpModel, sentence: &Sentence) -> Polarity {
    if model.model.decision(&model.presence(sentence)) > 0.0 {
        Polarity::Positive
    } else {
        Polarity::Negative
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_polarity(id: u32, text: &str, p: Polarity) -> Sentence {
        let mut s = Sentence::new(id, text, Label::NonSarcastic).unwrap();
        s.polarity = Some(p);
        s
    }

    #[test]
    fn separable_polarity() {
        let train = vec![
            with_polarity(1, "wonderful lovely day", Polarity::Positive),
            with_polarity(2, "lovely sunny", Polarity::Positive),
            with_polarity(3, "awful rainy day", Polarity::Negative),
            with_polarity(4, "awful gloomy", Polarity::Negative),
        ];
        let refs: Vec<&Sentence> = train.iter().collect();
        let m = train_lp(&refs, None, &TrainConfig::default()).unwrap();
        for s in &train {
            assert_eq!(Some(apply_lp(&m, s)), s.polarity);
        }
        let oov = Sentence::new(9, "zzz", Label::NonSarcastic).unwrap();
        let expect = if m.model.bias > 0.0 { Polarity::Positive } else { Polarity::Negative };
        assert_eq!(apply_lp(&m, &oov), expect);
    }

    #[test]
    fn lexicon_fallback_and_single_polarity() {
        let lex = Lexicons::parse("nice\n", "nasty\n", "").unwrap();
        let a = Sentence::new(1, "nice one", Label::NonSarcastic).unwrap();
        let b = Sentence::new(2, "plain", Label::NonSarcastic).unwrap();
        assert_eq!(polarity_target(&a, Some(&lex)), Some(Polarity::Positive));
        assert_eq!(polarity_target(&b, Some(&lex)), None);
        let m = train_lp(&[&a, &b], Some(&lex), &TrainConfig::default()).unwrap();
        assert_eq!(apply_lp(&m, &b), Polarity::Positive);
    }
}
