use super::TextFeatError;
use crate::corpus::tokenize::{is_terminal, is_word};
use crate::corpus::Sentence;

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

/// Vowel-group heuristic. Non-words count zero syllables; words count at least one.
pub fn count_syllables(word: &str) -> usize {
    if !is_word(word) {
        return 0;
    }
    let chars: Vec<char> = word.to_lowercase().chars().filter(|c| c.is_alphabetic()).collect();
    let mut groups = 0;
    let mut prev_vowel = false;
    for &c in &chars {
        let v = is_vowel(c);
        if v && !prev_vowel {
            groups += 1;
        }
        prev_vowel = v;
    }
    let n = chars.len();
    // a final 'e' that forms its own group is silent, except in consonant + "le"
    if n >= 2 && chars[n - 1] == 'e' && !is_vowel(chars[n - 2]) {
        let consonant_le = n >= 3 && chars[n - 2] == 'l' && !is_vowel(chars[n - 3]);
        if !consonant_le {
            groups -= 1;
        }
    }
    groups.max(1)
}

/// Flesch Reading Ease over the sentence's alphabetic tokens.
pub fn flesch_score(sentence: &Sentence) -> Result<f64, TextFeatError> {
    let words: Vec<&String> = sentence.tokens.iter().filter(|t| is_word(t)).collect();
    if words.is_empty() {
        return Err(TextFeatError::NoWords(sentence.id));
    }
    let sentences = sentence.tokens.iter().filter(|t| is_terminal(t)).count().max(1) as f64;
    let syllables: usize = words.iter().map(|w| count_syllables(w)).sum();
    let nw = words.len() as f64;
    Ok(206.835 - 1.015 * (nw / sentences) - 84.6 * (syllables as f64 / nw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Label;

    #[test]
    fn syllable_examples() {
        assert_eq!(count_syllables("cat"), 1);
        assert_eq!(count_syllables("cherish"), 2);
        assert_eq!(count_syllables("misconception"), 4);
        assert_eq!(count_syllables("make"), 1);
        assert_eq!(count_syllables("table"), 2);
        assert_eq!(count_syllables("the"), 1);
        assert_eq!(count_syllables("free"), 1);
        assert_eq!(count_syllables("!"), 0);
        assert_eq!(count_syllables("42"), 0);
    }

    #[test]
    fn flesch_hand_values() {
        let s = Sentence::new(1, "The cat sat.", Label::NonSarcastic).unwrap();
        assert!((flesch_score(&s).unwrap() - 119.19).abs() < 1e-9);
        let s = Sentence::new(2, "we all sat in the sun and ate a bun", Label::NonSarcastic).unwrap();
        assert!((flesch_score(&s).unwrap() - 112.085).abs() < 1e-9);
    }

    #[test]
    fn flesch_depends_on_ratios_only() {
        let a = Sentence::new(1, "The cat sat.", Label::NonSarcastic).unwrap();
        let b = Sentence::new(2, "The cat sat. The cat sat.", Label::NonSarcastic).unwrap();
        assert!((flesch_score(&a).unwrap() - flesch_score(&b).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn no_words() {
        let s = Sentence::new(9, "!!! ...", Label::NonSarcastic).unwrap();
        assert_eq!(flesch_score(&s), Err(TextFeatError::NoWords(9)));
    }
}
