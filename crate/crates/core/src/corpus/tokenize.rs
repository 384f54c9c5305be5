//! Whitespace tokenizer that peels leading and trailing punctuation marks
//! into their own tokens. Internal punctuation (`don't`, `well-cast`) stays
//! attached to the word.

/// Returns true for characters treated as punctuation marks.
pub fn is_punct_char(c: char) -> bool {
    !c.is_alphanumeric() && !c.is_whitespace()
}

/// A token made only of punctuation marks.
pub fn is_punctuation(token: &str) -> bool {
    !token.is_empty() && token.chars().all(is_punct_char)
}

/// A token containing at least one letter.
pub fn is_word(token: &str) -> bool {
    token.chars().any(char::is_alphabetic)
}

/// Sentence-terminating mark (`.`, `!`, `?`).
pub fn is_terminal(token: &str) -> bool {
    matches!(token, "." | "!" | "?")
}

pub fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    for chunk in text.split_whitespace() {
        let chars: Vec<char> = chunk.chars().collect();
        let start = chars.iter().position(|&c| !is_punct_char(c));
        let Some(start) = start else {
            out.extend(chars.iter().map(|c| c.to_string()));
            continue;
        };
        let end = chars.iter().rposition(|&c| !is_punct_char(c)).unwrap() + 1;
        out.extend(chars[..start].iter().map(|c| c.to_string()));
        out.push(chars[start..end].iter().collect());
        out.extend(chars[end..].iter().map(|c| c.to_string()));
    }
    out
}
