use std::collections::BTreeMap;

use super::{Question, Vocabulary};

fn is_token_char(c: char) -> bool {
    c.is_alphanumeric() || c == '\'' || c == '*'
}

/// Lowercases `text` and splits it on every character that is not
/// alphanumeric, an apostrophe or `*` (censored forms such as `f**k` stay
/// whole). Apostrophes are kept only inside a token; typographic apostrophes
/// are folded to `'`.
pub fn tokenize(text: &str) -> Vec<String> {
    let lowered: String = text
        .to_lowercase()
        .chars()
        .map(|c| if c == '\u{2019}' { '\'' } else { c })
        .collect();
    lowered
        .split(|c: char| !is_token_char(c))
        .map(|t| t.trim_matches('\''))
        .filter(|t| !t.is_empty())
        .map(str::to_owned)
        .collect()
}

/// Lexicon hits of one question text, as token multisets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TaggedQuestion {
    pub neg_words: BTreeMap<String, usize>,
    pub pos_words: BTreeMap<String, usize>,
}

impl TaggedQuestion {
    pub fn is_negative(&self) -> bool {
        !self.neg_words.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        !self.pos_words.is_empty()
    }

    /// Number of negative token occurrences.
    pub fn neg_count(&self) -> usize {
        self.neg_words.values().sum()
    }

    pub fn pos_count(&self) -> usize {
        self.pos_words.values().sum()
    }
}

pub fn tag_text(text: &str, neg: &impl Vocabulary, pos: &impl Vocabulary) -> TaggedQuestion {
    let mut tagged = TaggedQuestion::default();
    for token in tokenize(text) {
        let in_neg = neg.contains_word(&token);
        let in_pos = pos.contains_word(&token);
        if in_neg && in_pos {
            *tagged.pos_words.entry(token.clone()).or_default() += 1;
            *tagged.neg_words.entry(token).or_default() += 1;
        } else if in_neg {
            *tagged.neg_words.entry(token).or_default() += 1;
        } else if in_pos {
            *tagged.pos_words.entry(token).or_default() += 1;
        }
    }
    tagged
}

/// Tags the question text only; the answer is never scanned.
pub fn tag_question(q: &Question, neg: &impl Vocabulary, pos: &impl Vocabulary) -> TaggedQuestion {
    tag_text(&q.text, neg, pos)
}
