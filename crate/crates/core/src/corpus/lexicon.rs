use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Negative,
    Positive,
}

impl Polarity {
    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::Negative => "negative",
            Polarity::Positive => "positive",
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Polarity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "negative" | "neg" => Ok(Polarity::Negative),
            "positive" | "pos" => Ok(Polarity::Positive),
            other => Err(format!("unknown polarity `{other}`")),
        }
    }
}

/// Anything that can answer "is this token one of my words".
pub trait Vocabulary {
    fn contains_word(&self, word: &str) -> bool;
}

impl Vocabulary for BTreeSet<String> {
    fn contains_word(&self, word: &str) -> bool {
        self.contains(word)
    }
}

impl Vocabulary for HashSet<String> {
    fn contains_word(&self, word: &str) -> bool {
        self.contains(word)
    }
}

impl<V: Vocabulary + ?Sized> Vocabulary for &V {
    fn contains_word(&self, word: &str) -> bool {
        (**self).contains_word(word)
    }
}

/// A polarity-tagged set of lowercase single-token words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lexicon {
    polarity: Polarity,
    words: BTreeSet<String>,
}

impl Lexicon {
    /// Lowercases and deduplicates `words`. Rejects empty sets and entries
    /// with internal whitespace.
    pub fn new<I, S>(polarity: Polarity, words: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = BTreeSet::new();
        for w in words {
            let w = w.as_ref().trim();
            if w.is_empty() {
                continue;
            }
            if w.chars().any(char::is_whitespace) {
                return Err(Error::InvalidParameter(format!(
                    "lexicon entry `{w}` contains whitespace"
                )));
            }
            set.insert(w.to_lowercase());
        }
        if set.is_empty() {
            return Err(Error::EmptyLexicon(format!("<{polarity}>").into()));
        }
        Ok(Lexicon {
            polarity,
            words: set,
        })
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    /// Words in ascending order.
    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

impl Vocabulary for Lexicon {
    fn contains_word(&self, word: &str) -> bool {
        self.contains(word)
    }
}

pub fn load_lexicon(path: impl AsRef<Path>, polarity: Polarity) -> Result<Lexicon> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_lexicon(&text, path, polarity)
}

/// One word per line; blank lines and `#` comments are skipped.
pub fn parse_lexicon(text: &str, origin: &Path, polarity: Polarity) -> Result<Lexicon> {
    let mut words = BTreeSet::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.chars().any(char::is_whitespace) {
            return Err(Error::parse(
                origin,
                idx + 1,
                format!("lexicon entry `{line}` contains whitespace"),
            ));
        }
        words.insert(line.to_lowercase());
    }
    if words.is_empty() {
        return Err(Error::EmptyLexicon(origin.to_path_buf()));
    }
    Ok(Lexicon { polarity, words })
}
