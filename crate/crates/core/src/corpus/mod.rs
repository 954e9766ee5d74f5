//! Profile corpora: the raw input of every analysis.
//!
//! A corpus file is line-delimited JSON, one profile per line:
//!
//! ```text
//! {"owner":"u01","fully_sampled":true,"questions":[{"text":"...","answer":"...","likers":["u02"],"like_count":1}]}
//! ```
//!
//! Questions are kept ordered by `like_count` descending (stable with respect
//! to input order), which is the order the interaction graph uses to pick the
//! most-liked questions of a profile.

mod lexicon;
mod stats;
mod tokenize;

use std::collections::btree_map::{self, BTreeMap};
use std::collections::HashSet;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use lexicon::{load_lexicon, parse_lexicon, Lexicon, Polarity, Vocabulary};
pub use stats::{corpus_stats, CorpusStats};
pub use tokenize::{tag_question, tag_text, tokenize, TaggedQuestion};

/// Opaque, non-empty user identifier.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct UserId(String);

impl UserId {
    /// Panics if `id` is empty.
    pub fn new(id: impl Into<String>) -> Self {
        let id = id.into();
        assert!(!id.is_empty(), "user id must not be empty");
        UserId(id)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for UserId {
    type Error = String;

    fn try_from(value: String) -> std::result::Result<Self, Self::Error> {
        if value.is_empty() {
            Err("user id must not be empty".to_owned())
        } else {
            Ok(UserId(value))
        }
    }
}

impl From<UserId> for String {
    fn from(id: UserId) -> String {
        id.0
    }
}

impl fmt::Display for UserId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An answered question and the users who liked the question+answer pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Question {
    pub text: String,
    #[serde(default)]
    pub answer: String,
    #[serde(default)]
    pub likers: Vec<UserId>,
    pub like_count: u64,
}

impl Question {
    pub fn new(text: impl Into<String>, likers: Vec<UserId>) -> Self {
        let like_count = likers.len() as u64;
        Question {
            text: text.into(),
            answer: String::new(),
            likers,
            like_count,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    pub owner: UserId,
    pub fully_sampled: bool,
    #[serde(default)]
    pub questions: Vec<Question>,
}

impl Profile {
    pub fn new(owner: UserId, questions: Vec<Question>) -> Self {
        let mut profile = Profile {
            owner,
            fully_sampled: true,
            questions,
        };
        profile.normalize();
        profile
    }

    /// A profile observed only as a liker id, never crawled.
    pub fn stub(owner: UserId) -> Self {
        Profile {
            owner,
            fully_sampled: false,
            questions: Vec::new(),
        }
    }

    /// Sorts questions by like count, most liked first. Stable.
    pub fn normalize(&mut self) {
        self.questions
            .sort_by_key(|q| std::cmp::Reverse(q.like_count));
    }

    pub fn total_likes(&self) -> u64 {
        self.questions.iter().map(|q| q.like_count).sum()
    }

    /// The `k` most liked questions.
    pub fn top_questions(&self, k: usize) -> &[Question] {
        &self.questions[..k.min(self.questions.len())]
    }

    fn validate(&self) -> std::result::Result<(), String> {
        for (i, q) in self.questions.iter().enumerate() {
            if !q.likers.is_empty() && q.likers.len() as u64 != q.like_count {
                return Err(format!(
                    "question {i} of `{}`: like_count is {} but {} likers are listed",
                    self.owner,
                    q.like_count,
                    q.likers.len()
                ));
            }
            let mut seen = HashSet::with_capacity(q.likers.len());
            if let Some(dup) = q.likers.iter().find(|id| !seen.insert(*id)) {
                return Err(format!(
                    "question {i} of `{}`: liker `{dup}` listed twice",
                    self.owner
                ));
            }
        }
        Ok(())
    }
}

/// All profiles of a data set, keyed by owner.
///
/// Liker ids may reference users without a profile here (frontier nodes).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Corpus {
    profiles: BTreeMap<UserId, Profile>,
}

impl Corpus {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, mut profile: Profile) -> Result<()> {
        profile.normalize();
        match self.profiles.entry(profile.owner.clone()) {
            btree_map::Entry::Occupied(e) => Err(Error::DuplicateOwner(e.key().to_string())),
            btree_map::Entry::Vacant(e) => {
                e.insert(profile);
                Ok(())
            }
        }
    }

    pub fn get(&self, id: &UserId) -> Option<&Profile> {
        self.profiles.get(id)
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    /// Profiles in ascending owner order.
    pub fn profiles(&self) -> impl Iterator<Item = &Profile> {
        self.profiles.values()
    }

    /// Fully sampled profiles in ascending owner order. These are the
    /// population every statistic is computed over.
    pub fn sampled(&self) -> impl Iterator<Item = &Profile> {
        self.profiles.values().filter(|p| p.fully_sampled)
    }

    pub fn is_fully_sampled(&self, id: &UserId) -> bool {
        self.profiles.get(id).is_some_and(|p| p.fully_sampled)
    }
}

impl FromIterator<Profile> for Corpus {
    /// Panics on duplicate owners; use [`Corpus::insert`] for fallible input.
    fn from_iter<I: IntoIterator<Item = Profile>>(iter: I) -> Self {
        let mut corpus = Corpus::new();
        for p in iter {
            corpus.insert(p).expect("duplicate profile owner");
        }
        corpus
    }
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_corpus(BufReader::new(file), path)
}

/// Parses a corpus from `reader`; `origin` only labels error messages.
pub fn read_corpus(reader: impl BufRead, origin: &Path) -> Result<Corpus> {
    let mut corpus = Corpus::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::io(origin, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let profile: Profile =
            serde_json::from_str(&line).map_err(|e| Error::parse(origin, lineno, e.to_string()))?;
        profile
            .validate()
            .map_err(|msg| Error::parse(origin, lineno, msg))?;
        corpus
            .insert(profile)
            .map_err(|e| Error::parse(origin, lineno, e.to_string()))?;
    }
    Ok(corpus)
}

pub fn write_corpus(corpus: &Corpus, mut writer: impl Write) -> Result<()> {
    for profile in corpus.profiles() {
        serde_json::to_writer(&mut writer, profile)?;
        writer
            .write_all(b"\n")
            .map_err(|e| Error::io("<corpus>", e))?;
    }
    Ok(())
}

pub fn save_corpus(corpus: &Corpus, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut writer = BufWriter::new(file);
    write_corpus(corpus, &mut writer)?;
    writer.flush().map_err(|e| Error::io(path, e))
}
