use serde::Serialize;

use super::{Corpus, Vocabulary};
use crate::error::{Error, Result};
use crate::segmentation::user_content_stats;

/// Per-user averages over the fully sampled profiles of a corpus.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusStats {
    pub users: usize,
    #[serde(serialize_with = "crate::rounded")]
    pub avg_answers_per_user: f64,
    #[serde(serialize_with = "crate::rounded")]
    pub avg_neg_questions: f64,
    #[serde(serialize_with = "crate::rounded")]
    pub avg_pos_questions: f64,
    #[serde(serialize_with = "crate::rounded")]
    pub avg_neg_words: f64,
    #[serde(serialize_with = "crate::rounded")]
    pub avg_pos_words: f64,
    #[serde(serialize_with = "crate::rounded")]
    pub pct_users_with_neg_q: f64,
    #[serde(serialize_with = "crate::rounded")]
    pub pct_users_with_3plus_neg_q: f64,
    #[serde(serialize_with = "crate::rounded")]
    pub pct_users_with_pos_q: f64,
}

/// Question counts are flag counts; word counts are token occurrences.
pub fn corpus_stats(
    c: &Corpus,
    neg: &impl Vocabulary,
    pos: &impl Vocabulary,
) -> Result<CorpusStats> {
    let mut users = 0usize;
    let (mut answers, mut neg_q, mut pos_q, mut neg_w, mut pos_w) = (0u64, 0u64, 0u64, 0u64, 0u64);
    let (mut with_neg, mut with_3neg, mut with_pos) = (0usize, 0usize, 0usize);
    for profile in c.sampled() {
        let s = user_content_stats(profile, neg, pos);
        users += 1;
        answers += s.n_answers;
        neg_q += s.n_neg_questions;
        pos_q += s.n_pos_questions;
        neg_w += s.n_neg_words;
        pos_w += s.n_pos_words;
        with_neg += usize::from(s.n_neg_questions >= 1);
        with_3neg += usize::from(s.n_neg_questions >= 3);
        with_pos += usize::from(s.n_pos_questions >= 1);
    }
    if users == 0 {
        return Err(Error::EmptyCorpus);
    }
    let n = users as f64;
    let pct = |k: usize| 100.0 * k as f64 / n;
    Ok(CorpusStats {
        users,
        avg_answers_per_user: answers as f64 / n,
        avg_neg_questions: neg_q as f64 / n,
        avg_pos_questions: pos_q as f64 / n,
        avg_neg_words: neg_w as f64 / n,
        avg_pos_words: pos_w as f64 / n,
        pct_users_with_neg_q: pct(with_neg),
        pct_users_with_3plus_neg_q: pct(with_3neg),
        pct_users_with_pos_q: pct(with_pos),
    })
}
