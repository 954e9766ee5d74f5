//! User segmentation by negativity, and per-group aggregate reports.
//!
//! Groups are evaluated in precedence order:
//!
//! | label | rule                                  |
//! |-------|---------------------------------------|
//! | HN    | `n_neg >= 3` and `n_pos == 0`         |
//! | PN    | `n_neg >= 3` and `n_pos > 4`          |
//! | HP    | `n_pos > 10`                          |
//! | OTHR  | everything else                       |
//!
//! where `n_neg`/`n_pos` count answered questions containing at least one
//! selected negative/positive word.

mod labels;
mod report;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::corpus::{tag_question, Corpus, Profile, UserId, Vocabulary};

pub use labels::{load_label_file, parse_label_file, write_label_file, LabelFile};
pub use report::{
    group_report, labeled_report, write_group_csv, GroupReport, GroupRow, LabeledReport,
    SegmentationInputs, GROUP_CSV_HEADER,
};

/// Content counts of one profile over all of its answered questions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct UserContentStats {
    pub n_answers: u64,
    pub n_neg_questions: u64,
    pub n_pos_questions: u64,
    pub n_neg_words: u64,
    pub n_pos_words: u64,
}

pub fn user_content_stats(
    p: &Profile,
    neg: &impl Vocabulary,
    pos: &impl Vocabulary,
) -> UserContentStats {
    let mut s = UserContentStats::default();
    for q in &p.questions {
        let t = tag_question(q, neg, pos);
        s.n_answers += 1;
        s.n_neg_questions += u64::from(t.is_negative());
        s.n_pos_questions += u64::from(t.is_positive());
        s.n_neg_words += t.neg_count() as u64;
        s.n_pos_words += t.pos_count() as u64;
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GroupLabel {
    HN,
    HP,
    PN,
    OTHR,
}

impl GroupLabel {
    /// Report column order.
    pub const ALL: [GroupLabel; 4] = [
        GroupLabel::HN,
        GroupLabel::HP,
        GroupLabel::PN,
        GroupLabel::OTHR,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GroupLabel::HN => "HN",
            GroupLabel::HP => "HP",
            GroupLabel::PN => "PN",
            GroupLabel::OTHR => "OTHR",
        }
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GroupLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "HN" => Ok(GroupLabel::HN),
            "HP" => Ok(GroupLabel::HP),
            "PN" => Ok(GroupLabel::PN),
            "OTHR" => Ok(GroupLabel::OTHR),
            other => Err(format!("unknown group `{other}`")),
        }
    }
}

pub fn classify_counts(n_neg: u64, n_pos: u64) -> GroupLabel {
    if n_neg >= 3 && n_pos == 0 {
        GroupLabel::HN
    } else if n_neg >= 3 && n_pos > 4 {
        GroupLabel::PN
    } else if n_pos > 10 {
        GroupLabel::HP
    } else {
        GroupLabel::OTHR
    }
}

pub fn classify_user(s: &UserContentStats) -> GroupLabel {
    classify_counts(s.n_neg_questions, s.n_pos_questions)
}

/// Labels every fully sampled profile.
pub fn label_users(
    c: &Corpus,
    neg: &impl Vocabulary,
    pos: &impl Vocabulary,
) -> BTreeMap<UserId, GroupLabel> {
    c.sampled()
        .map(|p| {
            (
                p.owner.clone(),
                classify_user(&user_content_stats(p, neg, pos)),
            )
        })
        .collect()
}
