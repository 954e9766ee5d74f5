use std::collections::{BTreeMap, BTreeSet};

use super::params::{min_questions, GenParams};
use super::rng::SplitMix64;
use crate::corpus::{tokenize, Corpus, Profile, Question, UserId};
use crate::error::{Error, Result};
use crate::segmentation::GroupLabel;

/// Neutral padding for generated question texts.
const FILLER: &[&str] = &[
    "what", "is", "your", "first", "do", "you", "like", "the", "song", "movie", "when", "did",
    "go", "to", "school", "today", "where", "are", "from", "how", "old", "have", "ever", "been",
    "summer", "weekend", "color", "food", "would", "rather", "tell", "me", "about", "a", "time",
    "which", "team", "phone", "book", "music", "game", "city", "dog", "cat", "tomorrow", "why",
    "who", "should", "picture", "class", "house", "watch", "play", "eat", "drink", "coffee", "tea",
    "pizza", "beach", "winter", "car", "bus", "train", "sleep", "morning", "night",
];

/// Number of users assigned to each label: floor of `n * fraction`, with
/// leftovers going to the largest remainders (ties in `GroupLabel::ALL`
/// order).
pub fn group_quotas(n: usize, mix: &[f64; 4]) -> [usize; 4] {
    let exact: Vec<f64> = mix.iter().map(|f| f * n as f64).collect();
    let mut quotas = [0usize; 4];
    for (q, e) in quotas.iter_mut().zip(&exact) {
        *q = e.floor() as usize;
    }
    let assigned: usize = quotas.iter().sum();
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&a, &b| {
        let (ra, rb) = (exact[a] - exact[a].floor(), exact[b] - exact[b].floor());
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for &i in order.iter().take(n.saturating_sub(assigned)) {
        quotas[i] += 1;
    }
    quotas
}

pub fn user_ids(n: usize) -> Vec<UserId> {
    let width = n.to_string().len().max(4);
    (0..n)
        .map(|i| UserId::new(format!("u{i:0width$}")))
        .collect()
}

/// Builds a corpus whose profiles classify to the returned labels under
/// the segmentation rules, with `p.neg_vocab` and `p.pos_vocab` as the
/// selected word sets.
pub fn generate_corpus(p: &GenParams) -> Result<(Corpus, BTreeMap<UserId, GroupLabel>)> {
    p.validate()?;
    let mut rng = SplitMix64::new(p.rng_seed);
    let vocab: BTreeSet<&str> = p
        .neg_vocab
        .iter()
        .chain(&p.pos_vocab)
        .map(String::as_str)
        .collect();
    let filler: Vec<&str> = FILLER
        .iter()
        .copied()
        .filter(|w| !vocab.contains(w))
        .collect();
    if filler.is_empty() {
        return Err(Error::Infeasible(
            "every filler word is a vocabulary word".into(),
        ));
    }

    let quotas = group_quotas(p.n_users, &p.group_mix);
    let mut labels: Vec<GroupLabel> = GroupLabel::ALL
        .iter()
        .zip(quotas)
        .flat_map(|(&g, k)| std::iter::repeat_n(g, k))
        .collect();
    rng.shuffle(&mut labels);

    let ids = user_ids(p.n_users);
    let (lo, hi) = p.questions_per_user.bounds();
    let max_likes = (2.0 * p.like_rate).round() as u64;
    let texts = TextBuilder {
        filler: &filler,
        neg: &p.neg_vocab,
        pos: &p.pos_vocab,
    };

    let mut corpus = Corpus::new();
    for (owner_idx, (id, &label)) in ids.iter().zip(&labels).enumerate() {
        let q = rng.range(lo.max(min_questions(label)), hi);
        let mut kinds = question_kinds(label, q, &mut rng);
        rng.shuffle(&mut kinds);
        let questions = kinds
            .into_iter()
            .map(|kind| {
                let text = texts.build(kind, &mut rng);
                let k = rng.range(0, max_likes).min(p.n_users as u64 - 1) as usize;
                let likers = sample_likers(p.n_users, owner_idx, k, &mut rng)
                    .into_iter()
                    .map(|i| ids[i].clone())
                    .collect();
                Question::new(text, likers)
            })
            .collect();
        corpus.insert(Profile::new(id.clone(), questions))?;
    }
    let planted = ids.into_iter().zip(labels).collect();
    Ok((corpus, planted))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Neutral,
    Neg,
    Pos,
    Both,
}

/// Draws how many of `q` questions are negative and positive so that the
/// counts satisfy `label`'s rule, then lays them out as question kinds.
fn question_kinds(label: GroupLabel, q: u64, rng: &mut SplitMix64) -> Vec<Kind> {
    let (neg, pos) = match label {
        GroupLabel::HN => (rng.range(3, q), 0),
        GroupLabel::PN => (rng.range(3, q), rng.range(5, q)),
        GroupLabel::HP => (rng.range(0, q.min(2)), rng.range(11, q)),
        GroupLabel::OTHR => (rng.range(0, q.min(2)), rng.range(0, q.min(10))),
    };
    let both = (neg + pos).saturating_sub(q);
    let mut kinds = Vec::with_capacity(q as usize);
    kinds.extend(std::iter::repeat_n(Kind::Both, both as usize));
    kinds.extend(std::iter::repeat_n(Kind::Neg, (neg - both) as usize));
    kinds.extend(std::iter::repeat_n(Kind::Pos, (pos - both) as usize));
    kinds.resize(q as usize, Kind::Neutral);
    kinds
}

struct TextBuilder<'a> {
    filler: &'a [&'a str],
    neg: &'a [String],
    pos: &'a [String],
}

impl TextBuilder<'_> {
    fn build(&self, kind: Kind, rng: &mut SplitMix64) -> String {
        let mut words: Vec<&str> = (0..rng.range(2, 6))
            .map(|_| self.filler[rng.index(self.filler.len())])
            .collect();
        if matches!(kind, Kind::Neg | Kind::Both) {
            words.push(skewed_pick(self.neg, rng));
        }
        if matches!(kind, Kind::Pos | Kind::Both) {
            words.push(skewed_pick(self.pos, rng));
        }
        rng.shuffle(&mut words);
        let mut text = words.join(" ");
        text.push('?');
        debug_assert!(tokenize(&text).len() == words.len());
        text
    }
}

/// Minimum of two uniform indices, so early vocabulary words are more
/// frequent than late ones.
fn skewed_pick<'a>(vocab: &'a [String], rng: &mut SplitMix64) -> &'a str {
    let i = rng.index(vocab.len()).min(rng.index(vocab.len()));
    &vocab[i]
}

/// `k` distinct indices in `0..n` other than `owner`, ascending (Floyd's
/// algorithm over the `n - 1` candidates).
fn sample_likers(n: usize, owner: usize, k: usize, rng: &mut SplitMix64) -> Vec<usize> {
    let m = n - 1;
    let mut picked = BTreeSet::new();
    for j in (m - k)..m {
        let t = rng.range(0, j as u64) as usize;
        if !picked.insert(t) {
            picked.insert(j);
        }
    }
    picked
        .into_iter()
        .map(|i| if i >= owner { i + 1 } else { i })
        .collect()
}
