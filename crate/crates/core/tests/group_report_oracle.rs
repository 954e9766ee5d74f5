//! Group report means checked against a brute-force recomputation straight
//! from the corpus, and content sums checked against corpus totals.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use qanet::corpus::{tokenize, Corpus, Polarity, UserId};
use qanet::interaction::{build_interaction_graph, split_graph, to_simple};
use qanet::segmentation::{group_report, label_users, GroupLabel, SegmentationInputs};
use qanet::synth::{
    generate_corpus, pick_seeds, snowball_sample, GenParams, QuestionCount, SplitMix64,
};
use qanet::wordgraph::WordSet;

const TOP_K: usize = 15;

struct Oracle {
    /// (liker, owner) -> (liked negative questions, liked other questions)
    edges: BTreeMap<(UserId, UserId), (u64, u64)>,
}

impl Oracle {
    fn new(c: &Corpus, neg: &BTreeSet<String>) -> Self {
        let mut edges: BTreeMap<(UserId, UserId), (u64, u64)> = BTreeMap::new();
        for p in c.profiles().filter(|p| p.fully_sampled) {
            for q in p.questions.iter().take(TOP_K) {
                let negative = tokenize(&q.text).iter().any(|t| neg.contains(t));
                for l in &q.likers {
                    if l == &p.owner || !c.is_fully_sampled(l) {
                        continue;
                    }
                    let e = edges.entry((l.clone(), p.owner.clone())).or_default();
                    if negative {
                        e.0 += 1;
                    } else {
                        e.1 += 1;
                    }
                }
            }
        }
        Oracle { edges }
    }

    fn layer(&self, neg: bool) -> BTreeMap<(UserId, UserId), u64> {
        self.edges
            .iter()
            .map(|(k, &(a, b))| (k.clone(), if neg { a } else { b }))
            .filter(|&(_, w)| w > 0)
            .collect()
    }
}

fn in_deg(layer: &BTreeMap<(UserId, UserId), u64>, u: &UserId) -> f64 {
    layer
        .iter()
        .filter(|((_, t), _)| t == u)
        .map(|(_, w)| *w as f64)
        .sum()
}

fn out_deg(layer: &BTreeMap<(UserId, UserId), u64>, u: &UserId) -> f64 {
    layer
        .iter()
        .filter(|((s, _), _)| s == u)
        .map(|(_, w)| *w as f64)
        .sum()
}

fn node_recip(layer: &BTreeMap<(UserId, UserId), u64>, u: &UserId) -> f64 {
    let outs: Vec<&UserId> = layer
        .keys()
        .filter(|(s, _)| s == u)
        .map(|(_, t)| t)
        .collect();
    if outs.is_empty() {
        return 0.0;
    }
    let back = outs
        .iter()
        .filter(|t| layer.contains_key(&((**t).clone(), u.clone())))
        .count();
    back as f64 / outs.len() as f64
}

fn local_clustering(adj: &BTreeMap<UserId, BTreeSet<UserId>>, u: &UserId) -> f64 {
    let Some(nbrs) = adj.get(u) else { return 0.0 };
    let nbrs: Vec<&UserId> = nbrs.iter().collect();
    let k = nbrs.len();
    if k < 2 {
        return 0.0;
    }
    let mut t = 0;
    for a in 0..k {
        for b in (a + 1)..k {
            if adj[nbrs[a]].contains(nbrs[b]) {
                t += 1;
            }
        }
    }
    t as f64 / (k * (k - 1) / 2) as f64
}

fn corpus_from(seed: u64, n: usize, crawl: bool) -> Corpus {
    let params = GenParams {
        n_users: n,
        group_mix: [0.25, 0.25, 0.25, 0.25],
        questions_per_user: QuestionCount::Uniform(2, 22),
        like_rate: 1.5,
        neg_vocab: vec!["ugly".into(), "fat".into(), "hate".into()],
        pos_vocab: vec!["nice".into(), "love".into(), "cute".into()],
        rng_seed: seed,
    };
    let (gt, _) = generate_corpus(&params).unwrap();
    if !crawl {
        return gt;
    }
    let mut rng = SplitMix64::new(seed ^ 0x55);
    let seeds = pick_seeds(&gt, 1, &mut rng);
    if seeds.is_empty() {
        return gt;
    }
    snowball_sample(&gt, &seeds, n / 2 + 1).unwrap().corpus
}

fn check(c: &Corpus) -> Result<(), TestCaseError> {
    let neg: BTreeSet<String> = ["ugly", "fat", "hate"].map(String::from).into();
    let pos: BTreeSet<String> = ["nice", "love", "cute"].map(String::from).into();
    let neg_ws = WordSet::from_words(Polarity::Negative, neg.iter().cloned());
    let pos_ws = WordSet::from_words(Polarity::Positive, pos.iter().cloned());

    let u = build_interaction_graph(c, &neg_ws, TOP_K);
    let split = split_graph(&u);
    let simple = to_simple(&u);
    let inputs = SegmentationInputs {
        neg_words: &neg_ws,
        pos_words: &pos_ws,
        split: &split,
        simple: &simple,
    };
    let labels = label_users(c, &neg_ws, &pos_ws);
    let report = group_report(c, &labels, &inputs).unwrap();

    let oracle = Oracle::new(c, &neg);
    let (neg_layer, nonneg_layer) = (oracle.layer(true), oracle.layer(false));
    let mut adj: BTreeMap<UserId, BTreeSet<UserId>> = BTreeMap::new();
    for (s, t) in oracle.edges.keys() {
        adj.entry(s.clone()).or_default().insert(t.clone());
        adj.entry(t.clone()).or_default().insert(s.clone());
    }

    let mut total_answers = 0.0;
    let mut total_neg_q = 0.0;
    let mut total_pos_w = 0.0;
    for p in c.profiles().filter(|p| p.fully_sampled) {
        total_answers += p.questions.len() as f64;
        for q in &p.questions {
            let toks = tokenize(&q.text);
            total_neg_q += f64::from(toks.iter().any(|t| neg.contains(t)));
            total_pos_w += toks.iter().filter(|t| pos.contains(*t)).count() as f64;
        }
    }

    let mut sum_answers = 0.0;
    let mut sum_neg_q = 0.0;
    let mut sum_pos_w = 0.0;
    for (g, row) in GroupLabel::ALL.iter().zip(&report.rows) {
        prop_assert_eq!(row.group.as_str(), g.as_str());
        let members: Vec<&UserId> = labels
            .iter()
            .filter(|(_, l)| *l == g)
            .map(|(id, _)| id)
            .collect();
        prop_assert_eq!(row.count, members.len());
        if members.is_empty() {
            prop_assert!(row.neg_in_degree.is_none() && row.answers.is_none());
            continue;
        }
        let n = members.len() as f64;
        let mean = |f: &dyn Fn(&UserId) -> f64| members.iter().map(|u| f(u)).sum::<f64>() / n;
        prop_assert_eq!(row.neg_in_degree, Some(mean(&|u| in_deg(&neg_layer, u))));
        prop_assert_eq!(
            row.nonneg_in_degree,
            Some(mean(&|u| in_deg(&nonneg_layer, u)))
        );
        prop_assert_eq!(row.neg_out_degree, Some(mean(&|u| out_deg(&neg_layer, u))));
        prop_assert_eq!(
            row.nonneg_out_degree,
            Some(mean(&|u| out_deg(&nonneg_layer, u)))
        );
        prop_assert_eq!(
            row.neg_reciprocity,
            Some(mean(&|u| node_recip(&neg_layer, u)))
        );
        prop_assert_eq!(
            row.nonneg_reciprocity,
            Some(mean(&|u| node_recip(&nonneg_layer, u)))
        );
        prop_assert_eq!(
            row.mean_local_clustering,
            Some(mean(&|u| local_clustering(&adj, u)))
        );
        let likes: f64 = members
            .iter()
            .map(|u| {
                c.get(u)
                    .unwrap()
                    .questions
                    .iter()
                    .map(|q| q.like_count as f64)
                    .sum::<f64>()
            })
            .sum();
        let answers: f64 = members
            .iter()
            .map(|u| c.get(u).unwrap().questions.len() as f64)
            .sum();
        prop_assert_eq!(row.total_likes, Some(likes / n));
        prop_assert_eq!(
            row.likes_per_answer,
            (answers > 0.0).then(|| likes / answers)
        );

        sum_answers += row.count as f64 * row.answers.unwrap();
        sum_neg_q += row.count as f64 * row.neg_questions.unwrap();
        sum_pos_w += row.count as f64 * row.pos_words.unwrap();
    }
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * b.max(1.0);
    prop_assert!(
        close(sum_answers, total_answers),
        "{} vs {}",
        sum_answers,
        total_answers
    );
    prop_assert!(close(sum_neg_q, total_neg_q));
    prop_assert!(close(sum_pos_w, total_pos_w));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn group_means_match_brute_force(seed in any::<u64>(), n in 1usize..60, crawl in any::<bool>()) {
        check(&corpus_from(seed, n, crawl))?;
    }
}
