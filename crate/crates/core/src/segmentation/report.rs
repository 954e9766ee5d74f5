use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use serde::Serialize;

use super::{user_content_stats, GroupLabel, LabelFile};
use crate::corpus::{Corpus, UserId};
use crate::error::{Error, Result};
use crate::interaction::{
    clustering, degree_vector, node_reciprocity, Direction, SimpleGraph, SplitGraphs,
};
use crate::rounded_opt;
use crate::wordgraph::WordSet;

/// Graphs and word sets a group report aggregates over. All must come from
/// the same corpus.
#[derive(Clone, Copy, Debug)]
pub struct SegmentationInputs<'a> {
    pub neg_words: &'a WordSet,
    pub pos_words: &'a WordSet,
    pub split: &'a SplitGraphs,
    pub simple: &'a SimpleGraph,
}

/// One report row. Means are over the row's members; empty rows carry
/// `None` rather than zero.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupRow {
    pub group: String,
    pub count: usize,
    #[serde(serialize_with = "rounded_opt")]
    pub neg_reciprocity: Option<f64>,
    #[serde(serialize_with = "rounded_opt")]
    pub nonneg_reciprocity: Option<f64>,
    #[serde(serialize_with = "rounded_opt")]
    pub neg_in_degree: Option<f64>,
    #[serde(serialize_with = "rounded_opt")]
    pub nonneg_in_degree: Option<f64>,
    #[serde(serialize_with = "rounded_opt")]
    pub neg_out_degree: Option<f64>,
    #[serde(serialize_with = "rounded_opt")]
    pub nonneg_out_degree: Option<f64>,
    #[serde(serialize_with = "rounded_opt")]
    pub total_likes: Option<f64>,
    #[serde(serialize_with = "rounded_opt")]
    pub likes_per_answer: Option<f64>,
    #[serde(serialize_with = "rounded_opt")]
    pub mean_local_clustering: Option<f64>,
    #[serde(serialize_with = "rounded_opt")]
    pub answers: Option<f64>,
    #[serde(serialize_with = "rounded_opt")]
    pub neg_questions: Option<f64>,
    #[serde(serialize_with = "rounded_opt")]
    pub pos_questions: Option<f64>,
    #[serde(serialize_with = "rounded_opt")]
    pub neg_words: Option<f64>,
    #[serde(serialize_with = "rounded_opt")]
    pub pos_words: Option<f64>,
}

pub const GROUP_CSV_HEADER: [&str; 16] = [
    "group",
    "count",
    "neg_reciprocity",
    "nonneg_reciprocity",
    "neg_in_degree",
    "nonneg_in_degree",
    "neg_out_degree",
    "nonneg_out_degree",
    "total_likes",
    "likes_per_answer",
    "mean_local_clustering",
    "answers",
    "neg_questions",
    "pos_questions",
    "neg_words",
    "pos_words",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupReport {
    /// HN, HP, PN, OTHR in that order.
    pub rows: Vec<GroupRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LabeledReport {
    pub row: GroupRow,
    pub unresolved: Vec<UserId>,
}

/// Per-user values every row aggregates.
#[derive(Clone, Copy, Debug, Default)]
struct UserValues {
    neg_recip: f64,
    nonneg_recip: f64,
    neg_in: f64,
    nonneg_in: f64,
    neg_out: f64,
    nonneg_out: f64,
    likes: f64,
    clustering: f64,
    answers: f64,
    neg_q: f64,
    pos_q: f64,
    neg_w: f64,
    pos_w: f64,
}

struct NodeTable {
    values: HashMap<UserId, UserValues>,
}

impl NodeTable {
    /// Node reciprocity counts 0 for users without out-edges in a graph.
    fn build(c: &Corpus, inputs: &SegmentationInputs<'_>) -> Self {
        let split = inputs.split;
        let neg_recip = node_reciprocity(&split.neg);
        let nonneg_recip = node_reciprocity(&split.nonneg);
        let neg_in = degree_vector(&split.neg, Direction::In, true);
        let neg_out = degree_vector(&split.neg, Direction::Out, true);
        let nonneg_in = degree_vector(&split.nonneg, Direction::In, true);
        let nonneg_out = degree_vector(&split.nonneg, Direction::Out, true);
        let neg_pos: HashMap<&UserId, usize> = split
            .neg
            .nodes()
            .iter()
            .enumerate()
            .map(|(i, u)| (u, i))
            .collect();
        let nonneg_pos: HashMap<&UserId, usize> = split
            .nonneg
            .nodes()
            .iter()
            .enumerate()
            .map(|(i, u)| (u, i))
            .collect();
        let local = clustering(inputs.simple).per_node;
        let simple_pos: HashMap<&UserId, usize> = inputs
            .simple
            .nodes()
            .iter()
            .enumerate()
            .map(|(i, u)| (u, i))
            .collect();

        let values = c
            .sampled()
            .map(|p| {
                let content = user_content_stats(p, inputs.neg_words, inputs.pos_words);
                let mut v = UserValues {
                    likes: p.total_likes() as f64,
                    answers: content.n_answers as f64,
                    neg_q: content.n_neg_questions as f64,
                    pos_q: content.n_pos_questions as f64,
                    neg_w: content.n_neg_words as f64,
                    pos_w: content.n_pos_words as f64,
                    ..Default::default()
                };
                if let Some(&i) = neg_pos.get(&p.owner) {
                    v.neg_recip = neg_recip[i].unwrap_or(0.0);
                    v.neg_in = neg_in.values()[i] as f64;
                    v.neg_out = neg_out.values()[i] as f64;
                }
                if let Some(&i) = nonneg_pos.get(&p.owner) {
                    v.nonneg_recip = nonneg_recip[i].unwrap_or(0.0);
                    v.nonneg_in = nonneg_in.values()[i] as f64;
                    v.nonneg_out = nonneg_out.values()[i] as f64;
                }
                if let Some(&i) = simple_pos.get(&p.owner) {
                    v.clustering = local[i];
                }
                (p.owner.clone(), v)
            })
            .collect();
        NodeTable { values }
    }

    fn row<'a>(&self, group: &str, members: impl IntoIterator<Item = &'a UserId>) -> GroupRow {
        let mut sum = UserValues::default();
        let mut count = 0usize;
        for id in members {
            let v = &self.values[id];
            count += 1;
            sum.neg_recip += v.neg_recip;
            sum.nonneg_recip += v.nonneg_recip;
            sum.neg_in += v.neg_in;
            sum.nonneg_in += v.nonneg_in;
            sum.neg_out += v.neg_out;
            sum.nonneg_out += v.nonneg_out;
            sum.likes += v.likes;
            sum.clustering += v.clustering;
            sum.answers += v.answers;
            sum.neg_q += v.neg_q;
            sum.pos_q += v.pos_q;
            sum.neg_w += v.neg_w;
            sum.pos_w += v.pos_w;
        }
        let mean = |s: f64| (count > 0).then(|| s / count as f64);
        GroupRow {
            group: group.to_owned(),
            count,
            neg_reciprocity: mean(sum.neg_recip),
            nonneg_reciprocity: mean(sum.nonneg_recip),
            neg_in_degree: mean(sum.neg_in),
            nonneg_in_degree: mean(sum.nonneg_in),
            neg_out_degree: mean(sum.neg_out),
            nonneg_out_degree: mean(sum.nonneg_out),
            total_likes: mean(sum.likes),
            likes_per_answer: (sum.answers > 0.0).then(|| sum.likes / sum.answers),
            mean_local_clustering: mean(sum.clustering),
            answers: mean(sum.answers),
            neg_questions: mean(sum.neg_q),
            pos_questions: mean(sum.pos_q),
            neg_words: mean(sum.neg_w),
            pos_words: mean(sum.pos_w),
        }
    }
}

/// Aggregates per group. `labels` must cover exactly the corpus's fully
/// sampled users.
pub fn group_report(
    c: &Corpus,
    labels: &BTreeMap<UserId, GroupLabel>,
    inputs: &SegmentationInputs<'_>,
) -> Result<GroupReport> {
    let sampled = c.sampled().count();
    if labels.len() != sampled || labels.keys().any(|id| !c.is_fully_sampled(id)) {
        return Err(Error::InvalidParameter(
            "labels must cover exactly the fully sampled users".into(),
        ));
    }
    let table = NodeTable::build(c, inputs);
    let rows = GroupLabel::ALL
        .iter()
        .map(|&g| {
            table.row(
                g.as_str(),
                labels.iter().filter(|(_, &l)| l == g).map(|(id, _)| id),
            )
        })
        .collect();
    Ok(GroupReport { rows })
}

/// Aggregates over the labelled users present in the corpus; the rest are
/// listed as unresolved.
pub fn labeled_report(
    c: &Corpus,
    lf: &LabelFile,
    inputs: &SegmentationInputs<'_>,
) -> Result<LabeledReport> {
    let (resolved, unresolved): (Vec<&UserId>, Vec<&UserId>) =
        lf.ids.iter().partition(|id| c.is_fully_sampled(id));
    if resolved.is_empty() {
        return Err(Error::NoLabeledUsers(lf.name.clone()));
    }
    let table = NodeTable::build(c, inputs);
    Ok(LabeledReport {
        row: table.row(&lf.name, resolved),
        unresolved: unresolved.into_iter().cloned().collect(),
    })
}

/// One CSV line per row, columns as in [`GROUP_CSV_HEADER`]; undefined
/// means are written as `null`.
pub fn write_group_csv<'a>(
    rows: impl IntoIterator<Item = &'a GroupRow>,
    writer: impl Write,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(GROUP_CSV_HEADER)?;
    let cell = |x: Option<f64>| x.map_or_else(|| "null".to_owned(), crate::fixed);
    for r in rows {
        w.write_record([
            r.group.clone(),
            r.count.to_string(),
            cell(r.neg_reciprocity),
            cell(r.nonneg_reciprocity),
            cell(r.neg_in_degree),
            cell(r.nonneg_in_degree),
            cell(r.neg_out_degree),
            cell(r.nonneg_out_degree),
            cell(r.total_likes),
            cell(r.likes_per_answer),
            cell(r.mean_local_clustering),
            cell(r.answers),
            cell(r.neg_questions),
            cell(r.pos_questions),
            cell(r.neg_words),
            cell(r.pos_words),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<groups>", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Polarity, Profile, Question};
    use crate::interaction::{build_interaction_graph, split_graph, to_simple};
    use crate::segmentation::label_users;

    fn id(s: &str) -> UserId {
        UserId::new(s)
    }

    fn fixture() -> (Corpus, WordSet, WordSet) {
        let c: Corpus = [
            Profile::new(
                id("a"),
                vec![
                    Question::new("ugly", vec![id("b")]),
                    Question::new("ugly fat", vec![id("b"), id("c")]),
                    Question::new("so ugly", vec![]),
                ],
            ),
            Profile::new(id("b"), vec![Question::new("nice", vec![id("a")])]),
            Profile::new(
                id("c"),
                vec![Question::new("hello", vec![id("a"), id("b")])],
            ),
        ]
        .into_iter()
        .collect();
        (
            c,
            WordSet::from_words(Polarity::Negative, ["ugly", "fat"]),
            WordSet::from_words(Polarity::Positive, ["nice"]),
        )
    }

    #[test]
    fn groups_and_labeled_rows() {
        let (c, neg, pos) = fixture();
        let u = build_interaction_graph(&c, &neg, 15);
        let split = split_graph(&u);
        let simple = to_simple(&u);
        let inputs = SegmentationInputs {
            neg_words: &neg,
            pos_words: &pos,
            split: &split,
            simple: &simple,
        };
        let labels = label_users(&c, &neg, &pos);
        assert_eq!(labels[&id("a")], GroupLabel::HN);
        let report = group_report(&c, &labels, &inputs).unwrap();
        let hn = &report.rows[0];
        assert_eq!((hn.group.as_str(), hn.count), ("HN", 1));
        // b likes two negative questions on a, c one
        assert_eq!(hn.neg_in_degree, Some(3.0));
        assert_eq!(hn.nonneg_in_degree, Some(0.0));
        assert_eq!(hn.total_likes, Some(3.0));
        assert_eq!(hn.likes_per_answer, Some(1.0));
        assert_eq!(hn.neg_questions, Some(3.0));
        assert_eq!(report.rows[1].count, 0);
        assert_eq!(report.rows[1].neg_in_degree, None);
        assert_eq!(report.rows.iter().map(|r| r.count).sum::<usize>(), 3);

        let lf = LabelFile {
            name: "cutting".into(),
            ids: vec![id("a"), id("zz")],
        };
        let lr = labeled_report(&c, &lf, &inputs).unwrap();
        assert_eq!(lr.unresolved, [id("zz")]);
        assert_eq!(lr.row.count, 1);
        assert_eq!(lr.row.neg_in_degree, hn.neg_in_degree);

        let unknown = LabelFile {
            name: "x".into(),
            ids: vec![id("zz")],
        };
        assert!(matches!(
            labeled_report(&c, &unknown, &inputs),
            Err(Error::NoLabeledUsers(_))
        ));

        let mut out = Vec::new();
        write_group_csv(&report.rows, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with(&GROUP_CSV_HEADER.join(",")));
        assert!(text.lines().nth(2).unwrap().starts_with("HP,0,null,"));
    }

    #[test]
    fn single_user_corpus() {
        let c: Corpus = [Profile::new(id("a"), vec![])].into_iter().collect();
        let neg = WordSet::from_words(Polarity::Negative, ["ugly"]);
        let pos = WordSet::from_words(Polarity::Positive, ["nice"]);
        let u = build_interaction_graph(&c, &neg, 15);
        let split = split_graph(&u);
        let simple = to_simple(&u);
        let inputs = SegmentationInputs {
            neg_words: &neg,
            pos_words: &pos,
            split: &split,
            simple: &simple,
        };
        let report = group_report(&c, &label_users(&c, &neg, &pos), &inputs).unwrap();
        let counts: Vec<usize> = report.rows.iter().map(|r| r.count).collect();
        assert_eq!(counts, [0, 0, 0, 1]);
    }
}
