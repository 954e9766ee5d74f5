//! Analysis toolkit for semi-anonymous question-and-answer social networks.
//!
//! The crate covers the full path from a crawled profile corpus to reports:
//!
//! * [`corpus`]: profiles, lexicons, tokenization and corpus-level counts.
//! * [`wordgraph`]: word×user bipartite graphs, their projections, eigenvector
//!   centrality and word selection.
//! * [`interaction`]: the like-based directed interaction graph and its metrics.
//! * [`segmentation`]: HN/HP/PN/OTHR user groups and per-group reports.
//! * [`synth`]: seeded synthetic corpora and a snowball-crawl simulator.
//! * [`pipeline`]: the staged end-to-end run behind the `qanet` binary.

pub mod config;
pub mod corpus;
mod error;
pub mod interaction;
pub mod pipeline;
pub mod segmentation;
pub mod synth;
pub mod wordgraph;

pub use corpus::{
    load_corpus, load_lexicon, save_corpus, Corpus, Lexicon, Polarity, Profile, Question, UserId,
    Vocabulary,
};
pub use error::{Error, Result};
pub use interaction::{
    build_interaction_graph, split_graph, EdgeWeight, InteractionGraph, SplitGraphs,
};
pub use pipeline::{run_pipeline, run_until, PipelineConfig, PipelineError, Stage};
pub use segmentation::{classify_user, GroupLabel};
pub use synth::{generate_corpus, snowball_sample, GenParams, SampledCorpus, SplitMix64};
pub use wordgraph::{
    eigenvector_centrality, project_words, select_top_words, CentralityScores, WordSet,
};

/// Fixed-point rendering used in every CSV and word-set file.
pub fn fixed(x: f64) -> String {
    format!("{x:.8}")
}

fn round10(x: f64) -> f64 {
    if x.is_finite() {
        let r = (x * 1e10).round() / 1e10;
        if r == 0.0 {
            0.0
        } else {
            r
        }
    } else {
        x
    }
}

/// Serializes a float rounded to 10 decimal places, so JSON reports do not
/// depend on the last bits of a summation.
pub fn rounded<S: serde::Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(round10(*x))
}

pub fn rounded_opt<S: serde::Serializer>(
    x: &Option<f64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&round10(*v)),
        None => s.serialize_none(),
    }
}
