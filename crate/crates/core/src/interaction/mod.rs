//! Like-based interaction graphs and the metrics computed on them.
//!
//! An edge `i → j` means user `i` liked at least one of the most-liked
//! questions on `j`'s profile. Its weight is the pair `(n_neg, n_nonneg)`:
//! how many of those liked questions contain a selected negative word, and
//! how many do not.

mod correlation;
mod degree;
mod digraph;
mod distribution;
mod reciprocity;
mod report;
mod simple;

use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use crate::corpus::{tokenize, Corpus, UserId, Vocabulary};
use crate::error::{Error, Result};

pub use correlation::{likes_answers_correlation, pearson, LikesAnswersCorrelation};
pub use degree::{degree_vector, DegreeVector, Direction};
pub use digraph::DiGraph;
pub use distribution::{ccdf, degree_ratio_cdf, top_overlap, RatioCdf, RATIO_BAND};
pub use reciprocity::{
    mean_node_reciprocity, mean_reciprocity_by_outdegree, node_reciprocity, reciprocity,
    ReciprocityBin,
};
pub use report::{compute_metrics, MetricsReport, OVERLAP_PERCENTAGES};
pub use simple::{clustering, mean_local_clustering_vs_degree, to_simple, Clustering, SimpleGraph};

pub const DEFAULT_TOP_K: usize = 15;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EdgeWeight {
    pub neg: u64,
    pub nonneg: u64,
}

impl EdgeWeight {
    pub fn total(self) -> u64 {
        self.neg + self.nonneg
    }
}

/// Directed like graph among fully sampled users. Node order is ascending
/// user id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractionGraph {
    nodes: Vec<UserId>,
    edges: BTreeMap<(usize, usize), EdgeWeight>,
    top_k: usize,
}

impl InteractionGraph {
    /// Builds a graph from explicit weights; zero pairs and self loops are
    /// rejected.
    pub fn from_edges(
        nodes: Vec<UserId>,
        edges: impl IntoIterator<Item = ((usize, usize), EdgeWeight)>,
        top_k: usize,
    ) -> Result<Self> {
        let n = nodes.len();
        let mut map = BTreeMap::new();
        for ((i, j), w) in edges {
            if i >= n || j >= n || i == j || w.total() == 0 {
                return Err(Error::InvalidParameter(format!(
                    "invalid interaction edge ({i}, {j}) with weight {w:?}"
                )));
            }
            let e: &mut EdgeWeight = map.entry((i, j)).or_default();
            e.neg += w.neg;
            e.nonneg += w.nonneg;
        }
        Ok(InteractionGraph {
            nodes,
            edges: map,
            top_k,
        })
    }

    pub fn nodes(&self) -> &[UserId] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn top_k(&self) -> usize {
        self.top_k
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<EdgeWeight> {
        self.edges.get(&(i, j)).copied()
    }

    /// Edges in `(src, dst)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, EdgeWeight)> + '_ {
        self.edges.iter().map(|(&(i, j), &w)| (i, j, w))
    }

    /// `U` with scalar weights `n_neg + n_nonneg`.
    pub fn total(&self) -> DiGraph {
        DiGraph::from_edges(
            self.nodes.clone(),
            self.edges().map(|(i, j, w)| (i, j, w.total())),
        )
    }

    /// Edge list `src,dst,n_neg,n_nonneg`.
    pub fn write_edges_csv(&self, writer: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["src", "dst", "n_neg", "n_nonneg"])?;
        for (i, j, e) in self.edges() {
            w.write_record([
                self.nodes[i].as_str(),
                self.nodes[j].as_str(),
                &e.neg.to_string(),
                &e.nonneg.to_string(),
            ])?;
        }
        w.flush().map_err(|e| Error::io("<interaction>", e))?;
        Ok(())
    }
}

/// For every fully sampled profile `j`, walks its `top_k` most liked
/// questions; each liker `i ≠ j` that is itself fully sampled adds one to
/// `n_neg` of edge `i → j` if the question contains a negative word, else to
/// `n_nonneg`.
pub fn build_interaction_graph(
    c: &Corpus,
    neg_words: &impl Vocabulary,
    top_k: usize,
) -> InteractionGraph {
    let nodes: Vec<UserId> = c.sampled().map(|p| p.owner.clone()).collect();
    let index: HashMap<&UserId, usize> = nodes.iter().enumerate().map(|(i, u)| (u, i)).collect();
    let mut edges: BTreeMap<(usize, usize), EdgeWeight> = BTreeMap::new();
    for profile in c.sampled() {
        let j = index[&profile.owner];
        for q in profile.top_questions(top_k) {
            if q.likers.is_empty() {
                continue;
            }
            let negative = tokenize(&q.text).iter().any(|t| neg_words.contains_word(t));
            for liker in &q.likers {
                let Some(&i) = index.get(liker) else { continue };
                if i == j {
                    continue;
                }
                let e = edges.entry((i, j)).or_default();
                if negative {
                    e.neg += 1;
                } else {
                    e.nonneg += 1;
                }
            }
        }
    }
    InteractionGraph {
        nodes,
        edges,
        top_k,
    }
}

/// `U` split into its negative and non-negative scalar graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitGraphs {
    pub neg: DiGraph,
    pub nonneg: DiGraph,
}

impl SplitGraphs {
    /// Recombines the two graphs into per-edge weight pairs.
    pub fn merge(&self) -> BTreeMap<(usize, usize), EdgeWeight> {
        let mut out: BTreeMap<(usize, usize), EdgeWeight> = BTreeMap::new();
        for (i, j, w) in self.neg.edges() {
            out.entry((i, j)).or_default().neg = w;
        }
        for (i, j, w) in self.nonneg.edges() {
            out.entry((i, j)).or_default().nonneg = w;
        }
        out
    }
}

pub fn split_graph(u: &InteractionGraph) -> SplitGraphs {
    SplitGraphs {
        neg: DiGraph::from_edges(u.nodes.clone(), u.edges().map(|(i, j, w)| (i, j, w.neg))),
        nonneg: DiGraph::from_edges(u.nodes.clone(), u.edges().map(|(i, j, w)| (i, j, w.nonneg))),
    }
}
