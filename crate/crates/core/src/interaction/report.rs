use serde::Serialize;

use super::{
    ccdf, clustering, degree_ratio_cdf, degree_vector, likes_answers_correlation,
    mean_local_clustering_vs_degree, mean_node_reciprocity, mean_reciprocity_by_outdegree,
    reciprocity, split_graph, to_simple, top_overlap, DiGraph, Direction, InteractionGraph,
    LikesAnswersCorrelation, RatioCdf, ReciprocityBin,
};
use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::{fixed, rounded, rounded_opt};

/// x values of the overlap curve, in percent.
pub const OVERLAP_PERCENTAGES: [f64; 14] = [
    1.0, 2.0, 3.0, 5.0, 10.0, 15.0, 20.0, 30.0, 40.0, 50.0, 60.0, 70.0, 80.0, 100.0,
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReciprocitySummary {
    /// Edge-level reciprocity of the combined graph `U`.
    #[serde(serialize_with = "rounded_opt")]
    pub mean: Option<f64>,
    #[serde(serialize_with = "rounded_opt")]
    pub neg: Option<f64>,
    #[serde(serialize_with = "rounded_opt")]
    pub nonneg: Option<f64>,
    /// Node-averaged variants (nodes with out-edges only).
    #[serde(serialize_with = "rounded_opt")]
    pub node_mean: Option<f64>,
    #[serde(serialize_with = "rounded_opt")]
    pub node_mean_neg: Option<f64>,
    #[serde(serialize_with = "rounded_opt")]
    pub node_mean_nonneg: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OverlapRow {
    #[serde(serialize_with = "rounded")]
    pub x: f64,
    #[serde(serialize_with = "rounded_opt")]
    pub total: Option<f64>,
    #[serde(serialize_with = "rounded_opt")]
    pub neg: Option<f64>,
    #[serde(serialize_with = "rounded_opt")]
    pub nonneg: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClusteringSummary {
    #[serde(serialize_with = "rounded")]
    pub global: f64,
    #[serde(serialize_with = "rounded")]
    pub mean_local: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricsSummary {
    pub nodes: usize,
    pub edges: usize,
    pub neg_edges: usize,
    pub nonneg_edges: usize,
    pub simple_edges: usize,
    pub top_k: usize,
    pub reciprocity: ReciprocitySummary,
    pub overlap_top_1pct: OverlapRow,
    pub ratio_nodes: usize,
    #[serde(serialize_with = "rounded_opt")]
    pub ratio_within_20pct: Option<f64>,
    pub clustering: ClusteringSummary,
    pub likes_answers: LikesAnswersCorrelation,
}

/// Everything computed on one interaction graph: scalar summary plus the
/// data behind each curve.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricsReport {
    pub summary: MetricsSummary,
    /// `(name, curve)` for neg/non-neg in/out weighted degree.
    pub ccdf: Vec<(&'static str, Vec<(f64, f64)>)>,
    pub overlap: Vec<OverlapRow>,
    pub ratio: Option<RatioCdf>,
    /// `(graph, bin)` for the combined, negative and non-negative graphs.
    pub reciprocity_bins: Vec<(&'static str, ReciprocityBin)>,
    /// `(degree, nodes, mean local clustering)`.
    pub clustering_by_degree: Vec<(usize, usize, f64)>,
}

fn overlap_at(total: &DiGraph, neg: &DiGraph, nonneg: &DiGraph, x: f64) -> OverlapRow {
    let of = |g: &DiGraph| {
        top_overlap(
            &degree_vector(g, Direction::In, true),
            &degree_vector(g, Direction::Out, true),
            x,
        )
        .ok()
    };
    OverlapRow {
        x,
        total: of(total),
        neg: of(neg),
        nonneg: of(nonneg),
    }
}

/// Metrics that need at least one edge come out as `None` on an edgeless
/// graph; nothing here fails on a well-formed graph.
pub fn compute_metrics(
    c: &Corpus,
    u: &InteractionGraph,
    correlation_split: usize,
) -> Result<MetricsReport> {
    let total = u.total();
    let split = split_graph(u);
    let simple = to_simple(u);
    let ((reciprocity_summary, reciprocity_bins), (clust, clustering_by_degree)) = rayon::join(
        || {
            let summary = ReciprocitySummary {
                mean: reciprocity(&total).ok(),
                neg: reciprocity(&split.neg).ok(),
                nonneg: reciprocity(&split.nonneg).ok(),
                node_mean: mean_node_reciprocity(&total).ok(),
                node_mean_neg: mean_node_reciprocity(&split.neg).ok(),
                node_mean_nonneg: mean_node_reciprocity(&split.nonneg).ok(),
            };
            let mut bins = Vec::new();
            for (name, g) in [
                ("total", &total),
                ("neg", &split.neg),
                ("nonneg", &split.nonneg),
            ] {
                if let Ok(b) = mean_reciprocity_by_outdegree(g) {
                    bins.extend(b.into_iter().map(|bin| (name, bin)));
                }
            }
            (summary, bins)
        },
        || {
            (
                clustering(&simple),
                mean_local_clustering_vs_degree(&simple),
            )
        },
    );

    let mut ccdf_curves = Vec::new();
    if u.node_count() > 0 {
        for (name, g, dir) in [
            ("neg_in", &split.neg, Direction::In),
            ("neg_out", &split.neg, Direction::Out),
            ("nonneg_in", &split.nonneg, Direction::In),
            ("nonneg_out", &split.nonneg, Direction::Out),
        ] {
            ccdf_curves.push((name, ccdf(&degree_vector(g, dir, true).as_f64())?));
        }
    }

    let overlap: Vec<OverlapRow> = OVERLAP_PERCENTAGES
        .iter()
        .map(|&x| overlap_at(&total, &split.neg, &split.nonneg, x))
        .collect();
    let ratio = match degree_ratio_cdf(
        &degree_vector(&total, Direction::Out, true),
        &degree_vector(&total, Direction::In, true),
    ) {
        Ok(r) => Some(r),
        Err(Error::NoPositiveInDegree) => None,
        Err(e) => return Err(e),
    };

    let summary = MetricsSummary {
        nodes: u.node_count(),
        edges: u.edge_count(),
        neg_edges: split.neg.edge_count(),
        nonneg_edges: split.nonneg.edge_count(),
        simple_edges: simple.edge_count(),
        top_k: u.top_k(),
        reciprocity: reciprocity_summary,
        overlap_top_1pct: overlap[0].clone(),
        ratio_nodes: ratio.as_ref().map_or(0, |r| r.nodes),
        ratio_within_20pct: ratio.as_ref().map(|r| r.within_20pct),
        clustering: ClusteringSummary {
            global: clust.global,
            mean_local: clust.mean_local,
        },
        likes_answers: likes_answers_correlation(c, correlation_split),
    };
    Ok(MetricsReport {
        summary,
        ccdf: ccdf_curves,
        overlap,
        ratio,
        reciprocity_bins,
        clustering_by_degree,
    })
}

fn csv_bytes<F>(header: &[&str], rows: F) -> Result<Vec<u8>>
where
    F: FnOnce(&mut csv::Writer<Vec<u8>>) -> Result<()>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    rows(&mut w)?;
    w.into_inner()
        .map_err(|e| Error::io("<csv>", e.into_error()))
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "null".to_owned(), fixed)
}

impl MetricsReport {
    pub fn summary_json(&self) -> Result<Vec<u8>> {
        let mut out = serde_json::to_vec_pretty(&self.summary)?;
        out.push(b'\n');
        Ok(out)
    }

    /// Every output of the report as `(file name, contents)`: `metrics.json`
    /// plus one CSV per curve.
    pub fn files(&self) -> Result<Vec<(String, Vec<u8>)>> {
        let mut files = vec![("metrics.json".to_owned(), self.summary_json()?)];
        for (name, curve) in &self.ccdf {
            let bytes = csv_bytes(&["degree", "ccdf"], |w| {
                for &(k, p) in curve {
                    w.write_record([k.to_string(), fixed(p)])?;
                }
                Ok(())
            })?;
            files.push((format!("ccdf_{name}.csv"), bytes));
        }
        files.push((
            "overlap.csv".to_owned(),
            csv_bytes(&["x", "total", "neg", "nonneg"], |w| {
                for r in &self.overlap {
                    w.write_record([r.x.to_string(), opt(r.total), opt(r.neg), opt(r.nonneg)])?;
                }
                Ok(())
            })?,
        ));
        files.push((
            "ratio_cdf.csv".to_owned(),
            csv_bytes(&["ratio", "cdf"], |w| {
                for &(r, p) in self.ratio.iter().flat_map(|r| &r.points) {
                    w.write_record([fixed(r), fixed(p)])?;
                }
                Ok(())
            })?,
        ));
        files.push((
            "recip_vs_outdeg.csv".to_owned(),
            csv_bytes(
                &[
                    "graph",
                    "outdeg_lo",
                    "outdeg_hi",
                    "nodes",
                    "mean_reciprocity",
                ],
                |w| {
                    for (graph, b) in &self.reciprocity_bins {
                        w.write_record([
                            graph.to_string(),
                            b.lo.to_string(),
                            b.hi.to_string(),
                            b.nodes.to_string(),
                            fixed(b.mean_reciprocity),
                        ])?;
                    }
                    Ok(())
                },
            )?,
        ));
        files.push((
            "clustering_vs_degree.csv".to_owned(),
            csv_bytes(&["degree", "nodes", "mean_local_clustering"], |w| {
                for &(k, n, c) in &self.clustering_by_degree {
                    w.write_record([k.to_string(), n.to_string(), fixed(c)])?;
                }
                Ok(())
            })?,
        ));
        Ok(files)
    }
}
