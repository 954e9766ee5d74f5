use std::collections::VecDeque;

use rayon::prelude::*;

use super::Projection;
use crate::error::{Error, Result};

/// Eigenvalues within this relative distance of the largest one are treated
/// as ties between components.
const DOMINANCE_TOLERANCE: f64 = 1e-9;

/// Components at least this large compute their matrix-vector product in
/// parallel.
const PARALLEL_ROWS: usize = 4096;

/// Eigenvector centrality scaled so the largest entry is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralityScores {
    labels: Vec<String>,
    scores: Vec<f64>,
    eigenvalue: f64,
    iterations: usize,
}

impl CentralityScores {
    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let (labels, scores) = pairs.into_iter().map(|(l, s)| (l.into(), s)).unzip();
        CentralityScores {
            labels,
            scores,
            eigenvalue: f64::NAN,
            iterations: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.scores[i])
    }

    /// Score of node `i`, in graph index order.
    pub fn score(&self, i: usize) -> f64 {
        self.scores[i]
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.labels
            .iter()
            .map(String::as_str)
            .zip(self.scores.iter().copied())
    }

    /// Leading eigenvalue of the dominant component (0 for an edgeless graph).
    pub fn eigenvalue(&self) -> f64 {
        self.eigenvalue
    }

    /// Largest iteration count any component needed.
    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn zero_count(&self) -> usize {
        self.scores.iter().filter(|&&s| s == 0.0).count()
    }

    /// Node table `word,centrality`.
    pub fn write_csv(&self, writer: impl std::io::Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["word", "centrality"])?;
        for (label, score) in self.iter() {
            w.write_record([label, &crate::fixed(score)])?;
        }
        w.flush().map_err(|e| Error::io("<centrality>", e))?;
        Ok(())
    }
}

fn components(g: &Projection) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] || g.neighbors(start).is_empty() {
            continue;
        }
        seen[start] = true;
        let mut members = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &(u, _) in g.neighbors(v) {
                let u = u as usize;
                if !seen[u] {
                    seen[u] = true;
                    members.push(u);
                    queue.push_back(u);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

struct ComponentVector {
    members: Vec<usize>,
    vector: Vec<f64>,
    eigenvalue: f64,
    iterations: usize,
}

/// Power iteration on `A + sI` restricted to one connected component, with
/// `s` half the component's largest weighted degree. The shift leaves the
/// eigenvectors unchanged but makes the Perron root strictly dominant, so
/// bipartite components converge instead of oscillating; it also scales
/// with the weights, so rescaling the graph leaves every iterate unchanged.
fn power_iterate(
    g: &Projection,
    members: Vec<usize>,
    tol: f64,
    max_iter: usize,
) -> Result<ComponentVector> {
    let local: std::collections::HashMap<usize, usize> =
        members.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let rows: Vec<Vec<(usize, f64)>> = members
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .map(|&(u, w)| (local[&(u as usize)], w as f64))
                .collect()
        })
        .collect();
    let shift = 0.5
        * rows
            .iter()
            .map(|r| r.iter().map(|&(_, w)| w).sum::<f64>())
            .fold(0.0, f64::max);

    let step = |x: &[f64], k: usize| -> f64 {
        shift * x[k] + rows[k].iter().map(|&(j, w)| w * x[j]).sum::<f64>()
    };

    let n = members.len();
    let mut x = vec![1.0; n];
    let mut next = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for iteration in 1..=max_iter {
        if n >= PARALLEL_ROWS {
            next.par_iter_mut()
                .enumerate()
                .for_each(|(k, y)| *y = step(&x, k));
        } else {
            for (k, y) in next.iter_mut().enumerate() {
                *y = step(&x, k);
            }
        }
        let norm = next.iter().copied().fold(0.0, f64::max);
        residual = 0.0;
        for (y, old) in next.iter_mut().zip(&x) {
            *y /= norm;
            residual = f64::max(residual, (*y - old).abs());
        }
        std::mem::swap(&mut x, &mut next);
        if residual < tol {
            return Ok(ComponentVector {
                members,
                vector: x,
                eigenvalue: norm - shift,
                iterations: iteration,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        residual,
    })
}

/// Eigenvector centrality of a nonnegative symmetric graph.
///
/// Each connected component is iterated from the uniform vector until
/// successive max-normalised iterates differ by less than `tol` in the max
/// norm. Only the component(s) with the largest leading eigenvalue keep their
/// scores (max entry 1); every other node, isolated ones included, scores 0.
/// An edgeless graph scores 0 everywhere.
pub fn eigenvector_centrality(
    g: &Projection,
    tol: f64,
    max_iter: usize,
) -> Result<CentralityScores> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tol must be positive, got {tol}"
        )));
    }
    if max_iter == 0 {
        return Err(Error::InvalidParameter(
            "max_iter must be at least 1".into(),
        ));
    }
    let solved = components(g)
        .into_iter()
        .map(|members| power_iterate(g, members, tol, max_iter))
        .collect::<Result<Vec<_>>>()?;

    let mut scores = vec![0.0; g.node_count()];
    let top = solved.iter().map(|c| c.eigenvalue).fold(0.0, f64::max);
    for comp in solved
        .iter()
        .filter(|c| c.eigenvalue >= top * (1.0 - DOMINANCE_TOLERANCE))
    {
        for (&v, &s) in comp.members.iter().zip(&comp.vector) {
            scores[v] = s;
        }
    }
    Ok(CentralityScores {
        labels: g.labels().to_vec(),
        scores,
        eigenvalue: top,
        iterations: solved.iter().map(|c| c.iterations).max().unwrap_or(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, u64)]) -> Projection {
        let labels = (0..n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect();
        Projection::from_edges(labels, edges).unwrap()
    }

    #[test]
    fn path_of_three_matches_closed_form() {
        let s = eigenvector_centrality(&graph(3, &[(0, 1, 1), (1, 2, 1)]), 1e-12, 10_000).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.score(0) - r).abs() < 1e-9);
        assert!((s.score(1) - 1.0).abs() < 1e-12);
        assert!((s.score(2) - r).abs() < 1e-9);
        assert!((s.eigenvalue() - std::f64::consts::SQRT_2).abs() < 1e-9);
    }

    #[test]
    fn single_edge_scores_one() {
        let s = eigenvector_centrality(&graph(2, &[(0, 1, 3)]), 1e-10, 100).unwrap();
        assert_eq!(s.scores(), [1.0, 1.0]);
    }

    #[test]
    fn edgeless_graph_is_all_zero() {
        let s = eigenvector_centrality(&graph(4, &[]), 1e-10, 100).unwrap();
        assert!(s.scores().iter().all(|&x| x == 0.0));
        assert_eq!(s.zero_count(), 4);
    }

    #[test]
    fn minor_component_and_isolated_nodes_are_zero() {
        // triangle (λ=2) beats the separate single edge (λ=1); node 5 isolated
        let g = graph(6, &[(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1)]);
        let s = eigenvector_centrality(&g, 1e-12, 10_000).unwrap();
        assert_eq!(&s.scores()[..3], [1.0, 1.0, 1.0]);
        assert_eq!(&s.scores()[3..], [0.0, 0.0, 0.0]);
    }

    #[test]
    fn tied_components_both_score() {
        let s = eigenvector_centrality(&graph(4, &[(0, 1, 1), (2, 3, 1)]), 1e-10, 100).unwrap();
        assert_eq!(s.scores(), [1.0; 4]);
    }

    #[test]
    fn scale_invariance() {
        let g = graph(5, &[(0, 1, 2), (1, 2, 1), (2, 3, 5), (3, 4, 1), (1, 3, 1)]);
        let a = eigenvector_centrality(&g, 1e-12, 100_000).unwrap();
        let b = eigenvector_centrality(&g.scaled(7), 1e-12, 100_000).unwrap();
        for (x, y) in a.scores().iter().zip(b.scores()) {
            assert!((x - y).abs() <= 1e-9);
        }
    }

    #[test]
    fn non_convergence_is_reported() {
        let g = graph(5, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1)]);
        match eigenvector_centrality(&g, 1e-15, 2) {
            Err(Error::NoConvergence {
                iterations,
                residual,
            }) => {
                assert_eq!(iterations, 2);
                assert!(residual > 0.0);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = graph(2, &[(0, 1, 1)]);
        assert!(eigenvector_centrality(&g, 0.0, 10).is_err());
        assert!(eigenvector_centrality(&g, 1e-6, 0).is_err());
    }
}
