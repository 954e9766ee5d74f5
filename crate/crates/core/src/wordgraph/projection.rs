use std::collections::HashMap;
use std::io::Write;

use rayon::prelude::*;

use super::BipartiteGraph;
use crate::error::{Error, Result};

/// Undirected graph with nonnegative integer edge weights and no self loops,
/// stored as sorted adjacency rows. Produced by one-mode projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<(u32, u64)>>,
}

/// Word–word co-occurrence graph, `W = B·Bᵀ` with zero diagonal.
pub type WordGraph = Projection;
/// User–user graph linking profiles that share a word, `Bᵀ·B` with zero diagonal.
pub type UserGraph = Projection;

impl Projection {
    fn from_rows(labels: Vec<String>, adjacency: Vec<Vec<(u32, u64)>>) -> Self {
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        Projection {
            labels,
            index,
            adjacency,
        }
    }

    /// Builds a graph from an undirected edge list. Each `(a, b, w)` adds `w`
    /// in both directions; zero weights are dropped and self loops rejected.
    pub fn from_edges(labels: Vec<String>, edges: &[(usize, usize, u64)]) -> Result<Self> {
        let n = labels.len();
        let mut acc: Vec<HashMap<u32, u64>> = vec![HashMap::new(); n];
        for &(a, b, w) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({a}, {b}) out of range for {n} nodes"
                )));
            }
            if a == b {
                return Err(Error::InvalidParameter(format!("self loop on node {a}")));
            }
            if w == 0 {
                continue;
            }
            *acc[a].entry(b as u32).or_default() += w;
            *acc[b].entry(a as u32).or_default() += w;
        }
        let adjacency = acc
            .into_iter()
            .map(|m| {
                let mut row: Vec<_> = m.into_iter().collect();
                row.sort_unstable();
                row
            })
            .collect();
        Ok(Self::from_rows(labels, adjacency))
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Neighbours of `i` in ascending index order, with weights.
    pub fn neighbors(&self, i: usize) -> &[(u32, u64)] {
        &self.adjacency[i]
    }

    pub fn weight(&self, i: usize, j: usize) -> u64 {
        let row = &self.adjacency[i];
        row.binary_search_by_key(&(j as u32), |&(k, _)| k)
            .map_or(0, |pos| row[pos].1)
    }

    pub fn weighted_degree(&self, i: usize) -> u64 {
        self.adjacency[i].iter().map(|&(_, w)| w).sum()
    }

    /// Returns a copy with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: u64) -> Self {
        let adjacency = self
            .adjacency
            .iter()
            .map(|row| row.iter().map(|&(j, w)| (j, w * factor)).collect())
            .collect();
        Self::from_rows(self.labels.clone(), adjacency)
    }

    /// Edge list `word_a,word_b,weight`, each undirected edge once with
    /// `a < b` by index.
    pub fn write_edges_csv(&self, writer: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["word_a", "word_b", "weight"])?;
        for (i, row) in self.adjacency.iter().enumerate() {
            for &(j, weight) in row.iter().filter(|&&(j, _)| j as usize > i) {
                w.write_record([
                    self.labels[i].as_str(),
                    self.labels[j as usize].as_str(),
                    &weight.to_string(),
                ])?;
            }
        }
        w.flush().map_err(|e| Error::io("<edges>", e))?;
        Ok(())
    }
}

/// Sparse product of a 0/1 matrix (given row-wise) with its transpose (given
/// as the column lists), diagonal dropped. Each output row depends only on
/// its own input row, so the parallel result equals the sequential one.
fn self_product(rows: &[Vec<u32>], cols: &[Vec<u32>]) -> Vec<Vec<(u32, u64)>> {
    let n = rows.len();
    rows.par_iter()
        .enumerate()
        .map_init(
            || (vec![0u64; n], Vec::new()),
            |(acc, touched), (i, row)| {
                for &k in row {
                    for &j in &cols[k as usize] {
                        let j = j as usize;
                        if j == i {
                            continue;
                        }
                        if acc[j] == 0 {
                            touched.push(j as u32);
                        }
                        acc[j] += 1;
                    }
                }
                touched.sort_unstable();
                let out: Vec<(u32, u64)> = touched
                    .iter()
                    .map(|&j| (j, std::mem::take(&mut acc[j as usize])))
                    .collect();
                touched.clear();
                out
            },
        )
        .collect()
}

/// `W = B·Bᵀ` with the diagonal zeroed: `W[i][j]` is the number of profiles
/// on which both word `i` and word `j` appear.
pub fn project_words(b: &BipartiteGraph) -> WordGraph {
    let adjacency = self_product(b.rows(), &b.columns());
    Projection::from_rows(b.words().to_vec(), adjacency)
}

/// `Bᵀ·B` with the diagonal zeroed: users linked by the number of lexicon
/// words their profiles share.
pub fn project_users(b: &BipartiteGraph) -> UserGraph {
    let cols = b.columns();
    let adjacency = self_product(&cols, b.rows());
    let labels = b.users().iter().map(|u| u.as_str().to_owned()).collect();
    Projection::from_rows(labels, adjacency)
}
