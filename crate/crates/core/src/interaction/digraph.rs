use std::collections::BTreeMap;

use crate::corpus::UserId;

/// Directed graph with positive integer edge weights over a fixed node list.
/// Rows are kept sorted by target (out) and source (in).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiGraph {
    nodes: Vec<UserId>,
    out: Vec<Vec<(u32, u64)>>,
    inn: Vec<Vec<(u32, u64)>>,
}

impl DiGraph {
    /// Parallel edges are summed; zero-weight edges and self loops dropped.
    /// Panics on an out-of-range endpoint.
    pub fn from_edges(
        nodes: Vec<UserId>,
        edges: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Self {
        let n = nodes.len();
        let mut merged: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for (i, j, w) in edges {
            assert!(i < n && j < n, "edge ({i}, {j}) out of range for {n} nodes");
            if i != j && w > 0 {
                *merged.entry((i, j)).or_default() += w;
            }
        }
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for (&(i, j), &w) in &merged {
            out[i].push((j as u32, w));
        }
        for (&(i, j), &w) in &merged {
            inn[j].push((i as u32, w));
        }
        for row in &mut inn {
            row.sort_unstable();
        }
        DiGraph { nodes, out, inn }
    }

    pub fn nodes(&self) -> &[UserId] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn out_edges(&self, i: usize) -> &[(u32, u64)] {
        &self.out[i]
    }

    pub fn in_edges(&self, i: usize) -> &[(u32, u64)] {
        &self.inn[i]
    }

    pub fn weight(&self, i: usize, j: usize) -> u64 {
        let row = &self.out[i];
        row.binary_search_by_key(&(j as u32), |&(k, _)| k)
            .map_or(0, |p| row[p].1)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.weight(i, j) > 0
    }

    /// All edges `(src, dst, weight)` in `(src, dst)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |&(j, w)| (i, j as usize, w)))
    }

    pub fn total_weight(&self) -> u64 {
        self.edges().map(|(_, _, w)| w).sum()
    }
}
