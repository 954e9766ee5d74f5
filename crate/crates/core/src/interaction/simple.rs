use serde::Serialize;

use super::InteractionGraph;
use crate::corpus::UserId;

/// Undirected, unweighted graph without self loops; sorted adjacency rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    nodes: Vec<UserId>,
    adjacency: Vec<Vec<u32>>,
}

impl SimpleGraph {
    /// Duplicate edges collapse and self loops are dropped. Panics on an
    /// out-of-range endpoint.
    pub fn from_edges(nodes: Vec<UserId>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let n = nodes.len();
        let mut adjacency = vec![Vec::new(); n];
        for (a, b) in edges {
            assert!(a < n && b < n, "edge ({a}, {b}) out of range for {n} nodes");
            if a != b {
                adjacency[a].push(b as u32);
                adjacency[b].push(a as u32);
            }
        }
        for row in &mut adjacency {
            row.sort_unstable();
            row.dedup();
        }
        SimpleGraph { nodes, adjacency }
    }

    pub fn nodes(&self) -> &[UserId] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&(b as u32)).is_ok()
    }
}

/// `i – j` iff `i` liked `j` or `j` liked `i`, however often.
pub fn to_simple(u: &InteractionGraph) -> SimpleGraph {
    SimpleGraph::from_edges(u.nodes().to_vec(), u.edges().map(|(i, j, _)| (i, j)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Clustering {
    /// Transitivity: 3 × triangles / connected triples.
    pub global: f64,
    /// Mean of the local coefficients over all nodes.
    pub mean_local: f64,
    #[serde(skip)]
    pub per_node: Vec<f64>,
}

fn sorted_intersection(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Local coefficient `2·T_i / (k_i(k_i − 1))`, 0 below degree 2. An empty
/// graph, or one without connected triples, has global coefficient 0.
pub fn clustering(s: &SimpleGraph) -> Clustering {
    let n = s.node_count();
    let mut per_node = vec![0.0; n];
    let mut closed = 0u64;
    let mut triples = 0u64;
    for (i, c) in per_node.iter_mut().enumerate() {
        let nbrs = s.neighbors(i);
        let k = nbrs.len() as u64;
        if k < 2 {
            continue;
        }
        // each triangle at i is seen once from each of its two other corners
        let links: u64 = nbrs
            .iter()
            .map(|&j| sorted_intersection(nbrs, s.neighbors(j as usize)) as u64)
            .sum::<u64>()
            / 2;
        let pairs = k * (k - 1) / 2;
        closed += links;
        triples += pairs;
        *c = links as f64 / pairs as f64;
    }
    let mean_local = if n == 0 {
        0.0
    } else {
        per_node.iter().sum::<f64>() / n as f64
    };
    let global = if triples == 0 {
        0.0
    } else {
        closed as f64 / triples as f64
    };
    Clustering {
        global,
        mean_local,
        per_node,
    }
}

/// `(degree, nodes, mean local clustering)` for each degree present, ascending.
pub fn mean_local_clustering_vs_degree(s: &SimpleGraph) -> Vec<(usize, usize, f64)> {
    let c = clustering(s);
    let mut by_degree: std::collections::BTreeMap<usize, (usize, f64)> = Default::default();
    for (i, &ci) in c.per_node.iter().enumerate() {
        let e = by_degree.entry(s.degree(i)).or_default();
        e.0 += 1;
        e.1 += ci;
    }
    by_degree
        .into_iter()
        .map(|(k, (n, sum))| (k, n, sum / n as f64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> SimpleGraph {
        let nodes = (0..n).map(|i| UserId::new(format!("n{i}"))).collect();
        SimpleGraph::from_edges(nodes, edges.iter().copied())
    }

    #[test]
    fn triangle() {
        let c = clustering(&graph(3, &[(0, 1), (1, 2), (2, 0)]));
        assert_eq!((c.global, c.mean_local), (1.0, 1.0));
    }

    #[test]
    fn k4_minus_edge() {
        let c = clustering(&graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]));
        assert!((c.mean_local - 5.0 / 6.0).abs() < 1e-12);
        // 2 triangles, 8 connected triples counted from centres
        assert!((c.global - 6.0 / 8.0).abs() < 1e-12);
    }

    #[test]
    fn path_of_three() {
        let c = clustering(&graph(3, &[(0, 1), (1, 2)]));
        assert_eq!((c.global, c.mean_local), (0.0, 0.0));
    }

    #[test]
    fn empty_graph() {
        let c = clustering(&graph(0, &[]));
        assert_eq!((c.global, c.mean_local), (0.0, 0.0));
    }

    #[test]
    fn by_degree_triangle_and_star() {
        assert_eq!(
            mean_local_clustering_vs_degree(&graph(3, &[(0, 1), (1, 2), (2, 0)])),
            [(2, 3, 1.0)]
        );
        assert_eq!(
            mean_local_clustering_vs_degree(&graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)])),
            [(1, 4, 0.0), (4, 1, 0.0)]
        );
    }

    #[test]
    fn merges_both_directions() {
        let g = graph(2, &[(0, 1), (1, 0), (0, 0)]);
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(1, 0));
    }
}
