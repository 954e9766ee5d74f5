use super::DiGraph;
use crate::error::{Error, Result};

/// Fraction of directed edges whose reverse edge also exists. A reciprocated
/// pair counts twice, so a 2-cycle scores 1.
pub fn reciprocity(g: &DiGraph) -> Result<f64> {
    let total = g.edge_count();
    if total == 0 {
        return Err(Error::NoEdges);
    }
    let mutual = g.edges().filter(|&(i, j, _)| g.has_edge(j, i)).count();
    Ok(mutual as f64 / total as f64)
}

/// Per node: fraction of its out-edges that are reciprocated, `None` for
/// nodes without out-edges.
pub fn node_reciprocity(g: &DiGraph) -> Vec<Option<f64>> {
    (0..g.node_count())
        .map(|i| {
            let out = g.out_edges(i);
            if out.is_empty() {
                return None;
            }
            let mutual = out
                .iter()
                .filter(|&&(j, _)| g.has_edge(j as usize, i))
                .count();
            Some(mutual as f64 / out.len() as f64)
        })
        .collect()
}

/// Mean of [`node_reciprocity`] over nodes that have out-edges.
pub fn mean_node_reciprocity(g: &DiGraph) -> Result<f64> {
    let values: Vec<f64> = node_reciprocity(g).into_iter().flatten().collect();
    if values.is_empty() {
        return Err(Error::NoEdges);
    }
    Ok(values.iter().sum::<f64>() / values.len() as f64)
}

/// Nodes whose out-degree (edge count) lies in `[lo, hi)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReciprocityBin {
    pub lo: u64,
    pub hi: u64,
    pub nodes: usize,
    pub mean_reciprocity: f64,
}

/// Mean node reciprocity in power-of-two out-degree bins `[1,2), [2,4), …`.
/// Nodes without out-edges are left out; empty bins are omitted.
pub fn mean_reciprocity_by_outdegree(g: &DiGraph) -> Result<Vec<ReciprocityBin>> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let mut sums: Vec<(usize, f64)> = Vec::new();
    for (i, r) in node_reciprocity(g).into_iter().enumerate() {
        let Some(r) = r else { continue };
        let bin = g.out_edges(i).len().ilog2() as usize;
        if sums.len() <= bin {
            sums.resize(bin + 1, (0, 0.0));
        }
        sums[bin].0 += 1;
        sums[bin].1 += r;
    }
    Ok(sums
        .into_iter()
        .enumerate()
        .filter(|(_, (n, _))| *n > 0)
        .map(|(b, (n, s))| ReciprocityBin {
            lo: 1 << b,
            hi: 1 << (b + 1),
            nodes: n,
            mean_reciprocity: s / n as f64,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::UserId;

    fn graph(n: usize, edges: &[(usize, usize)]) -> DiGraph {
        let nodes = (0..n).map(|i| UserId::new(format!("n{i}"))).collect();
        DiGraph::from_edges(nodes, edges.iter().map(|&(i, j)| (i, j, 1)))
    }

    #[test]
    fn fixed_cases() {
        assert_eq!(reciprocity(&graph(2, &[(0, 1), (1, 0)])).unwrap(), 1.0);
        assert_eq!(reciprocity(&graph(2, &[(0, 1)])).unwrap(), 0.0);
        let r = reciprocity(&graph(3, &[(0, 1), (1, 0), (0, 2)])).unwrap();
        assert_eq!(r, 2.0 / 3.0);
    }

    #[test]
    fn no_edges_is_an_error() {
        assert!(matches!(reciprocity(&graph(3, &[])), Err(Error::NoEdges)));
    }

    #[test]
    fn per_node_hand_count() {
        let g = graph(3, &[(0, 1), (0, 2), (1, 0)]);
        assert_eq!(node_reciprocity(&g), [Some(0.5), Some(1.0), None]);
    }

    #[test]
    fn two_cycle_single_bin() {
        let bins = mean_reciprocity_by_outdegree(&graph(2, &[(0, 1), (1, 0)])).unwrap();
        assert_eq!(
            bins,
            [ReciprocityBin {
                lo: 1,
                hi: 2,
                nodes: 2,
                mean_reciprocity: 1.0
            }]
        );
    }

    #[test]
    fn bins_by_power_of_two() {
        // node 0 has out-degree 3 (bin [2,4)), nodes 1 and 2 out-degree 1
        let g = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 0), (2, 3)]);
        let bins = mean_reciprocity_by_outdegree(&g).unwrap();
        assert_eq!(bins.len(), 2);
        assert_eq!((bins[0].lo, bins[0].nodes), (1, 2));
        assert_eq!(bins[0].mean_reciprocity, 0.5);
        assert_eq!((bins[1].lo, bins[1].hi, bins[1].nodes), (2, 4, 1));
        assert!((bins[1].mean_reciprocity - 1.0 / 3.0).abs() < 1e-15);
    }
}
