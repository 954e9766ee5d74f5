use serde::Serialize;

use super::DiGraph;
use crate::corpus::UserId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    In,
    Out,
}

/// One degree value per node, aligned with the graph's node order.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeVector {
    pub direction: Direction,
    pub weighted: bool,
    nodes: Vec<UserId>,
    values: Vec<u64>,
}

impl DegreeVector {
    pub fn new(direction: Direction, weighted: bool, nodes: Vec<UserId>, values: Vec<u64>) -> Self {
        assert_eq!(nodes.len(), values.len());
        DegreeVector {
            direction,
            weighted,
            nodes,
            values,
        }
    }

    pub fn nodes(&self) -> &[UserId] {
        &self.nodes
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn get(&self, id: &UserId) -> Option<u64> {
        self.nodes
            .iter()
            .position(|n| n == id)
            .map(|i| self.values[i])
    }

    pub fn sum(&self) -> u64 {
        self.values.iter().sum()
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.values.iter().map(|&v| v as f64).collect()
    }
}

/// Weighted degree sums edge weights; unweighted counts edges.
pub fn degree_vector(g: &DiGraph, direction: Direction, weighted: bool) -> DegreeVector {
    let values = (0..g.node_count())
        .map(|i| {
            let row = match direction {
                Direction::In => g.in_edges(i),
                Direction::Out => g.out_edges(i),
            };
            if weighted {
                row.iter().map(|&(_, w)| w).sum()
            } else {
                row.len() as u64
            }
        })
        .collect();
    DegreeVector::new(direction, weighted, g.nodes().to_vec(), values)
}
