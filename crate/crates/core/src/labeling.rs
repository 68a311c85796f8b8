//! Edge labelings: a total assignment of integer labels to the edges of a
//! forest. The labeler only ever produces bijections onto [1,m]; parsed
//! labelings may be arbitrary and are checked by the verifier.

use std::collections::BTreeMap;

use crate::graph::{Edge, Forest, GraphError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLabeling {
    forest: Forest,
    labels: BTreeMap<Edge, u64>,
}

impl EdgeLabeling {
    /// Every edge must carry exactly one label; bijectivity is not enforced
    /// here (see `verify::vertex_sums`).
    pub fn new(forest: Forest, labels: BTreeMap<Edge, u64>) -> Result<EdgeLabeling, GraphError> {
        for e in labels.keys() {
            if !forest.has_edge(e) {
                return Err(GraphError::UnknownEdge { edge: e.clone() });
            }
        }
        for e in forest.edges() {
            if !labels.contains_key(e) {
                return Err(GraphError::MissingLabel { edge: e.clone() });
            }
        }
        Ok(EdgeLabeling { forest, labels })
    }

    pub fn forest(&self) -> &Forest {
        &self.forest
    }

    pub fn labels(&self) -> &BTreeMap<Edge, u64> {
        &self.labels
    }

    /// Panics on edges outside the forest; construction guarantees totality.
    pub fn label(&self, e: &Edge) -> u64 {
        self.labels[e]
    }

    /// True when the labels are exactly [1,m], each used once.
    pub fn is_bijection(&self) -> bool {
        let m = self.forest.edge_count() as u64;
        let mut seen = vec![false; m as usize + 1];
        for &l in self.labels.values() {
            if l < 1 || l > m || seen[l as usize] {
                return false;
            }
            seen[l as usize] = true;
        }
        true
    }

    /// Labels in canonical edge order; useful for comparing labelings.
    pub fn label_vector(&self) -> Vec<u64> {
        self.forest
            .canonical_edges()
            .iter()
            .map(|e| self.labels[e])
            .collect()
    }

    /// Sum of the labels on edges incident to `v`.
    pub fn incident_sum(&self, v: &str) -> u64 {
        self.labels
            .iter()
            .filter(|(e, _)| e.touches(v))
            .map(|(_, &l)| l)
            .sum()
    }
}
