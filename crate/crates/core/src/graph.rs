//! Forest data model: vertices, undirected edges, component decomposition,
//! and the eligibility analysis used to gate the labeling constructions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Errors from building, parsing, rooting, or transforming forests.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("self-loop at vertex '{vertex}'")]
    SelfLoop { vertex: String },
    #[error("duplicate edge {edge}")]
    DuplicateEdge { edge: Edge },
    #[error("cycle detected when adding edge {edge}")]
    CycleDetected { edge: Edge },
    #[error("unknown vertex '{vertex}'")]
    UnknownVertex { vertex: String },
    #[error("root '{root}' is not in component {component}")]
    RootNotInComponent { root: String, component: usize },
    #[error("identification needs at least two components")]
    SingleComponent,
    #[error("edge {edge} has no image under the correspondence")]
    CorrespondenceMismatch { edge: Edge },
    #[error("edge {edge} is missing a label")]
    MissingLabel { edge: Edge },
    #[error("label assigned to edge {edge}, which is not in the graph")]
    UnknownEdge { edge: Edge },
}

/// Why a forest cannot be labeled by the main construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IneligibleReason {
    #[error("K2 component (component {0})")]
    K2Component(usize),
    #[error("{0} degree-2 vertices (at most one allowed)")]
    TooManyDegree2(usize),
    #[error("isolated vertex '{0}'")]
    IsolatedVertex(String),
    #[error("forest has no edges")]
    NoEdges,
}

/// Undirected edge; endpoints are stored in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    a: String,
    b: String,
}

impl Edge {
    pub fn new(u: impl Into<String>, v: impl Into<String>) -> Edge {
        let (u, v) = (u.into(), v.into());
        if u <= v {
            Edge { a: u, b: v }
        } else {
            Edge { a: v, b: u }
        }
    }

    pub fn endpoints(&self) -> (&str, &str) {
        (&self.a, &self.b)
    }

    pub fn touches(&self, v: &str) -> bool {
        self.a == v || self.b == v
    }

    pub fn other(&self, v: &str) -> Option<&str> {
        if self.a == v {
            Some(&self.b)
        } else if self.b == v {
            Some(&self.a)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}--{}", self.a, self.b)
    }
}

/// An undirected simple acyclic graph.
///
/// Construction validates simplicity and acyclicity and computes the
/// component index (components are numbered by their lexicographically
/// least vertex). Values are immutable afterwards.
#[derive(Debug, Clone)]
pub struct Forest {
    vertices: BTreeSet<String>,
    edges: Vec<Edge>,
    adjacency: BTreeMap<String, Vec<String>>,
    component: BTreeMap<String, usize>,
    component_count: usize,
}

impl PartialEq for Forest {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.canonical_edges() == other.canonical_edges()
    }
}

impl Eq for Forest {}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    /// Returns false when both ends are already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

impl Forest {
    pub fn new(
        vertices: impl IntoIterator<Item = String>,
        edge_pairs: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Forest, GraphError> {
        let mut vertex_set: BTreeSet<String> = vertices.into_iter().collect();
        let pairs: Vec<(String, String)> = edge_pairs.into_iter().collect();
        for (u, v) in &pairs {
            vertex_set.insert(u.clone());
            vertex_set.insert(v.clone());
        }

        let index: BTreeMap<&str, usize> = vertex_set
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut dsu = Dsu::new(vertex_set.len());
        let mut seen: BTreeSet<Edge> = BTreeSet::new();
        let mut edges = Vec::with_capacity(pairs.len());
        for (u, v) in &pairs {
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u.clone() });
            }
            let edge = Edge::new(u.as_str(), v.as_str());
            if !seen.insert(edge.clone()) {
                return Err(GraphError::DuplicateEdge { edge });
            }
            if !dsu.union(index[u.as_str()], index[v.as_str()]) {
                return Err(GraphError::CycleDetected { edge });
            }
            edges.push(edge);
        }

        let mut adjacency: BTreeMap<String, Vec<String>> = vertex_set
            .iter()
            .map(|v| (v.clone(), Vec::new()))
            .collect();
        for e in &edges {
            let (a, b) = e.endpoints();
            adjacency.get_mut(a).unwrap().push(b.to_string());
            adjacency.get_mut(b).unwrap().push(a.to_string());
        }
        for neighbors in adjacency.values_mut() {
            neighbors.sort();
        }

        // Components numbered by lexicographically least member; vertex_set
        // iterates in order, so the first visit per class fixes the number.
        let mut component = BTreeMap::new();
        let mut repr_to_id: BTreeMap<usize, usize> = BTreeMap::new();
        for v in &vertex_set {
            let repr = dsu.find(index[v.as_str()]);
            let next = repr_to_id.len();
            let id = *repr_to_id.entry(repr).or_insert(next);
            component.insert(v.clone(), id);
        }

        Ok(Forest {
            component_count: repr_to_id.len(),
            vertices: vertex_set,
            edges,
            adjacency,
            component,
        })
    }

    pub fn from_edges<'a>(
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Forest, GraphError> {
        Forest::new(
            std::iter::empty(),
            pairs
                .into_iter()
                .map(|(u, v)| (u.to_string(), v.to_string())),
        )
    }

    pub fn vertices(&self) -> impl Iterator<Item = &str> {
        self.vertices.iter().map(String::as_str)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains_vertex(&self, v: &str) -> bool {
        self.vertices.contains(v)
    }

    /// Edges in input order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edges sorted lexicographically by endpoints.
    pub fn canonical_edges(&self) -> Vec<Edge> {
        let mut es = self.edges.clone();
        es.sort();
        es
    }

    pub fn has_edge(&self, e: &Edge) -> bool {
        let (a, b) = e.endpoints();
        self.adjacency
            .get(a)
            .map(|ns| ns.iter().any(|n| n == b))
            .unwrap_or(false)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn component_of(&self, v: &str) -> Option<usize> {
        self.component.get(v).copied()
    }

    pub fn component_vertices(&self, c: usize) -> Vec<&str> {
        self.vertices
            .iter()
            .filter(|v| self.component[v.as_str()] == c)
            .map(String::as_str)
            .collect()
    }

    /// Neighbors in lexicographic order.
    pub fn neighbors(&self, v: &str) -> &[String] {
        self.adjacency.get(v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: &str) -> usize {
        self.neighbors(v).len()
    }

    pub fn is_leaf(&self, v: &str) -> bool {
        self.degree(v) == 1
    }

    pub fn analyze(&self) -> HypothesisReport {
        let degree2_vertices: Vec<String> = self
            .vertices
            .iter()
            .filter(|v| self.degree(v) == 2)
            .cloned()
            .collect();
        let isolated_vertices: Vec<String> = self
            .vertices
            .iter()
            .filter(|v| self.degree(v) == 0)
            .cloned()
            .collect();

        let mut comp_vertices = vec![0usize; self.component_count];
        let mut comp_edges = vec![0usize; self.component_count];
        for v in &self.vertices {
            comp_vertices[self.component[v.as_str()]] += 1;
        }
        for e in &self.edges {
            comp_edges[self.component[e.endpoints().0]] += 1;
        }
        let k2_components: Vec<usize> = (0..self.component_count)
            .filter(|&c| comp_vertices[c] == 2 && comp_edges[c] == 1)
            .collect();

        HypothesisReport {
            degree2_vertices,
            k2_components,
            isolated_vertices,
            component_count: self.component_count,
            edge_count: self.edges.len(),
        }
    }
}

/// Structural facts deciding whether a forest is in scope for the labeler:
/// at most one degree-2 vertex, no K2 components, no isolated vertices, and
/// at least one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub degree2_vertices: Vec<String>,
    pub k2_components: Vec<usize>,
    pub isolated_vertices: Vec<String>,
    pub component_count: usize,
    pub edge_count: usize,
}

impl HypothesisReport {
    pub fn eligible(&self) -> bool {
        self.violation().is_none()
    }

    /// The first failing hypothesis, if any.
    pub fn violation(&self) -> Option<IneligibleReason> {
        if let Some(&c) = self.k2_components.first() {
            return Some(IneligibleReason::K2Component(c));
        }
        if self.degree2_vertices.len() > 1 {
            return Some(IneligibleReason::TooManyDegree2(
                self.degree2_vertices.len(),
            ));
        }
        if let Some(v) = self.isolated_vertices.first() {
            return Some(IneligibleReason::IsolatedVertex(v.clone()));
        }
        if self.edge_count == 0 {
            return Some(IneligibleReason::NoEdges);
        }
        None
    }
}
