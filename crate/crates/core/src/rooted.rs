//! Rooted forests: per-component roots, parent/child orientation, and the
//! root-identification transform that merges a forest into a single tree
//! (plus the inverse label transfer).

use std::collections::{BTreeMap, VecDeque};

use crate::graph::{Edge, Forest, GraphError};
use crate::labeling::EdgeLabeling;

/// A forest plus one root per component and the parent/child orientation
/// obtained by breadth-first traversal from each root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedForest {
    base: Forest,
    roots: Vec<String>,
    parent: BTreeMap<String, String>,
    children: BTreeMap<String, Vec<String>>,
    level: BTreeMap<String, u64>,
}

impl RootedForest {
    pub fn base(&self) -> &Forest {
        &self.base
    }

    /// Roots indexed by component number.
    pub fn roots(&self) -> &[String] {
        &self.roots
    }

    pub fn root_of(&self, component: usize) -> &str {
        &self.roots[component]
    }

    pub fn is_root(&self, v: &str) -> bool {
        self.roots.iter().any(|r| r == v)
    }

    pub fn parent(&self, v: &str) -> Option<&str> {
        self.parent.get(v).map(String::as_str)
    }

    /// Children in lexicographic order.
    pub fn children(&self, v: &str) -> &[String] {
        self.children.get(v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn level(&self, v: &str) -> Option<u64> {
        self.level.get(v).copied()
    }

    /// Number of outgoing (parent-to-child) edges at `v`.
    pub fn outgoing_count(&self, v: &str) -> usize {
        self.children(v).len()
    }

    /// The edge from the parent, for non-root vertices.
    pub fn incoming_edge(&self, v: &str) -> Option<Edge> {
        self.parent(v).map(|p| Edge::new(p, v))
    }

    /// Vertices with at least one outgoing edge, in lexicographic order.
    pub fn vertices_with_children(&self) -> Vec<&str> {
        self.children
            .iter()
            .filter(|(_, cs)| !cs.is_empty())
            .map(|(v, _)| v.as_str())
            .collect()
    }
}

/// Orients a forest from the given roots; `roots[i]` must lie in component
/// `i`. Parent and level maps come from breadth-first traversal with
/// children visited in lexicographic order.
pub fn root_components(f: &Forest, roots: &[String]) -> Result<RootedForest, GraphError> {
    if roots.len() != f.component_count() {
        return Err(GraphError::RootNotInComponent {
            root: roots.last().cloned().unwrap_or_default(),
            component: f.component_count().saturating_sub(1),
        });
    }
    for (c, r) in roots.iter().enumerate() {
        if !f.contains_vertex(r) {
            return Err(GraphError::UnknownVertex { vertex: r.clone() });
        }
        if f.component_of(r) != Some(c) {
            return Err(GraphError::RootNotInComponent {
                root: r.clone(),
                component: c,
            });
        }
    }

    let mut parent = BTreeMap::new();
    let mut children: BTreeMap<String, Vec<String>> =
        f.vertices().map(|v| (v.to_string(), Vec::new())).collect();
    let mut level = BTreeMap::new();

    for root in roots {
        level.insert(root.clone(), 0u64);
        let mut queue = VecDeque::from([root.clone()]);
        while let Some(v) = queue.pop_front() {
            let v_level = level[&v];
            for n in f.neighbors(&v) {
                if level.contains_key(n) {
                    continue;
                }
                parent.insert(n.clone(), v.clone());
                children.get_mut(&v).unwrap().push(n.clone());
                level.insert(n.clone(), v_level + 1);
                queue.push_back(n.clone());
            }
        }
    }
    debug_assert_eq!(level.len(), f.vertex_count());

    Ok(RootedForest {
        base: f.clone(),
        roots: roots.to_vec(),
        parent,
        children,
        level,
    })
}

/// The single tree obtained by merging all component roots into one fresh
/// vertex, together with the edge correspondence back to the forest.
#[derive(Debug, Clone)]
pub struct IdentifiedTree {
    tree: RootedForest,
    root: String,
    /// tree edge -> forest edge
    correspondence: BTreeMap<Edge, Edge>,
    original: Forest,
}

impl IdentifiedTree {
    pub fn tree(&self) -> &RootedForest {
        &self.tree
    }

    /// The synthetic merged root.
    pub fn root(&self) -> &str {
        &self.root
    }

    pub fn original(&self) -> &Forest {
        &self.original
    }

    pub fn to_original(&self, tree_edge: &Edge) -> Option<&Edge> {
        self.correspondence.get(tree_edge)
    }

    pub fn correspondence(&self) -> &BTreeMap<Edge, Edge> {
        &self.correspondence
    }

    /// The tree edges at the merged root whose originals touch `v`.
    pub fn root_edges_from(&self, v: &str) -> Vec<Edge> {
        self.correspondence
            .iter()
            .filter(|(t, o)| t.touches(&self.root) && o.touches(v))
            .map(|(t, _)| t.clone())
            .collect()
    }
}

fn fresh_vertex_id(f: &Forest) -> String {
    if !f.contains_vertex("w") {
        return "w".to_string();
    }
    (0u64..)
        .map(|i| format!("w{}", i))
        .find(|c| !f.contains_vertex(c))
        .unwrap()
}

/// Merges all roots of a multi-component rooted forest into a single fresh
/// vertex `w`, yielding a tree with the same edge count rooted at `w`.
pub fn identify_roots(rf: &RootedForest) -> Result<IdentifiedTree, GraphError> {
    if rf.base().component_count() < 2 {
        return Err(GraphError::SingleComponent);
    }
    let merged = fresh_vertex_id(rf.base());
    let mut correspondence = BTreeMap::new();
    let mut new_edges = Vec::with_capacity(rf.base().edge_count());
    for e in rf.base().edges() {
        let (u, v) = e.endpoints();
        let nu = if rf.is_root(u) { merged.as_str() } else { u };
        let nv = if rf.is_root(v) { merged.as_str() } else { v };
        let te = Edge::new(nu, nv);
        correspondence.insert(te, e.clone());
        new_edges.push((nu.to_string(), nv.to_string()));
    }
    let tree_forest = Forest::new(std::iter::empty(), new_edges)?;
    let tree = root_components(&tree_forest, std::slice::from_ref(&merged))?;
    Ok(IdentifiedTree {
        tree,
        root: merged,
        correspondence,
        original: rf.base().clone(),
    })
}

/// Transfers a labeling of the identified tree back to the original forest:
/// every forest edge receives the label of its image.
pub fn split_labeling(
    lab: &EdgeLabeling,
    ident: &IdentifiedTree,
) -> Result<EdgeLabeling, GraphError> {
    let mut labels = BTreeMap::new();
    for (tree_edge, forest_edge) in ident.correspondence() {
        let value = lab
            .labels()
            .get(tree_edge)
            .copied()
            .ok_or_else(|| GraphError::CorrespondenceMismatch {
                edge: tree_edge.clone(),
            })?;
        labels.insert(forest_edge.clone(), value);
    }
    for e in lab.forest().edges() {
        if !ident.correspondence().contains_key(e) {
            return Err(GraphError::CorrespondenceMismatch { edge: e.clone() });
        }
    }
    EdgeLabeling::new(ident.original().clone(), labels)
}
