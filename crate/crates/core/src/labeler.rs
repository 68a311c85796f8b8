//! Antimagic labeling constructions.
//!
//! Single trees with an even edge count get the direct zero-sum labeling:
//! root at the degree-2 vertex when there is one, partition [1,m] over the
//! outgoing-edge counts, and assign each class to one vertex's outgoing
//! edges. Multi-component forests are split into five cases on (edge-count
//! parity, component count, degree-2 vertex): roots are chosen per case,
//! the roots are identified into a single tree where needed, and reserved
//! B-/C-sets pin down the root sums. Odd single trees use the same
//! machinery plus a bounded, verifier-checked repair search.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::graph::{Edge, Forest, GraphError, HypothesisReport, IneligibleReason};
use crate::labeling::EdgeLabeling;
use crate::partition::{zero_sum_partition, Constraint, PartitionError};
use crate::rooted::{
    identify_roots, root_components, RootedForest, split_labeling,
};
use crate::verify::verify_antimagic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("ineligible forest: {0}")]
    Ineligible(#[from] IneligibleReason),
    #[error("{0}")]
    Precondition(String),
    #[error("class of {class_len} labels cannot cover {edges} outgoing edges")]
    SizeMismatch { class_len: usize, edges: usize },
    #[error("pinned label {label} is not available in the class")]
    ConflictingReservation { label: u64 },
    #[error("bounded repair search exhausted without an antimagic labeling")]
    RepairExhausted,
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which construction applies, keyed on component count, edge-count
/// parity, and the location of the degree-2 vertex.
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// Single tree, even edge count.
    TreeEven,
    /// Single tree, odd edge count (verified repair search).
    TreeOdd,
    /// Forest, odd edge count, no degree-2 vertex.
    Case1_1,
    /// Forest, odd edge count, one degree-2 vertex.
    Case1_2,
    /// Forest, even edge count, no degree-2 vertex.
    Case2_1,
    /// Two components, even edge count, one degree-2 vertex.
    Case2_2_1,
    /// Three or more components, even edge count, one degree-2 vertex.
    Case2_2_2,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CaseTag::TreeEven => "TreeEven",
            CaseTag::TreeOdd => "TreeOdd",
            CaseTag::Case1_1 => "Case1_1",
            CaseTag::Case1_2 => "Case1_2",
            CaseTag::Case2_1 => "Case2_1",
            CaseTag::Case2_2_1 => "Case2_2_1",
            CaseTag::Case2_2_2 => "Case2_2_2",
        };
        write!(f, "{}", name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReservationKind {
    /// The vertex's outgoing edges receive exactly one B-set.
    ExactBPair,
    /// The vertex's class contains a C-set.
    CSet,
    /// The vertex's class contains a reserved B-set.
    BPair,
    /// The vertex's class carries the largest label.
    CarrierHost,
}

impl fmt::Display for ReservationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ReservationKind::ExactBPair => "exact-b-pair",
            ReservationKind::CSet => "c-set",
            ReservationKind::BPair => "b-pair",
            ReservationKind::CarrierHost => "carrier",
        };
        write!(f, "{}", name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reservation {
    pub vertex: String,
    pub kind: ReservationKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecialEdge {
    /// The edge carrying the largest label m.
    MaxLabel(Edge),
    /// The two edges at the degree-2 root whose labels sum to m+1.
    BPairEdges(Edge, Edge),
}

/// The resolved construction: case tag, per-component roots, working
/// modulus, reserved set placements, and named special edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelingPlan {
    pub case: CaseTag,
    pub roots: Vec<String>,
    pub modulus: u64,
    pub reservations: Vec<Reservation>,
    pub special_edges: Vec<SpecialEdge>,
}

fn eligibility(f: &Forest) -> Result<HypothesisReport, LabelError> {
    let rep = f.analyze();
    match rep.violation() {
        Some(reason) => Err(LabelError::Ineligible(reason)),
        None => Ok(rep),
    }
}

fn case_of(rep: &HypothesisReport) -> CaseTag {
    let has_d2 = !rep.degree2_vertices.is_empty();
    if rep.component_count == 1 {
        if rep.edge_count.is_multiple_of(2) {
            CaseTag::TreeEven
        } else {
            CaseTag::TreeOdd
        }
    } else if rep.edge_count % 2 == 1 {
        if has_d2 {
            CaseTag::Case1_2
        } else {
            CaseTag::Case1_1
        }
    } else if !has_d2 {
        CaseTag::Case2_1
    } else if rep.component_count == 2 {
        CaseTag::Case2_2_1
    } else {
        CaseTag::Case2_2_2
    }
}

/// Lexicographically least leaf per component.
pub fn leaf_roots(f: &Forest) -> Result<Vec<String>, LabelError> {
    let mut roots: Vec<Option<String>> = vec![None; f.component_count()];
    for v in f.vertices() {
        if f.is_leaf(v) {
            let c = f.component_of(v).unwrap();
            if roots[c].is_none() {
                roots[c] = Some(v.to_string());
            }
        }
    }
    roots
        .into_iter()
        .enumerate()
        .map(|(c, r)| {
            r.ok_or_else(|| {
                let lone = f.component_vertices(c)[0].to_string();
                LabelError::Ineligible(IneligibleReason::IsolatedVertex(lone))
            })
        })
        .collect()
}

/// Root for the even-tree construction: the degree-2 vertex when present,
/// otherwise the lexicographically least internal vertex.
fn even_tree_root(f: &Forest, rep: &HypothesisReport) -> String {
    rep.degree2_vertices.first().cloned().unwrap_or_else(|| {
        f.vertices()
            .find(|v| f.degree(v) >= 2)
            .expect("a tree with edges has an internal vertex")
            .to_string()
    })
}

/// Starting root preference for odd trees: the degree-2 vertex when
/// present, otherwise an internal vertex of maximum degree.
fn odd_tree_root(f: &Forest, rep: &HypothesisReport) -> String {
    rep.degree2_vertices.first().cloned().unwrap_or_else(|| {
        f.vertices()
            .filter(|v| f.degree(v) >= 2)
            .max_by(|a, b| f.degree(a).cmp(&f.degree(b)).then_with(|| b.cmp(a)))
            .expect("a tree with edges has an internal vertex")
            .to_string()
    })
}

/// Vertices owning outgoing edges, largest class first, ids breaking ties.
/// Class i of the partition request belongs to the i-th vertex here.
fn partition_vertices(rf: &RootedForest, skip: Option<&str>) -> Vec<String> {
    let mut vs: Vec<String> = rf
        .vertices_with_children()
        .into_iter()
        .filter(|v| Some(*v) != skip)
        .map(str::to_string)
        .collect();
    vs.sort_by(|a, b| {
        rf.outgoing_count(b)
            .cmp(&rf.outgoing_count(a))
            .then_with(|| a.cmp(b))
    });
    vs
}

/// Assigns a class to the outgoing edges of `v`: ascending values onto
/// children in lexicographic order, except where `pins` fixes a value onto
/// a specific edge.
pub fn assign_class_to_edges(
    rf: &RootedForest,
    v: &str,
    class: &[u64],
    pins: &[(Edge, u64)],
) -> Result<Vec<(Edge, u64)>, LabelError> {
    let mut free_edges: Vec<Edge> = rf
        .children(v)
        .iter()
        .map(|c| Edge::new(v, c.as_str()))
        .collect();
    if class.len() != free_edges.len() {
        return Err(LabelError::SizeMismatch {
            class_len: class.len(),
            edges: free_edges.len(),
        });
    }
    let mut remaining: Vec<u64> = class.to_vec();
    remaining.sort_unstable();
    let mut out = Vec::with_capacity(class.len());
    for (edge, value) in pins {
        let ei = free_edges
            .iter()
            .position(|e| e == edge)
            .ok_or(LabelError::ConflictingReservation { label: *value })?;
        let vi = remaining
            .iter()
            .position(|x| x == value)
            .ok_or(LabelError::ConflictingReservation { label: *value })?;
        free_edges.remove(ei);
        remaining.remove(vi);
        out.push((edge.clone(), *value));
    }
    out.extend(free_edges.into_iter().zip(remaining));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VertexConstraint {
    ExactBPair,
    NeedsCSet,
    NeedsBPair,
    Carrier,
}

/// One zero-sum assignment pass over a rooted forest.
struct Assembly<'a> {
    rf: &'a RootedForest,
    /// Range [1,k] to partition; `external` labels sit above it.
    k: u64,
    /// Vertex excluded from the partition (its single outgoing edge is
    /// labeled via `external`).
    skip: Option<String>,
    constraints: Vec<(String, VertexConstraint)>,
    /// Pin a known value onto an edge inside this vertex's class.
    pin_element: Option<(String, Edge, u64)>,
    /// Pin the class's reserved B-pair onto these two edges.
    pin_pair: Option<(String, Edge, Edge)>,
    /// Labels fixed outside any class.
    external: Vec<(Edge, u64)>,
}

fn assemble(a: &Assembly) -> Result<EdgeLabeling, LabelError> {
    let order = partition_vertices(a.rf, a.skip.as_deref());
    let sizes: Vec<u64> = order
        .iter()
        .map(|v| a.rf.outgoing_count(v) as u64)
        .collect();
    debug_assert!(sizes.iter().all(|&n| n >= 2), "classes need size >= 2");

    let class_of = |v: &str| {
        order
            .iter()
            .position(|x| x == v)
            .expect("constrained vertex owns a class")
    };
    let constraints: Vec<Constraint> = a
        .constraints
        .iter()
        .map(|(v, c)| {
            let class = class_of(v);
            match c {
                VertexConstraint::ExactBPair => Constraint::ExactBSet { class },
                VertexConstraint::NeedsCSet => Constraint::ContainsCSet { class },
                VertexConstraint::NeedsBPair => Constraint::ContainsBSet { class },
                VertexConstraint::Carrier => Constraint::CarrierOfK { class },
            }
        })
        .collect();
    let part = zero_sum_partition(a.k, &sizes, &constraints)?;

    let mut labels: BTreeMap<Edge, u64> = a.external.iter().cloned().collect();
    for (i, v) in order.iter().enumerate() {
        let elems = part.classes[i].elements();
        let mut pins: Vec<(Edge, u64)> = Vec::new();
        if let Some((pv, edge, value)) = &a.pin_element {
            if pv == v {
                pins.push((edge.clone(), *value));
            }
        }
        if let Some((pv, e1, e2)) = &a.pin_pair {
            if pv == v {
                let (lo, hi) = part.classes[i]
                    .reserved_pair
                    .expect("a B-pair was reserved for the pinned class");
                let c1 = e1.other(v).expect("pinned edge leaves the vertex");
                let c2 = e2.other(v).expect("pinned edge leaves the vertex");
                let (lo_edge, hi_edge) = if c1 <= c2 { (e1, e2) } else { (e2, e1) };
                pins.push((lo_edge.clone(), lo));
                pins.push((hi_edge.clone(), hi));
            }
        }
        for (edge, value) in assign_class_to_edges(a.rf, v, &elems, &pins)? {
            let prev = labels.insert(edge, value);
            debug_assert!(prev.is_none(), "edge labeled twice");
        }
    }
    EdgeLabeling::new(a.rf.base().clone(), labels).map_err(LabelError::from)
}

fn plain_assembly(rf: &RootedForest, k: u64) -> Assembly<'_> {
    Assembly {
        rf,
        k,
        skip: None,
        constraints: Vec::new(),
        pin_element: None,
        pin_pair: None,
        external: Vec::new(),
    }
}

/// Carrier host for odd-modulus constructions: a vertex with an odd number
/// of outgoing edges, preferring non-root hosts.
fn carrier_host(rf: &RootedForest, root: &str) -> String {
    let order = partition_vertices(rf, None);
    order
        .iter()
        .find(|v| v.as_str() != root && rf.outgoing_count(v) % 2 == 1)
        .or_else(|| order.iter().find(|v| rf.outgoing_count(v) % 2 == 1))
        .expect("odd edge totals force an odd class")
        .clone()
}

fn edge_with_label(lab: &EdgeLabeling, value: u64) -> Edge {
    lab.labels()
        .iter()
        .find(|(_, &l)| l == value)
        .map(|(e, _)| e.clone())
        .expect("label present")
}

/// Zero-sum antimagic labeling of a single tree with an even number of
/// edges and at most one degree-2 vertex.
pub fn label_tree_even(f: &Forest) -> Result<EdgeLabeling, LabelError> {
    let rep = eligibility(f)?;
    if rep.component_count != 1 {
        return Err(LabelError::Precondition(format!(
            "expected a single tree, found {} components",
            rep.component_count
        )));
    }
    if rep.edge_count % 2 != 0 {
        return Err(LabelError::Precondition(format!(
            "expected an even edge count, found {}",
            rep.edge_count
        )));
    }
    let root = even_tree_root(f, &rep);
    let rf = root_components(f, &[root])?;
    let lab = assemble(&plain_assembly(&rf, rep.edge_count as u64))?;
    debug_assert!(verify_antimagic(&lab).unwrap_or(false));
    Ok(lab)
}

/// Case analysis for a forest, without labeling it. For odd single trees
/// the plan records the starting point of the repair search.
pub fn plan(f: &Forest) -> Result<LabelingPlan, LabelError> {
    let rep = eligibility(f)?;
    let case = case_of(&rep);
    let m = rep.edge_count as u64;
    match case {
        CaseTag::TreeEven => Ok(LabelingPlan {
            case,
            roots: vec![even_tree_root(f, &rep)],
            modulus: m + 1,
            reservations: Vec::new(),
            special_edges: Vec::new(),
        }),
        CaseTag::TreeOdd => Ok(LabelingPlan {
            case,
            roots: vec![odd_tree_root(f, &rep)],
            modulus: m,
            reservations: Vec::new(),
            special_edges: Vec::new(),
        }),
        CaseTag::Case1_1 => {
            let roots = leaf_roots(f)?;
            let rf = root_components(f, &roots)?;
            let ident = identify_roots(&rf)?;
            let host = carrier_host(ident.tree(), ident.root());
            Ok(LabelingPlan {
                case,
                roots,
                modulus: m,
                reservations: vec![Reservation {
                    vertex: host,
                    kind: ReservationKind::CarrierHost,
                }],
                special_edges: Vec::new(),
            })
        }
        CaseTag::Case1_2 => {
            let roots = leaf_roots(f)?;
            let rf = root_components(f, &roots)?;
            let vp = rep.degree2_vertices[0].clone();
            let vpp = rf.children(&vp)[0].clone();
            Ok(LabelingPlan {
                case,
                roots,
                modulus: m,
                reservations: Vec::new(),
                special_edges: vec![SpecialEdge::MaxLabel(Edge::new(vp, vpp))],
            })
        }
        CaseTag::Case2_1 => Ok(LabelingPlan {
            case,
            roots: leaf_roots(f)?,
            modulus: m + 1,
            reservations: Vec::new(),
            special_edges: Vec::new(),
        }),
        CaseTag::Case2_2_1 => {
            let (roots, u, w2) = degree2_pair_roots(f, &rep);
            let mut reservations = vec![Reservation {
                vertex: u,
                kind: ReservationKind::ExactBPair,
            }];
            if f.degree(&w2) == 3 {
                reservations.push(Reservation {
                    vertex: w2,
                    kind: ReservationKind::CSet,
                });
            }
            Ok(LabelingPlan {
                case,
                roots,
                modulus: m + 1,
                reservations,
                special_edges: Vec::new(),
            })
        }
        CaseTag::Case2_2_2 => {
            let u = rep.degree2_vertices[0].clone();
            let mut roots = leaf_roots(f)?;
            roots[f.component_of(&u).unwrap()] = u.clone();
            let rf = root_components(f, &roots)?;
            let ident = identify_roots(&rf)?;
            let children = rf.children(&u);
            Ok(LabelingPlan {
                case,
                roots,
                modulus: m + 1,
                reservations: vec![Reservation {
                    vertex: ident.root().to_string(),
                    kind: ReservationKind::BPair,
                }],
                special_edges: vec![SpecialEdge::BPairEdges(
                    Edge::new(u.as_str(), children[0].as_str()),
                    Edge::new(u.as_str(), children[1].as_str()),
                )],
            })
        }
    }
}

/// Roots for the two-component degree-2 case: the degree-2 vertex itself,
/// and a branching vertex (degree >= 3) in the other component.
fn degree2_pair_roots(f: &Forest, rep: &HypothesisReport) -> (Vec<String>, String, String) {
    let u = rep.degree2_vertices[0].clone();
    let uc = f.component_of(&u).unwrap();
    let mut roots = Vec::with_capacity(2);
    let mut w2 = String::new();
    for c in 0..f.component_count() {
        if c == uc {
            roots.push(u.clone());
        } else {
            let r = f
                .component_vertices(c)
                .into_iter()
                .find(|v| f.degree(v) >= 3)
                .expect("a degree-2-free component with 3+ edges has a branching vertex")
                .to_string();
            w2 = r.clone();
            roots.push(r);
        }
    }
    (roots, u, w2)
}

/// Constructs an antimagic labeling for an eligible forest.
pub fn label_forest(f: &Forest) -> Result<EdgeLabeling, LabelError> {
    label_forest_with_plan(f).map(|(lab, _)| lab)
}

/// As [`label_forest`], also returning the realized plan (actual roots,
/// reservations, and special edges).
pub fn label_forest_with_plan(f: &Forest) -> Result<(EdgeLabeling, LabelingPlan), LabelError> {
    let rep = eligibility(f)?;
    let case = case_of(&rep);
    let (lab, plan) = match case {
        CaseTag::TreeEven => drive_tree_even(f, &rep)?,
        CaseTag::TreeOdd => drive_tree_odd(f, &rep)?,
        CaseTag::Case1_1 => drive_case1_1(f, &rep)?,
        CaseTag::Case1_2 => drive_case1_2(f, &rep)?,
        CaseTag::Case2_1 => drive_case2_1(f, &rep)?,
        CaseTag::Case2_2_1 => drive_case2_2_1(f, &rep)?,
        CaseTag::Case2_2_2 => drive_case2_2_2(f, &rep)?,
    };
    assert!(
        verify_antimagic(&lab).expect("constructed labelings are bijections"),
        "internal error: {} construction failed verification",
        plan.case
    );
    Ok((lab, plan))
}

type Driven = (EdgeLabeling, LabelingPlan);

fn drive_tree_even(f: &Forest, rep: &HypothesisReport) -> Result<Driven, LabelError> {
    let m = rep.edge_count as u64;
    let root = even_tree_root(f, rep);
    let rf = root_components(f, std::slice::from_ref(&root))?;
    let lab = assemble(&plain_assembly(&rf, m))?;
    Ok((
        lab,
        LabelingPlan {
            case: CaseTag::TreeEven,
            roots: vec![root],
            modulus: m + 1,
            reservations: Vec::new(),
            special_edges: Vec::new(),
        },
    ))
}

fn drive_case1_1(f: &Forest, rep: &HypothesisReport) -> Result<Driven, LabelError> {
    let m = rep.edge_count as u64;
    let roots = leaf_roots(f)?;
    let rf = root_components(f, &roots)?;
    let ident = identify_roots(&rf)?;
    let host = carrier_host(ident.tree(), ident.root());
    let mut assembly = plain_assembly(ident.tree(), m);
    assembly.constraints = vec![(host.clone(), VertexConstraint::Carrier)];
    let tree_lab = assemble(&assembly)?;
    let lab = split_labeling(&tree_lab, &ident)?;
    let max_edge = edge_with_label(&lab, m);
    Ok((
        lab,
        LabelingPlan {
            case: CaseTag::Case1_1,
            roots,
            modulus: m,
            reservations: vec![Reservation {
                vertex: host,
                kind: ReservationKind::CarrierHost,
            }],
            special_edges: vec![SpecialEdge::MaxLabel(max_edge)],
        },
    ))
}

fn drive_case1_2(f: &Forest, rep: &HypothesisReport) -> Result<Driven, LabelError> {
    let m = rep.edge_count as u64;
    let roots = leaf_roots(f)?;
    let rf = root_components(f, &roots)?;
    let vp = rep.degree2_vertices[0].clone();
    let vpp = rf.children(&vp)[0].clone();
    let ident = identify_roots(&rf)?;
    let pin_edge = Edge::new(vp.as_str(), vpp.as_str());
    let mut assembly = plain_assembly(ident.tree(), m - 1);
    assembly.skip = Some(vp);
    assembly.external = vec![(pin_edge.clone(), m)];
    let tree_lab = assemble(&assembly)?;
    let lab = split_labeling(&tree_lab, &ident)?;
    Ok((
        lab,
        LabelingPlan {
            case: CaseTag::Case1_2,
            roots,
            modulus: m,
            reservations: Vec::new(),
            special_edges: vec![SpecialEdge::MaxLabel(pin_edge)],
        },
    ))
}

fn drive_case2_1(f: &Forest, rep: &HypothesisReport) -> Result<Driven, LabelError> {
    let m = rep.edge_count as u64;
    let roots = leaf_roots(f)?;
    let rf = root_components(f, &roots)?;
    let ident = identify_roots(&rf)?;
    let tree_lab = assemble(&plain_assembly(ident.tree(), m))?;
    let lab = split_labeling(&tree_lab, &ident)?;
    Ok((
        lab,
        LabelingPlan {
            case: CaseTag::Case2_1,
            roots,
            modulus: m + 1,
            reservations: Vec::new(),
            special_edges: Vec::new(),
        },
    ))
}

fn drive_case2_2_1(f: &Forest, rep: &HypothesisReport) -> Result<Driven, LabelError> {
    let m = rep.edge_count as u64;
    let (roots, u, w2) = degree2_pair_roots(f, rep);
    let rf = root_components(f, &roots)?;
    let mut assembly = plain_assembly(&rf, m);
    assembly.constraints = vec![(u.clone(), VertexConstraint::ExactBPair)];
    let mut reservations = vec![Reservation {
        vertex: u,
        kind: ReservationKind::ExactBPair,
    }];
    // A 3-child root composed of one 3-set could land on the minimal sum
    // m+1, clashing with the degree-2 root; a C-set pushes it to 2(m+1).
    if rf.outgoing_count(&w2) == 3 {
        assembly
            .constraints
            .push((w2.clone(), VertexConstraint::NeedsCSet));
        reservations.push(Reservation {
            vertex: w2,
            kind: ReservationKind::CSet,
        });
    }
    let lab = assemble(&assembly)?;
    Ok((
        lab,
        LabelingPlan {
            case: CaseTag::Case2_2_1,
            roots,
            modulus: m + 1,
            reservations,
            special_edges: Vec::new(),
        },
    ))
}

fn drive_case2_2_2(f: &Forest, rep: &HypothesisReport) -> Result<Driven, LabelError> {
    let m = rep.edge_count as u64;
    let u = rep.degree2_vertices[0].clone();
    let mut roots = leaf_roots(f)?;
    roots[f.component_of(&u).unwrap()] = u.clone();
    let rf = root_components(f, &roots)?;
    let ident = identify_roots(&rf)?;
    let w = ident.root().to_string();
    let u_children = rf.children(&u).to_vec();
    debug_assert_eq!(u_children.len(), 2);
    let tree_e1 = Edge::new(w.as_str(), u_children[0].as_str());
    let tree_e2 = Edge::new(w.as_str(), u_children[1].as_str());
    let mut assembly = plain_assembly(ident.tree(), m);
    assembly.constraints = vec![(w.clone(), VertexConstraint::NeedsBPair)];
    assembly.pin_pair = Some((w.clone(), tree_e1, tree_e2));
    let tree_lab = assemble(&assembly)?;
    let lab = split_labeling(&tree_lab, &ident)?;
    Ok((
        lab,
        LabelingPlan {
            case: CaseTag::Case2_2_2,
            roots,
            modulus: m + 1,
            reservations: vec![Reservation {
                vertex: w,
                kind: ReservationKind::BPair,
            }],
            special_edges: vec![SpecialEdge::BPairEdges(
                Edge::new(u.as_str(), u_children[0].as_str()),
                Edge::new(u.as_str(), u_children[1].as_str()),
            )],
        },
    ))
}

// ---------------------------------------------------------------------------
// Odd single trees: bounded, verifier-checked search.
//
// With modulus m the root and the head of the m-labeled edge share residue
// 0; every attempt places those two sums apart (pin m onto a leaf or an
// internal child, reserve C-sets to lift a class sum) and the verifier has
// the last word.

#[derive(Debug, Clone)]
enum OddMode {
    /// Partition [1,m]; the carrier class at `host` holds m, optionally
    /// pinned onto a chosen child edge.
    Carrier {
        host: String,
        pin_child: Option<String>,
    },
    /// Degree-2 vertex is not the root: pin m onto its single outgoing
    /// edge and partition [1,m-1] over the remaining vertices.
    External { vp: String, vpp: String },
}

#[derive(Debug, Clone)]
struct OddAttempt {
    mode: OddMode,
    boosts: Vec<String>,
}

const ODD_ATTEMPT_CAP: usize = 20_000;

fn drive_tree_odd(f: &Forest, rep: &HypothesisReport) -> Result<Driven, LabelError> {
    let m = rep.edge_count as u64;
    let d2 = rep.degree2_vertices.first().cloned();

    let mut attempts = 0usize;
    for root in odd_root_order(f, rep) {
        let rf = root_components(f, std::slice::from_ref(&root))?;
        for attempt in odd_attempts(&rf, &root, d2.as_deref()) {
            attempts += 1;
            if attempts > ODD_ATTEMPT_CAP {
                return Err(LabelError::RepairExhausted);
            }
            let mut assembly = plain_assembly(&rf, m);
            for v in &attempt.boosts {
                assembly
                    .constraints
                    .push((v.clone(), VertexConstraint::NeedsCSet));
            }
            let host_for_plan;
            match &attempt.mode {
                OddMode::Carrier { host, pin_child } => {
                    assembly
                        .constraints
                        .push((host.clone(), VertexConstraint::Carrier));
                    if let Some(child) = pin_child {
                        assembly.pin_element =
                            Some((host.clone(), Edge::new(host.as_str(), child.as_str()), m));
                    }
                    host_for_plan = Some(host.clone());
                }
                OddMode::External { vp, vpp } => {
                    assembly.k = m - 1;
                    assembly.skip = Some(vp.clone());
                    assembly.external = vec![(Edge::new(vp.as_str(), vpp.as_str()), m)];
                    host_for_plan = None;
                }
            }
            let lab = match assemble(&assembly) {
                Ok(lab) => lab,
                // Unsatisfiable reservations just disqualify the attempt.
                Err(LabelError::Partition(_)) => continue,
                Err(e) => return Err(e),
            };
            if verify_antimagic(&lab).expect("constructed labelings are bijections") {
                let mut reservations: Vec<Reservation> = attempt
                    .boosts
                    .iter()
                    .map(|v| Reservation {
                        vertex: v.clone(),
                        kind: ReservationKind::CSet,
                    })
                    .collect();
                if let Some(host) = host_for_plan {
                    reservations.push(Reservation {
                        vertex: host,
                        kind: ReservationKind::CarrierHost,
                    });
                }
                let plan = LabelingPlan {
                    case: CaseTag::TreeOdd,
                    roots: vec![root],
                    modulus: m,
                    reservations,
                    special_edges: vec![SpecialEdge::MaxLabel(edge_with_label(&lab, m))],
                };
                return Ok((lab, plan));
            }
        }
    }
    Err(LabelError::RepairExhausted)
}

/// Candidate roots, most promising first.
fn odd_root_order(f: &Forest, rep: &HypothesisReport) -> Vec<String> {
    let internals: Vec<&str> = f.vertices().filter(|v| f.degree(v) >= 2).collect();
    match rep.degree2_vertices.first() {
        Some(vp) => {
            // Degree-2 root first, then roots whose far side of the
            // degree-2 vertex is a leaf, then the rest by degree.
            let near = side_of(f, vp, f.neighbors(vp)[0].as_str());
            let mut rest: Vec<&str> = internals
                .iter()
                .copied()
                .filter(|v| v != &vp.as_str())
                .collect();
            rest.sort_by(|a, b| {
                let far_leaf = |r: &str| {
                    // Rooting on the first neighbor's side sends m to the
                    // second neighbor, and vice versa.
                    let vpp = if near.contains(r) {
                        f.neighbors(vp)[1].as_str()
                    } else {
                        f.neighbors(vp)[0].as_str()
                    };
                    f.is_leaf(vpp)
                };
                far_leaf(b)
                    .cmp(&far_leaf(a))
                    .then_with(|| f.degree(b).cmp(&f.degree(a)))
                    .then_with(|| a.cmp(b))
            });
            std::iter::once(vp.as_str())
                .chain(rest)
                .map(str::to_string)
                .collect()
        }
        None => {
            let mut ordered = internals;
            ordered.sort_by(|a, b| {
                let score = |v: &str| {
                    let odd_with_leaf = f.degree(v) % 2 == 1
                        && f.degree(v) >= 3
                        && f.neighbors(v).iter().any(|n| f.is_leaf(n));
                    u8::from(!odd_with_leaf)
                };
                score(a)
                    .cmp(&score(b))
                    .then_with(|| f.degree(b).cmp(&f.degree(a)))
                    .then_with(|| a.cmp(b))
            });
            ordered.into_iter().map(str::to_string).collect()
        }
    }
}

/// Vertices reachable from `start` without passing through `cut`.
fn side_of(f: &Forest, cut: &str, start: &str) -> BTreeSet<String> {
    let mut seen = BTreeSet::from([start.to_string()]);
    let mut queue = VecDeque::from([start.to_string()]);
    while let Some(v) = queue.pop_front() {
        for n in f.neighbors(&v) {
            if n != cut && seen.insert(n.clone()) {
                queue.push_back(n.clone());
            }
        }
    }
    seen
}

fn odd_attempts(rf: &RootedForest, root: &str, d2: Option<&str>) -> Vec<OddAttempt> {
    match d2 {
        Some(vp) if vp != root => {
            let vpp = rf.children(vp)[0].clone();
            let mut boost_targets = vec![root.to_string()];
            if rf.outgoing_count(&vpp) % 2 == 1 {
                boost_targets.push(vpp.clone());
            }
            if let Some(other) = partition_vertices(rf, Some(vp))
                .into_iter()
                .find(|v| v != root && *v != vpp && rf.outgoing_count(v) % 2 == 1)
            {
                boost_targets.push(other);
            }
            boost_combos(&boost_targets)
                .into_iter()
                .map(|boosts| OddAttempt {
                    mode: OddMode::External {
                        vp: vp.to_string(),
                        vpp: vpp.clone(),
                    },
                    boosts,
                })
                .collect()
        }
        _ => carrier_attempts(rf, root, d2.is_some()),
    }
}

fn carrier_attempts(rf: &RootedForest, root: &str, degree2_root: bool) -> Vec<OddAttempt> {
    let order = partition_vertices(rf, None);
    let mut hosts: Vec<&String> = order
        .iter()
        .filter(|v| rf.outgoing_count(v) % 2 == 1)
        .collect();
    let preferred_child = |host: &str| -> Option<&String> {
        if degree2_root {
            rf.children(host).iter().find(|c| rf.outgoing_count(c) >= 1)
        } else {
            rf.children(host).iter().find(|c| rf.outgoing_count(c) == 0)
        }
    };
    hosts.sort_by(|a, b| {
        preferred_child(b)
            .is_some()
            .cmp(&preferred_child(a).is_some())
            .then_with(|| a.cmp(b))
    });

    let mut out = Vec::new();
    for host in hosts.into_iter().take(8) {
        let leaf_child = rf
            .children(host)
            .iter()
            .find(|c| rf.outgoing_count(c) == 0)
            .cloned();
        let internal_child = rf
            .children(host)
            .iter()
            .find(|c| rf.outgoing_count(c) >= 1)
            .cloned();
        let pin_children: Vec<Option<String>> = if degree2_root {
            // A leaf pin collides with the degree-2 root's forced sum.
            vec![internal_child, None]
        } else {
            vec![leaf_child, internal_child.clone(), None]
        };
        let mut seen_pins: BTreeSet<Option<String>> = BTreeSet::new();
        for pin in pin_children {
            if !seen_pins.insert(pin.clone()) {
                continue;
            }
            let mut boost_targets = Vec::new();
            if root != host.as_str() {
                boost_targets.push(root.to_string());
            }
            if let Some(child) = &pin {
                if rf.outgoing_count(child) % 2 == 1 {
                    boost_targets.push(child.clone());
                }
            }
            for boosts in boost_combos(&boost_targets) {
                out.push(OddAttempt {
                    mode: OddMode::Carrier {
                        host: host.clone(),
                        pin_child: pin.clone(),
                    },
                    boosts,
                });
            }
        }
    }
    out
}

/// The empty set, each single target, and the full set.
fn boost_combos(targets: &[String]) -> Vec<Vec<String>> {
    let mut combos = vec![Vec::new()];
    for t in targets {
        combos.push(vec![t.clone()]);
    }
    if targets.len() > 1 {
        combos.push(targets.to_vec());
    }
    combos
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::vertex_sums;

    fn fig7_shape() -> Forest {
        Forest::from_edges([
            ("a0", "a1"),
            ("a1", "a2"),
            ("a1", "a3"),
            ("a1", "a4"),
            ("a1", "a5"),
            ("b0", "b1"),
            ("b1", "b2"),
            ("b1", "b3"),
            ("b1", "b4"),
            ("b2", "b5"),
            ("b2", "b6"),
        ])
        .unwrap()
    }

    fn fig8_shape() -> Forest {
        Forest::from_edges([
            ("a0", "a1"),
            ("a1", "a2"),
            ("a1", "a3"),
            ("a1", "a4"),
            ("a4", "a5"),
            ("b0", "b1"),
            ("b1", "b2"),
            ("b1", "b3"),
            ("b1", "b4"),
        ])
        .unwrap()
    }

    fn fig9_shape() -> Forest {
        Forest::from_edges([
            ("a0", "a1"),
            ("a0", "a2"),
            ("a1", "a3"),
            ("a1", "a4"),
            ("b0", "b1"),
            ("b0", "b2"),
            ("b0", "b3"),
            ("b1", "b4"),
            ("b1", "b5"),
            ("b3", "b6"),
            ("b3", "b7"),
            ("b3", "b8"),
        ])
        .unwrap()
    }

    fn fig10_shape() -> Forest {
        Forest::from_edges([
            ("a0", "a1"),
            ("a0", "a2"),
            ("a1", "a3"),
            ("a1", "a4"),
            ("a1", "a5"),
            ("a2", "a6"),
            ("a2", "a7"),
            ("a2", "a8"),
            ("b0", "b1"),
            ("b1", "b2"),
            ("b1", "b3"),
            ("c0", "c1"),
            ("c1", "c2"),
            ("c1", "c3"),
        ])
        .unwrap()
    }

    fn fig6_shape() -> Forest {
        Forest::from_edges([
            ("v00", "v01"),
            ("v00", "v02"),
            ("v00", "v03"),
            ("v00", "v04"),
            ("v00", "v05"),
            ("v01", "v06"),
            ("v01", "v07"),
            ("v01", "v08"),
            ("v07", "v09"),
            ("v07", "v10"),
            ("v07", "v11"),
            ("v07", "v12"),
            ("v07", "v13"),
            ("v07", "v14"),
            ("v07", "v15"),
            ("v05", "v16"),
            ("v05", "v17"),
            ("v05", "v18"),
            ("v18", "v19"),
            ("v18", "v20"),
            ("v18", "v21"),
            ("v18", "v22"),
        ])
        .unwrap()
    }

    #[test]
    fn case_dispatch() {
        assert_eq!(plan(&fig7_shape()).unwrap().case, CaseTag::Case1_1);
        assert_eq!(plan(&fig8_shape()).unwrap().case, CaseTag::Case1_2);
        assert_eq!(plan(&fig9_shape()).unwrap().case, CaseTag::Case2_2_1);
        assert_eq!(plan(&fig10_shape()).unwrap().case, CaseTag::Case2_2_2);
        assert_eq!(plan(&fig6_shape()).unwrap().case, CaseTag::TreeEven);

        let star3 = Forest::from_edges([("c", "x"), ("c", "y"), ("c", "z")]).unwrap();
        assert_eq!(plan(&star3).unwrap().case, CaseTag::TreeOdd);

        let two_stars = Forest::from_edges([
            ("a", "a1"),
            ("a", "a2"),
            ("a", "a3"),
            ("b", "b1"),
            ("b", "b2"),
            ("b", "b3"),
        ])
        .unwrap();
        assert_eq!(plan(&two_stars).unwrap().case, CaseTag::Case2_1);
    }

    #[test]
    fn two_k2_components_are_rejected() {
        let f = Forest::from_edges([("a", "b"), ("c", "d")]).unwrap();
        assert!(matches!(
            plan(&f),
            Err(LabelError::Ineligible(IneligibleReason::K2Component(0)))
        ));
    }

    #[test]
    fn case2_2_1_picks_a_branching_root() {
        let p = plan(&fig9_shape()).unwrap();
        assert_eq!(p.roots[0], "a0");
        assert!(fig9_shape().degree(&p.roots[1]) >= 3);
    }

    #[test]
    fn leaf_roots_are_lex_least() {
        let f = Forest::from_edges([("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(leaf_roots(&f).unwrap(), vec!["a".to_string()]);
        let star = Forest::from_edges([("c", "x"), ("c", "y"), ("c", "z")]).unwrap();
        assert_eq!(leaf_roots(&star).unwrap(), vec!["x".to_string()]);
    }

    #[test]
    fn smallest_even_tree_is_forced() {
        let p3 = Forest::from_edges([("a", "b"), ("b", "c")]).unwrap();
        let lab = label_tree_even(&p3).unwrap();
        let report = vertex_sums(&lab).unwrap();
        assert_eq!(report.sums["a"], 1);
        assert_eq!(report.sums["b"], 3);
        assert_eq!(report.sums["c"], 2);
    }

    #[test]
    fn four_star_center_sums_to_ten() {
        let f =
            Forest::from_edges([("c", "w"), ("c", "x"), ("c", "y"), ("c", "z")]).unwrap();
        let lab = label_tree_even(&f).unwrap();
        let report = vertex_sums(&lab).unwrap();
        assert_eq!(report.sums["c"], 10);
        assert!(report.is_antimagic);
    }

    #[test]
    fn label_tree_even_precondition() {
        let odd = Forest::from_edges([("c", "x"), ("c", "y"), ("c", "z")]).unwrap();
        assert!(matches!(
            label_tree_even(&odd),
            Err(LabelError::Precondition(_))
        ));
    }

    #[test]
    fn even_tree_labeling_is_zero_sum() {
        let f = fig6_shape();
        let lab = label_tree_even(&f).unwrap();
        let rf = root_components(&f, &[even_tree_root(&f, &f.analyze())]).unwrap();
        for v in rf.vertices_with_children() {
            let outgoing: u64 = rf
                .children(v)
                .iter()
                .map(|c| lab.label(&Edge::new(v, c.as_str())))
                .sum();
            assert_eq!(outgoing % 23, 0, "outgoing sum at {} not zero mod 23", v);
        }
        assert!(verify_antimagic(&lab).unwrap());
    }

    #[test]
    fn case1_1_and_root_separation() {
        let f = fig7_shape();
        let (lab, plan) = label_forest_with_plan(&f).unwrap();
        assert_eq!(plan.case, CaseTag::Case1_1);
        let report = vertex_sums(&lab).unwrap();
        assert!(report.is_antimagic);

        let rf = root_components(&f, &plan.roots).unwrap();
        for root in &plan.roots {
            let child = &rf.children(root)[0];
            assert!(
                report.sums[child.as_str()] >= report.sums[root.as_str()] + plan.modulus,
                "child of {} must outgrow it by the modulus",
                root
            );
        }

        // The largest label sits on an outgoing edge of an odd branching
        // vertex.
        let m = f.edge_count() as u64;
        let max_edge = edge_with_label(&lab, m);
        let (x, y) = max_edge.endpoints();
        let tail = if rf.parent(y) == Some(x) { x } else { y };
        assert!(rf.outgoing_count(tail) % 2 == 1 && rf.outgoing_count(tail) >= 3);
    }

    #[test]
    fn case1_2_pins_the_max_label_on_the_degree2_edge() {
        let f = fig8_shape();
        let (lab, plan) = label_forest_with_plan(&f).unwrap();
        assert_eq!(plan.case, CaseTag::Case1_2);
        match &plan.special_edges[..] {
            [SpecialEdge::MaxLabel(e)] => {
                assert_eq!(lab.label(e), 9);
                assert!(e.touches("a4"), "pinned edge leaves the degree-2 vertex");
            }
            other => panic!("expected one pinned edge, got {:?}", other),
        }
        assert!(verify_antimagic(&lab).unwrap());
    }

    #[test]
    fn case2_2_1_root_sums() {
        let f = fig9_shape();
        let (lab, plan) = label_forest_with_plan(&f).unwrap();
        assert_eq!(plan.case, CaseTag::Case2_2_1);
        let m = f.edge_count() as u64;
        let report = vertex_sums(&lab).unwrap();
        assert_eq!(report.sums["a0"], m + 1);
        let w2 = &plan.roots[1];
        assert!(report.sums[w2.as_str()] >= 2 * (m + 1));
        assert!(report.is_antimagic);
    }

    #[test]
    fn case2_2_2_b_pair_at_the_degree2_root() {
        let f = fig10_shape();
        let (lab, plan) = label_forest_with_plan(&f).unwrap();
        assert_eq!(plan.case, CaseTag::Case2_2_2);
        let m = f.edge_count() as u64;
        let report = vertex_sums(&lab).unwrap();
        assert_eq!(report.sums["a0"], m + 1);
        match &plan.special_edges[..] {
            [SpecialEdge::BPairEdges(e1, e2)] => {
                assert_eq!(lab.label(e1) + lab.label(e2), m + 1);
            }
            other => panic!("expected the reserved pair, got {:?}", other),
        }
        // Unique vertex with sum divisible by m+1.
        let zero_class: Vec<&String> = report
            .sums
            .iter()
            .filter(|(_, &s)| s % (m + 1) == 0)
            .map(|(v, _)| v)
            .collect();
        assert_eq!(zero_class, vec!["a0"]);
    }

    #[test]
    fn odd_stars_label_cleanly() {
        for n in [3usize, 5, 7, 9] {
            let edges: Vec<(String, String)> = (0..n)
                .map(|i| ("c".to_string(), format!("x{}", i)))
                .collect();
            let f = Forest::new(std::iter::empty(), edges).unwrap();
            let (lab, plan) = label_forest_with_plan(&f).unwrap();
            assert_eq!(plan.case, CaseTag::TreeOdd);
            assert!(verify_antimagic(&lab).unwrap());
        }
    }

    #[test]
    fn symmetric_spider_needs_a_good_root() {
        // Center of degree 3 joined to three degree-3 vertices, each with
        // two leaves: rooting at the center cannot avoid the residue
        // collision, so the search must move the root.
        let f = Forest::from_edges([
            ("c", "m1"),
            ("c", "m2"),
            ("c", "m3"),
            ("m1", "l1"),
            ("m1", "l2"),
            ("m2", "l3"),
            ("m2", "l4"),
            ("m3", "l5"),
            ("m3", "l6"),
        ])
        .unwrap();
        let (lab, plan) = label_forest_with_plan(&f).unwrap();
        assert_eq!(plan.case, CaseTag::TreeOdd);
        assert!(verify_antimagic(&lab).unwrap());
    }

    #[test]
    fn odd_tree_with_degree2_vertex() {
        // 4-star with one subdivided edge: m = 5, degree-2 midpoint.
        let f = Forest::from_edges([
            ("c", "x1"),
            ("c", "x2"),
            ("c", "x3"),
            ("c", "mid"),
            ("mid", "x4"),
        ])
        .unwrap();
        let (lab, plan) = label_forest_with_plan(&f).unwrap();
        assert_eq!(plan.case, CaseTag::TreeOdd);
        assert!(verify_antimagic(&lab).unwrap());
    }

    #[test]
    fn assign_class_examples() {
        let f = Forest::from_edges([("v", "x"), ("v", "y")]).unwrap();
        let rf = root_components(&f, &["v".to_string()]).unwrap();
        let got = assign_class_to_edges(&rf, "v", &[3, 20], &[]).unwrap();
        assert_eq!(
            got,
            vec![(Edge::new("v", "x"), 3), (Edge::new("v", "y"), 20)]
        );

        assert!(matches!(
            assign_class_to_edges(&rf, "v", &[3, 20, 21], &[]),
            Err(LabelError::SizeMismatch { .. })
        ));

        let pin = [(Edge::new("v", "x"), 9u64)];
        assert!(matches!(
            assign_class_to_edges(&rf, "v", &[3, 20], &pin),
            Err(LabelError::ConflictingReservation { label: 9 })
        ));
    }

    #[test]
    fn generated_forests_label_and_verify() {
        use crate::generate::{generate_forest, ForestSpec};
        for seed in 0..10 {
            for (s, m, d2) in [
                (1usize, 12usize, false),
                (1, 13, false),
                (1, 13, true),
                (2, 13, true),
                (2, 14, true),
                (4, 16, true),
                (3, 15, false),
            ] {
                let f = generate_forest(&ForestSpec {
                    components: s,
                    edges: m,
                    degree2: d2,
                    seed,
                })
                .unwrap();
                let lab = label_forest(&f).unwrap();
                assert!(
                    verify_antimagic(&lab).unwrap(),
                    "seed {} spec ({},{},{})",
                    seed,
                    s,
                    m,
                    d2
                );
            }
        }
    }
}
