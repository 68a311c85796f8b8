//! Seeded random generation of forests that satisfy the labeler's
//! hypotheses exactly: prescribed component and edge counts, an optional
//! single degree-2 vertex, no K2 components, no isolated vertices.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Forest;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("infeasible spec: {0}")]
    Infeasible(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForestSpec {
    pub components: usize,
    pub edges: usize,
    /// Whether the forest contains exactly one degree-2 vertex.
    pub degree2: bool,
    pub seed: u64,
}

const RESAMPLE_BUDGET: usize = 10_000;

/// Degree-2-free trees need at least 3 edges (the 3-star); a component
/// carrying the single degree-2 vertex needs 2 edges (a path) or at least 4
/// (no 3-edge tree has exactly one degree-2 vertex).
fn feasible(spec: &ForestSpec) -> Result<(), GenerateError> {
    let (s, m) = (spec.components, spec.edges);
    if s == 0 {
        return Err(GenerateError::Infeasible("need at least one component".into()));
    }
    if spec.degree2 {
        if s == 1 && !(m == 2 || m >= 4) {
            return Err(GenerateError::Infeasible(format!(
                "no tree with {} edges has exactly one degree-2 vertex",
                m
            )));
        }
        if s >= 2 && m < 3 * s - 1 {
            return Err(GenerateError::Infeasible(format!(
                "{} components with one degree-2 vertex need at least {} edges",
                s,
                3 * s - 1
            )));
        }
    } else if m < 3 * s {
        return Err(GenerateError::Infeasible(format!(
            "{} components without degree-2 vertices need at least {} edges",
            s,
            3 * s
        )));
    }
    Ok(())
}

/// Grows a random tree on `target` edges whose internal vertices all have
/// degree >= 3, starting from a 3-star (or a single edge when target is 1,
/// used only as a pre-subdivision seed). Attachment is preferential: growth
/// sites are weighted by their current degree.
fn grow_tree(
    target: usize,
    next_id: &mut usize,
    rng: &mut ChaCha8Rng,
) -> Vec<(String, String)> {
    let name = |i: usize| format!("v{:05}", i);
    let mut fresh = || {
        let id = name(*next_id);
        *next_id += 1;
        id
    };

    let mut edges: Vec<(String, String)> = Vec::with_capacity(target);
    let mut degree: Vec<(String, usize)> = Vec::new();

    if target == 1 {
        let (a, b) = (fresh(), fresh());
        edges.push((a.clone(), b.clone()));
        return edges;
    }

    let center = fresh();
    degree.push((center.clone(), 3));
    for _ in 0..3 {
        let leaf = fresh();
        edges.push((center.clone(), leaf.clone()));
        degree.push((leaf, 1));
    }

    while edges.len() < target {
        let remaining = target - edges.len();
        // Either hang a new leaf off an internal vertex, or promote a leaf
        // to an internal vertex by giving it two children at once.
        let promote = remaining >= 2 && rng.gen_bool(0.4);
        if promote {
            let leaves: Vec<usize> = (0..degree.len())
                .filter(|&i| degree[i].1 == 1)
                .collect();
            let pick = leaves[rng.gen_range(0..leaves.len())];
            degree[pick].1 = 3;
            let parent = degree[pick].0.clone();
            for _ in 0..2 {
                let leaf = fresh();
                edges.push((parent.clone(), leaf.clone()));
                degree.push((leaf, 1));
            }
        } else {
            let internal: Vec<usize> = (0..degree.len())
                .filter(|&i| degree[i].1 >= 3)
                .collect();
            let total: usize = internal.iter().map(|&i| degree[i].1).sum();
            let mut ticket = rng.gen_range(0..total);
            let mut pick = internal[0];
            for &i in &internal {
                if ticket < degree[i].1 {
                    pick = i;
                    break;
                }
                ticket -= degree[i].1;
            }
            degree[pick].1 += 1;
            let parent = degree[pick].0.clone();
            let leaf = fresh();
            edges.push((parent.clone(), leaf.clone()));
            degree.push((leaf, 1));
        }
    }
    edges
}

/// Splits one edge with a fresh midpoint, creating exactly one degree-2
/// vertex.
fn subdivide(
    edges: &mut Vec<(String, String)>,
    next_id: &mut usize,
    rng: &mut ChaCha8Rng,
) {
    let i = rng.gen_range(0..edges.len());
    let (u, v) = edges.swap_remove(i);
    let mid = format!("v{:05}", *next_id);
    *next_id += 1;
    edges.push((u, mid.clone()));
    edges.push((mid, v));
}

/// Draws component sizes: the degree-2 host (if any) gets 2 or >= 4 edges,
/// every other component gets >= 3.
fn draw_sizes(spec: &ForestSpec, rng: &mut ChaCha8Rng) -> Option<(Vec<usize>, Option<usize>)> {
    let s = spec.components;
    let host = if spec.degree2 {
        Some(rng.gen_range(0..s))
    } else {
        None
    };
    let mut sizes: Vec<usize> = (0..s)
        .map(|c| if Some(c) == host { 2 } else { 3 })
        .collect();
    let mut rest = spec.edges.checked_sub(sizes.iter().sum::<usize>())?;
    while rest > 0 {
        let c = rng.gen_range(0..s);
        sizes[c] += 1;
        rest -= 1;
    }
    if let Some(h) = host {
        // A 3-edge tree cannot host exactly one degree-2 vertex.
        if sizes[h] == 3 {
            return None;
        }
    }
    Some((sizes, host))
}

/// Generates a forest matching the spec exactly; deterministic per seed.
pub fn generate_forest(spec: &ForestSpec) -> Result<Forest, GenerateError> {
    feasible(spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    for _ in 0..RESAMPLE_BUDGET {
        let Some((sizes, host)) = draw_sizes(spec, &mut rng) else {
            continue;
        };
        let mut next_id = 0usize;
        let mut all_edges = Vec::with_capacity(spec.edges);
        for (c, &size) in sizes.iter().enumerate() {
            if Some(c) == host {
                let mut edges = grow_tree(size - 1, &mut next_id, &mut rng);
                subdivide(&mut edges, &mut next_id, &mut rng);
                all_edges.extend(edges);
            } else {
                all_edges.extend(grow_tree(size, &mut next_id, &mut rng));
            }
        }
        let Ok(forest) = Forest::new(std::iter::empty(), all_edges) else {
            continue;
        };
        let rep = forest.analyze();
        let wanted_deg2 = usize::from(spec.degree2);
        if rep.component_count == spec.components
            && rep.edge_count == spec.edges
            && rep.degree2_vertices.len() == wanted_deg2
            && rep.k2_components.is_empty()
            && rep.isolated_vertices.is_empty()
        {
            return Ok(forest);
        }
    }
    Err(GenerateError::Infeasible(
        "resampling budget exhausted".into(),
    ))
}
