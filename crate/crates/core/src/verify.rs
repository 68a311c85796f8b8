//! Independent certification of labelings: per-vertex sums and the
//! all-sums-distinct check.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::labeling::EdgeLabeling;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("not a bijection onto [1,{m}]: {detail}")]
    NotABijection { m: u64, detail: String },
    #[error("{edges} edges exceed the search bound of {bound}")]
    TooLarge { edges: usize, bound: usize },
}

/// Per-vertex sums with collision diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSumReport {
    pub sums: BTreeMap<String, u64>,
    /// Unordered pairs with equal sums, lexicographically sorted.
    pub collisions: Vec<(String, String)>,
    pub is_antimagic: bool,
}

fn check_bijection(lab: &EdgeLabeling) -> Result<(), VerifyError> {
    let m = lab.forest().edge_count() as u64;
    let mut seen = vec![false; m as usize + 1];
    for (e, &l) in lab.labels() {
        if l < 1 || l > m {
            return Err(VerifyError::NotABijection {
                m,
                detail: format!("label {} on edge {} is out of range", l, e),
            });
        }
        if seen[l as usize] {
            return Err(VerifyError::NotABijection {
                m,
                detail: format!("label {} used more than once", l),
            });
        }
        seen[l as usize] = true;
    }
    Ok(())
}

/// Computes every vertex sum and lists colliding pairs.
pub fn vertex_sums(lab: &EdgeLabeling) -> Result<VertexSumReport, VerifyError> {
    check_bijection(lab)?;
    let mut sums: BTreeMap<String, u64> = lab
        .forest()
        .vertices()
        .map(|v| (v.to_string(), 0u64))
        .collect();
    for (e, &l) in lab.labels() {
        let (a, b) = e.endpoints();
        *sums.get_mut(a).unwrap() += l;
        *sums.get_mut(b).unwrap() += l;
    }

    let mut by_sum: BTreeMap<u64, Vec<&str>> = BTreeMap::new();
    for (v, &s) in &sums {
        by_sum.entry(s).or_default().push(v);
    }
    let mut collisions = Vec::new();
    for group in by_sum.values() {
        for i in 0..group.len() {
            for j in i + 1..group.len() {
                collisions.push((group[i].to_string(), group[j].to_string()));
            }
        }
    }
    collisions.sort();

    Ok(VertexSumReport {
        is_antimagic: collisions.is_empty(),
        sums,
        collisions,
    })
}

/// True iff all vertex sums are pairwise distinct.
pub fn verify_antimagic(lab: &EdgeLabeling) -> Result<bool, VerifyError> {
    Ok(vertex_sums(lab)?.is_antimagic)
}
