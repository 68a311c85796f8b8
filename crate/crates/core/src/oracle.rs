//! Brute-force ground truth at desk scale: enumerate every bijection from
//! [1,m] onto the edges (in lexicographic order) and keep the antimagic
//! ones. Factorial in m, so a bound guards the entry point.

use std::collections::BTreeMap;

use crate::graph::Forest;
use crate::labeling::EdgeLabeling;
use crate::verify::VerifyError;

/// Default cap on the edge count; 9! is about 3.6e5 labelings.
pub const DEFAULT_ORACLE_BOUND: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    First,
    Count,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    /// The lexicographically least antimagic labeling, if any.
    First(Option<EdgeLabeling>),
    Count(u64),
    All(Vec<EdgeLabeling>),
}

impl OracleOutcome {
    pub fn witness_count(&self) -> u64 {
        match self {
            OracleOutcome::First(w) => u64::from(w.is_some()),
            OracleOutcome::Count(n) => *n,
            OracleOutcome::All(ws) => ws.len() as u64,
        }
    }
}

/// Standard in-place next lexicographic permutation.
fn next_permutation(xs: &mut [u64]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// Exhaustively enumerates edge labelings of `f` in lexicographic order
/// over the canonical edge list and reports the antimagic ones.
pub fn oracle_search(
    f: &Forest,
    mode: OracleMode,
    bound: usize,
) -> Result<OracleOutcome, VerifyError> {
    let m = f.edge_count();
    if m > bound {
        return Err(VerifyError::TooLarge { edges: m, bound });
    }

    let edges = f.canonical_edges();
    let vertex_index: BTreeMap<&str, usize> = f
        .vertices()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let ends: Vec<(usize, usize)> = edges
        .iter()
        .map(|e| {
            let (a, b) = e.endpoints();
            (vertex_index[a], vertex_index[b])
        })
        .collect();
    let nv = vertex_index.len();

    let mut perm: Vec<u64> = (1..=m as u64).collect();
    let mut sums = vec![0u64; nv];
    let mut sorted = vec![0u64; nv];
    let mut count = 0u64;
    let mut all = Vec::new();

    loop {
        sums.fill(0);
        for (i, &(a, b)) in ends.iter().enumerate() {
            sums[a] += perm[i];
            sums[b] += perm[i];
        }
        sorted.copy_from_slice(&sums);
        sorted.sort_unstable();
        let antimagic = sorted.windows(2).all(|w| w[0] != w[1]);

        if antimagic {
            match mode {
                OracleMode::First => {
                    return Ok(OracleOutcome::First(Some(materialize(f, &edges, &perm))));
                }
                OracleMode::Count => count += 1,
                OracleMode::All => all.push(materialize(f, &edges, &perm)),
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }

    Ok(match mode {
        OracleMode::First => OracleOutcome::First(None),
        OracleMode::Count => OracleOutcome::Count(count),
        OracleMode::All => OracleOutcome::All(all),
    })
}

fn materialize(f: &Forest, edges: &[crate::graph::Edge], perm: &[u64]) -> EdgeLabeling {
    let labels: BTreeMap<_, _> = edges
        .iter()
        .cloned()
        .zip(perm.iter().copied())
        .collect();
    EdgeLabeling::new(f.clone(), labels).expect("labels cover every edge")
}
