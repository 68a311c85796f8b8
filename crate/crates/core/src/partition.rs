//! Zero-sum partitions of the integer range [1,k].
//!
//! The two-row construction splits [1,2s+6l] into `l` A-sets (three elements
//! summing to k+1), `s` B-sets (two elements summing to k+1), and `l` C-sets
//! (three elements summing to 2(k+1)). Those building blocks are then
//! composed into classes of arbitrary prescribed sizes >= 2 whose element
//! sums vanish modulo k' (k+1 for even k, k for odd k).

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("class size {0} is too small (minimum is 2)")]
    SizeTooSmall(u64),
    #[error("sizes sum to {got}, expected {expected}")]
    SizeSumMismatch { expected: u64, got: u64 },
    #[error("unsatisfiable constraint: {0}")]
    UnsatisfiableConstraint(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SetKind {
    A,
    B,
    C,
}

impl std::fmt::Display for SetKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SetKind::A => write!(f, "A"),
            SetKind::B => write!(f, "B"),
            SetKind::C => write!(f, "C"),
        }
    }
}

/// One A-, B-, or C-set. Elements are kept in construction order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbcSet {
    pub kind: SetKind,
    /// 1-based index within its kind.
    pub index: usize,
    pub elements: Vec<u64>,
}

impl AbcSet {
    pub fn sum(&self) -> u64 {
        self.elements.iter().sum()
    }
}

/// The full partition of [1, 2s+6l] into A-, B-, and C-sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbcPartition {
    pub s: u64,
    pub l: u64,
    pub k: u64,
    pub a_sets: Vec<AbcSet>,
    pub b_sets: Vec<AbcSet>,
    pub c_sets: Vec<AbcSet>,
}

/// Builds the A/B/C-sets for k = 2s + 6l.
///
/// Arrange [1,k] as a two-row matrix with rows (1..k/2) and (k..k/2+1); the
/// middle s columns become B-sets, the first l top entries pair with two
/// entries from the tail columns to form A-sets, and the leftovers form
/// C-sets:
///
/// * B_i = {l+i, k-l-i+1}
/// * A_i = {i, l+s+i, k-(l+s+2i)+1}
/// * C_i = {k-i+1, s+3l+1-i, k-(s+3l+1-2i)+1}
pub fn abc_partition(s: u64, l: u64) -> AbcPartition {
    let k = 2 * s + 6 * l;
    let a_sets = (1..=l)
        .map(|i| AbcSet {
            kind: SetKind::A,
            index: i as usize,
            elements: vec![i, l + s + i, k - (l + s + 2 * i) + 1],
        })
        .collect();
    let b_sets = (1..=s)
        .map(|i| AbcSet {
            kind: SetKind::B,
            index: i as usize,
            elements: vec![l + i, k - l - i + 1],
        })
        .collect();
    let c_sets = (1..=l)
        .map(|i| AbcSet {
            kind: SetKind::C,
            index: i as usize,
            elements: vec![k - i + 1, s + 3 * l + 1 - i, k - (s + 3 * l + 1 - 2 * i) + 1],
        })
        .collect();
    AbcPartition {
        s,
        l,
        k,
        a_sets,
        b_sets,
        c_sets,
    }
}

/// How a class size r is written as 2*pairs + 3*triples.
///
/// Canonical form: even r uses pairs only; odd r uses one triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeDecomposition {
    pub pairs: u64,
    pub triples: u64,
}

pub fn decompose_size(r: u64) -> Result<SizeDecomposition, PartitionError> {
    if r < 2 {
        return Err(PartitionError::SizeTooSmall(r));
    }
    if r.is_multiple_of(2) {
        Ok(SizeDecomposition {
            pairs: r / 2,
            triples: 0,
        })
    } else {
        Ok(SizeDecomposition {
            pairs: (r - 3) / 2,
            triples: 1,
        })
    }
}

/// Placement constraints for [`zero_sum_partition`]. Class indices are
/// 0-based positions in the requested size list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    /// The class must be exactly one B-set (size 2), so its sum is exactly
    /// the modulus.
    ExactBSet { class: usize },
    /// The class must contain a full C-set, pushing its sum to at least
    /// twice the modulus.
    ContainsCSet { class: usize },
    /// The class must contain at least one full B-set; the reserved pair is
    /// reported so callers can pin its two elements onto specific edges.
    ContainsBSet { class: usize },
    /// Odd k only: the class that receives the extra element k.
    CarrierOfK { class: usize },
}

impl Constraint {
    fn class(&self) -> usize {
        match *self {
            Constraint::ExactBSet { class }
            | Constraint::ContainsCSet { class }
            | Constraint::ContainsBSet { class }
            | Constraint::CarrierOfK { class } => class,
        }
    }
}

/// One class of a zero-sum partition: a union of A/B/C-sets, plus the
/// adjoined element k when this class is the carrier for odd k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionClass {
    pub blocks: Vec<AbcSet>,
    pub adjoined: Option<u64>,
    /// The B-set reserved by `ExactBSet`/`ContainsBSet`, smaller element first.
    pub reserved_pair: Option<(u64, u64)>,
}

impl PartitionClass {
    /// Elements in ascending order.
    pub fn elements(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .blocks
            .iter()
            .flat_map(|b| b.elements.iter().copied())
            .collect();
        out.extend(self.adjoined);
        out.sort_unstable();
        out
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.elements.len()).sum::<usize>()
            + usize::from(self.adjoined.is_some())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn sum(&self) -> u64 {
        self.blocks.iter().map(AbcSet::sum).sum::<u64>() + self.adjoined.unwrap_or(0)
    }
}

/// A partition of [1,k] into classes of prescribed sizes with class sums
/// congruent to 0 modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSumPartition {
    pub k: u64,
    pub modulus: u64,
    pub classes: Vec<PartitionClass>,
    /// Index of the class containing the element k, when k is odd.
    pub carrier_of_k: Option<usize>,
}

/// Partitions [1,k] into classes with `sizes[i]` elements each and class
/// sums divisible by k' = k+1 (k even) or k (k odd).
///
/// For even k every size is decomposed into 2- and 3-blocks, the blocks are
/// drawn from [`abc_partition`], and each class is the union of its blocks.
/// For odd k some odd size is reduced by one, the even construction runs on
/// [1,k-1], and the element k is adjoined to the reduced class.
pub fn zero_sum_partition(
    k: u64,
    sizes: &[u64],
    constraints: &[Constraint],
) -> Result<ZeroSumPartition, PartitionError> {
    for &r in sizes {
        if r < 2 {
            return Err(PartitionError::SizeTooSmall(r));
        }
    }
    let total: u64 = sizes.iter().sum();
    if total != k {
        return Err(PartitionError::SizeSumMismatch {
            expected: k,
            got: total,
        });
    }
    for c in constraints {
        if c.class() >= sizes.len() {
            return Err(PartitionError::UnsatisfiableConstraint(format!(
                "class index {} out of range ({} classes)",
                c.class(),
                sizes.len()
            )));
        }
        // Checked against the requested size, before any odd-k reduction.
        if let Constraint::ExactBSet { class } = *c {
            if sizes[class] != 2 {
                return Err(PartitionError::UnsatisfiableConstraint(format!(
                    "exact B-set needs class size 2, class {} has size {}",
                    class, sizes[class]
                )));
            }
        }
    }

    if k % 2 == 1 {
        let carrier = match constraints
            .iter()
            .find_map(|c| match c {
                Constraint::CarrierOfK { class } => Some(*class),
                _ => None,
            }) {
            Some(j) => {
                if sizes[j].is_multiple_of(2) || sizes[j] < 3 {
                    return Err(PartitionError::UnsatisfiableConstraint(format!(
                        "carrier class {} must have odd size >= 3, got {}",
                        j, sizes[j]
                    )));
                }
                j
            }
            // Sizes summing to an odd k always include an odd size.
            None => sizes
                .iter()
                .position(|r| r % 2 == 1)
                .expect("odd total implies an odd part"),
        };
        let mut reduced = sizes.to_vec();
        reduced[carrier] -= 1;
        let inner: Vec<Constraint> = constraints
            .iter()
            .copied()
            .filter(|c| !matches!(c, Constraint::CarrierOfK { .. }))
            .collect();
        let mut part = even_partition(k - 1, &reduced, &inner)?;
        part.k = k;
        part.classes[carrier].adjoined = Some(k);
        part.carrier_of_k = Some(carrier);
        debug_assert_eq!(part.modulus, k);
        return Ok(part);
    }

    even_partition(k, sizes, constraints)
}

fn even_partition(
    k: u64,
    sizes: &[u64],
    constraints: &[Constraint],
) -> Result<ZeroSumPartition, PartitionError> {
    debug_assert_eq!(k % 2, 0);

    let mut decomp: Vec<SizeDecomposition> = sizes
        .iter()
        .map(|&r| decompose_size(r))
        .collect::<Result<_, _>>()?;

    // Per-class adjustments demanded by constraints.
    for c in constraints {
        match *c {
            Constraint::ExactBSet { class } => {
                if sizes[class] != 2 {
                    return Err(PartitionError::UnsatisfiableConstraint(format!(
                        "exact B-set needs class size 2, class {} has size {}",
                        class, sizes[class]
                    )));
                }
            }
            Constraint::ContainsCSet { class } => {
                if decomp[class].triples == 0 {
                    let r = sizes[class];
                    // Even sizes >= 6 can trade three pairs for two triples.
                    if r >= 6 && r.is_multiple_of(2) {
                        decomp[class] = SizeDecomposition {
                            pairs: (r - 6) / 2,
                            triples: 2,
                        };
                    } else {
                        return Err(PartitionError::UnsatisfiableConstraint(format!(
                            "class {} of size {} cannot contain a 3-set",
                            class, r
                        )));
                    }
                }
            }
            Constraint::ContainsBSet { class } => {
                if decomp[class].pairs == 0 {
                    return Err(PartitionError::UnsatisfiableConstraint(format!(
                        "class {} of size {} cannot contain a full 2-set",
                        class, sizes[class]
                    )));
                }
            }
            Constraint::CarrierOfK { class } => {
                return Err(PartitionError::UnsatisfiableConstraint(format!(
                    "carrier constraint on class {} requires odd k, k = {}",
                    class, k
                )));
            }
        }
    }

    let s_total: u64 = decomp.iter().map(|d| d.pairs).sum();
    let n_total: u64 = decomp.iter().map(|d| d.triples).sum();
    debug_assert_eq!(n_total % 2, 0, "even k forces an even number of triples");
    let l_total = n_total / 2;

    let abc = abc_partition(s_total, l_total);
    debug_assert_eq!(abc.k, k);

    let mut pair_pool: VecDeque<AbcSet> = abc.b_sets.into();
    // A- and C-sets alternate so early classes get the smaller sums.
    let mut triple_pool: VecDeque<AbcSet> = abc
        .a_sets
        .into_iter()
        .zip(abc.c_sets)
        .flat_map(|(a, c)| [a, c])
        .collect();

    // Reservation pass in class-index order, before the pools are consumed.
    let mut reserved: Vec<Vec<AbcSet>> = vec![Vec::new(); sizes.len()];
    let mut reserved_b: Vec<Option<(u64, u64)>> = vec![None; sizes.len()];
    for class in 0..sizes.len() {
        for c in constraints.iter().filter(|c| c.class() == class) {
            match c {
                Constraint::ExactBSet { .. } | Constraint::ContainsBSet { .. } => {
                    if reserved_b[class].is_some() {
                        continue;
                    }
                    let b = pair_pool.pop_front().ok_or_else(|| {
                        PartitionError::UnsatisfiableConstraint(format!(
                            "no 2-set left to reserve for class {}",
                            class
                        ))
                    })?;
                    let (p, q) = (b.elements[0], b.elements[1]);
                    reserved_b[class] = Some((p.min(q), p.max(q)));
                    reserved[class].push(b);
                }
                Constraint::ContainsCSet { .. } => {
                    if reserved[class].iter().any(|b| b.kind == SetKind::C) {
                        continue;
                    }
                    let pos = triple_pool
                        .iter()
                        .position(|t| t.kind == SetKind::C)
                        .ok_or_else(|| {
                            PartitionError::UnsatisfiableConstraint(format!(
                                "no C-set left to reserve for class {}",
                                class
                            ))
                        })?;
                    let c_set = triple_pool.remove(pos).unwrap();
                    reserved[class].push(c_set);
                }
                Constraint::CarrierOfK { .. } => unreachable!("rejected above"),
            }
        }
    }

    let mut classes = Vec::with_capacity(sizes.len());
    for (i, d) in decomp.iter().enumerate() {
        let mut blocks = std::mem::take(&mut reserved[i]);
        let have_pairs = blocks.iter().filter(|b| b.kind == SetKind::B).count() as u64;
        let have_triples = blocks.iter().filter(|b| b.kind != SetKind::B).count() as u64;
        for _ in have_pairs..d.pairs {
            blocks.push(pair_pool.pop_front().expect("pair pool sized exactly"));
        }
        for _ in have_triples..d.triples {
            blocks.push(triple_pool.pop_front().expect("triple pool sized exactly"));
        }
        classes.push(PartitionClass {
            blocks,
            adjoined: None,
            reserved_pair: reserved_b[i],
        });
    }
    debug_assert!(pair_pool.is_empty() && triple_pool.is_empty());

    Ok(ZeroSumPartition {
        k,
        modulus: k + 1,
        classes,
        carrier_of_k: None,
    })
}
