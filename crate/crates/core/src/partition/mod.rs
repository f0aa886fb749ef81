//! Partitions of a frame into linearly independent sets, packings of
//! disjoint spanning sets, and erasure robustness.
//!
//! Indices are 0-based positions in the frame.

mod matroid;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framecore::Frame;
use crate::redundancy::redundancy_report;
use crate::scalar::{Real, Scalar};
use crate::tol::Tolerances;

use matroid::{BlockFamily, LinearMatroid};

/// Limit on the number of subsets enumerated by [`erasure_robust`].
pub const ERASURE_SUBSET_LIMIT: u128 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartitionKind {
    Independent,
    Spanning,
}

/// Disjoint blocks of frame indices, each independent or each spanning.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexPartition {
    pub kind: PartitionKind,
    pub blocks: Vec<Vec<usize>>,
    /// True when the blocks exhaust every index.
    pub covered: bool,
    /// Indices in no block, ascending.
    pub leftover: Vec<usize>,
}

impl IndexPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Rechecks the partition against `f` from scratch by rank computations.
    pub fn verify<S: Scalar>(&self, f: &Frame<S>, tol: &Tolerances) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidCertificate(msg));
        let mut seen = vec![false; f.len()];
        for block in &self.blocks {
            if block.is_empty() {
                return fail("empty block".into());
            }
            for &i in block {
                if i >= f.len() {
                    return fail(format!("index {i} out of range"));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return fail(format!("index {i} appears twice"));
                }
            }
        }
        let missing: Vec<usize> = (0..f.len()).filter(|&i| !seen[i]).collect();
        if missing != self.leftover {
            return fail("leftover list does not match the uncovered indices".into());
        }
        if self.covered != missing.is_empty() {
            return fail("covered flag is inconsistent".into());
        }
        let m = LinearMatroid::new(f, tol.rank);
        for block in &self.blocks {
            let ok = match self.kind {
                PartitionKind::Independent => m.independent(block),
                PartitionKind::Spanning => m.spans(block),
            };
            if !ok {
                return fail(format!("block {block:?} is not {:?}", self.kind).to_lowercase());
            }
        }
        if self.kind == PartitionKind::Independent && !self.covered {
            return fail("an independent partition must cover every index".into());
        }
        Ok(())
    }
}

/// Splits `f` into the fewest linearly independent sets.
///
/// Elements are inserted one at a time. Each insertion searches for a
/// shortest exchange path through the current blocks and opens a new block
/// only when none exists, which yields the minimum block count.
pub fn partition_independent<S: Scalar>(f: &Frame<S>, tol: &Tolerances) -> Result<IndexPartition> {
    f.require_zero_free()?;
    let m = LinearMatroid::new(f, tol.rank);
    let mut family = BlockFamily::new(f.len(), 0);
    for x in 0..f.len() {
        if !family.insert(&m, x) {
            family.open_block(x);
        }
    }
    Ok(IndexPartition {
        kind: PartitionKind::Independent,
        blocks: family.into_sorted_blocks(),
        covered: true,
        leftover: Vec::new(),
    })
}

/// The largest family of disjoint spanning sets in `f`.
///
/// For k = 1, 2, … the union of k independent sets is grown to maximum size
/// by exchange paths; k disjoint bases exist exactly when that size is k·n.
/// Blocks are bases; unused indices are reported as leftover.
pub fn pack_spanning<S: Scalar>(f: &Frame<S>, tol: &Tolerances) -> Result<IndexPartition> {
    f.require_spanning()?;
    let m = LinearMatroid::new(f, tol.rank);
    let n = f.dim();
    let mut best: Option<BlockFamily> = None;
    for k in 1..=f.len() / n {
        let mut family = BlockFamily::new(f.len(), k);
        for x in 0..f.len() {
            family.insert(&m, x);
        }
        if family.assigned() < k * n {
            break;
        }
        best = Some(family);
    }
    let family = best.expect("a spanning frame contains a basis");
    let leftover = family.unassigned();
    Ok(IndexPartition {
        kind: PartitionKind::Spanning,
        covered: leftover.is_empty(),
        blocks: family.into_sorted_blocks(),
        leftover,
    })
}

/// Whether every removal of `k` vectors leaves a spanning set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErasureVerdict {
    pub robust: bool,
    /// The first removal, in lexicographic order, that breaks spanning.
    pub witness: Option<Vec<usize>>,
}

/// Checks all `k`-subset removals in lexicographic order.
pub fn erasure_robust<S: Scalar>(
    f: &Frame<S>,
    k: usize,
    tol: &Tolerances,
) -> Result<ErasureVerdict> {
    let total = f.len();
    if k >= total {
        return Err(Error::InvalidParameter(format!(
            "erasure count {k} must be below N = {total}"
        )));
    }
    let count = binomial(total as u128, k as u128);
    if count > ERASURE_SUBSET_LIMIT {
        return Err(Error::TooManySubsets {
            count,
            limit: ERASURE_SUBSET_LIMIT,
        });
    }
    let m = LinearMatroid::new(f, tol.rank);
    let mut removed: Vec<usize> = (0..k).collect();
    let mut kept = Vec::with_capacity(total - k);
    loop {
        kept.clear();
        let mut r = removed.iter().peekable();
        for i in 0..total {
            if r.peek() == Some(&&i) {
                r.next();
            } else {
                kept.push(i);
            }
        }
        if !m.spans(&kept) {
            return Ok(ErasureVerdict {
                robust: false,
                witness: Some(removed),
            });
        }
        if !next_combination(&mut removed, total) {
            return Ok(ErasureVerdict {
                robust: true,
                witness: None,
            });
        }
    }
}

fn next_combination(c: &mut [usize], total: usize) -> bool {
    let k = c.len();
    for pos in (0..k).rev() {
        if c[pos] < total - k + pos {
            c[pos] += 1;
            for later in pos + 1..k {
                c[later] = c[later - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// `⌈ℛ⁺⌉`, the guaranteed maximum size of an independent partition.
pub fn independent_bound<S: Scalar>(f: &Frame<S>, tol: &Tolerances) -> Result<usize> {
    let r = redundancy_report(f, tol)?;
    Ok(ceil_guarded(r.upper))
}

/// `⌊ℛ⁻⌋`, the guaranteed minimum number of disjoint spanning sets.
pub fn spanning_bound<S: Scalar>(f: &Frame<S>, tol: &Tolerances) -> Result<usize> {
    let r = redundancy_report(f, tol)?;
    Ok(floor_guarded(r.lower))
}

/// `⌈x − 1e-9⌉`, absorbing round-off just above an integer.
pub fn ceil_guarded<R: Real>(x: R) -> usize {
    (x - R::from_f64_lossy(1e-9))
        .ceil()
        .max(R::zero())
        .to_usize()
        .unwrap_or(usize::MAX)
}

/// `⌊x + 1e-9⌋`, absorbing round-off just below an integer.
pub fn floor_guarded<R: Real>(x: R) -> usize {
    (x + R::from_f64_lossy(1e-9))
        .floor()
        .max(R::zero())
        .to_usize()
        .unwrap_or(usize::MAX)
}
