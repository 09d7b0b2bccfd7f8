//! Matroid-axiom checking for explicit independence systems, and vector
//! matroids induced by flattening pseudo magic squares to integer vectors.
//!
//! Linear independence is decided over the rationals with fraction-free
//! integer elimination, so verdicts are exact.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::pms::Pms;

const MAX_GROUND: usize = 20;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("ground set of {size} elements exceeds the exhaustive limit of {MAX_GROUND}")]
    GroundSetTooLarge { size: usize },
    #[error("subset {subset:?} references an element outside the ground set of {size}")]
    BadSubset { subset: Vec<usize>, size: usize },
    #[error("ground squares have mixed orders: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
}

/// A finite ground set with an explicit collection of subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceSystem {
    labels: Vec<String>,
    /// Sorted canonically: by size, then lexicographically.
    sets: Vec<Vec<usize>>,
}

impl IndependenceSystem {
    /// Build a system; subsets are deduplicated, sorted, and validated
    /// against the ground set.
    pub fn new(
        labels: Vec<String>,
        subsets: Vec<Vec<usize>>,
    ) -> Result<IndependenceSystem, MatroidError> {
        let size = labels.len();
        if size > MAX_GROUND {
            return Err(MatroidError::GroundSetTooLarge { size });
        }
        let mut canon: BTreeSet<Vec<usize>> = BTreeSet::new();
        for s in subsets {
            if s.iter().any(|&e| e >= size) {
                return Err(MatroidError::BadSubset { subset: s, size });
            }
            let set: BTreeSet<usize> = s.into_iter().collect();
            canon.insert(set.into_iter().collect());
        }
        let mut sets: Vec<Vec<usize>> = canon.into_iter().collect();
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(IndependenceSystem { labels, sets })
    }

    pub fn ground_size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The independent sets, sorted by size then lexicographically.
    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn contains(&self, set: &[usize]) -> bool {
        let mut s: Vec<usize> = set.to_vec();
        s.sort_unstable();
        s.dedup();
        self.sets.binary_search_by(|x| x.len().cmp(&s.len()).then_with(|| x.cmp(&s))).is_ok()
    }

    /// Size of the largest set in the collection.
    pub fn rank(&self) -> usize {
        self.sets.iter().map(|s| s.len()).max().unwrap_or(0)
    }
}

/// Which matroid axiom failed, with the lexicographically least witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatroidViolation {
    /// I.1: the empty set is not in the collection.
    EmptySetMissing,
    /// I.2: `superset` is in the collection but `missing` is not.
    NotHereditary {
        superset: Vec<usize>,
        missing: Vec<usize>,
    },
    /// I.3: no element of `larger - smaller` extends `smaller` inside the
    /// collection.
    ExchangeFails {
        smaller: Vec<usize>,
        larger: Vec<usize>,
    },
}

/// Exhaustively check the three matroid axioms.
///
/// I.2 is checked via single-element deletions, which suffices by induction.
/// The verdict does not depend on input order: the system's canonical sort
/// fixes the enumeration, so witnesses are the least violations.
pub fn is_matroid(sys: &IndependenceSystem) -> Result<(), MatroidViolation> {
    if !sys.contains(&[]) {
        return Err(MatroidViolation::EmptySetMissing);
    }
    for set in sys.sets() {
        for k in 0..set.len() {
            let mut sub = set.clone();
            sub.remove(k);
            if !sys.contains(&sub) {
                return Err(MatroidViolation::NotHereditary {
                    superset: set.clone(),
                    missing: sub,
                });
            }
        }
    }
    for small in sys.sets() {
        for large in sys.sets() {
            if small.len() >= large.len() {
                continue;
            }
            let extendable = large.iter().any(|&e| {
                if small.contains(&e) {
                    return false;
                }
                let mut ext = small.clone();
                ext.push(e);
                sys.contains(&ext)
            });
            if !extendable {
                return Err(MatroidViolation::ExchangeFails {
                    smaller: small.clone(),
                    larger: large.clone(),
                });
            }
        }
    }
    Ok(())
}

/// Exact rank of a list of integer vectors, by fraction-free Gaussian
/// elimination over the rationals.
pub fn integer_rank(vectors: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = vectors.to_vec();
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        // partial pivot: smallest nonzero magnitude keeps numbers tame
        let pivot = (rank..rows)
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].abs());
        let Some(p) = pivot else {
            col += 1;
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let (num, den) = (m[r][col].clone(), m[rank][col].clone());
            for c in col..cols {
                m[r][c] = &m[r][c] * &den - &m[rank][c] * &num;
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// The vector matroid over a list of PMS: each square is flattened to its
/// row-major entry vector and a subset is independent iff those vectors are
/// linearly independent over the rationals. The collection is materialized
/// explicitly, grown size by size (any subset of an independent set is
/// independent, so only extensions of known independent sets need testing).
pub fn vector_matroid(ground: &[Pms]) -> Result<IndependenceSystem, MatroidError> {
    if ground.len() > MAX_GROUND {
        return Err(MatroidError::GroundSetTooLarge { size: ground.len() });
    }
    if let Some(first) = ground.first() {
        for sq in ground {
            if sq.order() != first.order() {
                return Err(MatroidError::OrderMismatch {
                    left: first.order(),
                    right: sq.order(),
                });
            }
        }
    }
    let vectors: Vec<Vec<BigInt>> = ground.iter().map(|sq| sq.flatten().to_vec()).collect();
    let independent = |set: &[usize]| {
        let chosen: Vec<Vec<BigInt>> = set.iter().map(|&i| vectors[i].clone()).collect();
        integer_rank(&chosen) == set.len()
    };

    let mut sets: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for base in &frontier {
            let start = base.last().map_or(0, |&e| e + 1);
            for e in start..ground.len() {
                let mut ext = base.clone();
                ext.push(e);
                if independent(&ext) {
                    next.push(ext);
                }
            }
        }
        sets.extend(next.iter().cloned());
        frontier = next;
    }
    let labels = (0..ground.len()).map(|i| format!("sq{i}")).collect();
    IndependenceSystem::new(labels, sets)
}
