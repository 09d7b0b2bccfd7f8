//! Bounded exhaustive enumeration of pseudo magic squares, with pruning,
//! dihedral canonicalization, and class counting.
//!
//! The search runs depth-first over row-major cells. The last cell of every
//! row is forced to `c` minus the partial row sum, and the entire last row
//! is forced by column deficits; when the constant is free it is fixed by
//! the first completed row. Output is in lexicographic order and identical
//! across worker counts: the parallel variant partitions the tree by the
//! value of the first free cell and concatenates subtree results in value
//! order.

use std::collections::HashSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::pms::Pms;

/// Window and constraints for one enumeration run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub order: usize,
    pub lo: i64,
    pub hi: i64,
    /// Fix the magic constant; `None` enumerates all constants.
    pub constant: Option<i64>,
    /// Emit only squares with pairwise distinct entries.
    pub require_distinct: bool,
}

impl SearchSpec {
    pub fn new(order: usize, lo: i64, hi: i64) -> SearchSpec {
        SearchSpec {
            order,
            lo,
            hi,
            constant: None,
            require_distinct: false,
        }
    }

    pub fn with_constant(mut self, c: i64) -> SearchSpec {
        self.constant = Some(c);
        self
    }

    pub fn distinct(mut self) -> SearchSpec {
        self.require_distinct = true;
        self
    }
}

const NODE_BUDGET: u128 = 1_000_000_000;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("bad bounds: lo {lo} > hi {hi}")]
    BadBounds { lo: i64, hi: i64 },
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("constant {constant} is unreachable: row sums lie in [{min}, {max}]")]
    InfeasibleConstant { constant: i64, min: i64, max: i64 },
    #[error("estimated search tree of {estimate} nodes exceeds the budget of {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
}

fn validate(spec: &SearchSpec) -> Result<(), SearchError> {
    if spec.order == 0 {
        return Err(SearchError::ZeroOrder);
    }
    if spec.lo > spec.hi {
        return Err(SearchError::BadBounds {
            lo: spec.lo,
            hi: spec.hi,
        });
    }
    let n = spec.order as i64;
    if let Some(c) = spec.constant {
        let (min, max) = (n * spec.lo, n * spec.hi);
        if c < min || c > max {
            return Err(SearchError::InfeasibleConstant {
                constant: c,
                min,
                max,
            });
        }
    }
    let width = (spec.hi - spec.lo + 1) as u128;
    let n = spec.order;
    // free cells: everything not forced by a row tail or the last row
    let free = if n == 1 {
        if spec.constant.is_some() { 0 } else { 1 }
    } else {
        let base = (n - 1) * (n - 1);
        if spec.constant.is_some() { base } else { base + 1 }
    } as u32;
    let estimate = width.checked_pow(free).unwrap_or(u128::MAX);
    if estimate > NODE_BUDGET {
        return Err(SearchError::BudgetExceeded {
            estimate,
            budget: NODE_BUDGET,
        });
    }
    Ok(())
}

struct Search<'a> {
    n: usize,
    lo: i64,
    hi: i64,
    distinct: bool,
    constant: Option<i64>,
    grid: Vec<i64>,
    row_sums: Vec<i64>,
    col_sums: Vec<i64>,
    used: HashSet<i64>,
    sink: &'a mut dyn FnMut(&[i64]),
}

impl Search<'_> {
    fn value_ok(&self, v: i64) -> bool {
        v >= self.lo && v <= self.hi && !(self.distinct && self.used.contains(&v))
    }

    fn place(&mut self, pos: usize, v: i64) {
        let (i, j) = (pos / self.n, pos % self.n);
        self.grid[pos] = v;
        self.row_sums[i] += v;
        self.col_sums[j] += v;
        if self.distinct {
            self.used.insert(v);
        }
        self.step(pos + 1);
        self.row_sums[i] -= v;
        self.col_sums[j] -= v;
        if self.distinct {
            self.used.remove(&v);
        }
    }

    // column j still admits a completion after rows 0..=i are filled
    fn column_feasible(&self, i: usize, j: usize) -> bool {
        let Some(c) = self.constant else { return true };
        let remaining = (self.n - 1 - i) as i64;
        let deficit = c - self.col_sums[j];
        deficit >= remaining * self.lo && deficit <= remaining * self.hi
    }

    fn step(&mut self, pos: usize) {
        let n = self.n;
        if pos == n * n {
            (self.sink)(&self.grid);
            return;
        }
        let (i, j) = (pos / n, pos % n);
        if i + 1 == n && n > 1 {
            // last row is fully forced by column deficits
            let c = self.constant.expect("constant fixed after the first row");
            let v = c - self.col_sums[j];
            if self.value_ok(v) {
                self.place(pos, v);
            }
            return;
        }
        if j + 1 == n && self.constant.is_some() {
            // row tail forced by the row sum
            let v = self.constant.unwrap() - self.row_sums[i];
            if self.value_ok(v) && self.feasible_after(i, j, v) {
                self.place(pos, v);
            }
            return;
        }
        for v in self.lo..=self.hi {
            if self.distinct && self.used.contains(&v) {
                continue;
            }
            // the last cell of the first row fixes a free constant
            let fixed_here = self.constant.is_none() && i == 0 && j + 1 == n;
            if fixed_here {
                self.constant = Some(self.row_sums[0] + v);
            }
            if self.feasible_after(i, j, v) {
                self.place(pos, v);
            }
            if fixed_here {
                self.constant = None;
            }
        }
    }

    fn feasible_after(&mut self, i: usize, j: usize, v: i64) -> bool {
        self.col_sums[j] += v;
        let ok = self.column_feasible(i, j);
        self.col_sums[j] -= v;
        ok
    }
}

fn run_search(spec: &SearchSpec, sink: &mut dyn FnMut(&[i64])) -> Result<(), SearchError> {
    validate(spec)?;
    let n = spec.order;
    if n == 1 {
        match spec.constant {
            Some(c) => {
                if c >= spec.lo && c <= spec.hi {
                    sink(&[c]);
                }
            }
            None => {
                for v in spec.lo..=spec.hi {
                    sink(&[v]);
                }
            }
        }
        return Ok(());
    }
    let mut search = Search {
        n,
        lo: spec.lo,
        hi: spec.hi,
        distinct: spec.require_distinct,
        constant: spec.constant,
        grid: vec![0; n * n],
        row_sums: vec![0; n],
        col_sums: vec![0; n],
        used: HashSet::new(),
        sink,
    };
    search.step(0);
    Ok(())
}

fn to_pms(n: usize, grid: &[i64]) -> Pms {
    let rows: Vec<Vec<i64>> = grid.chunks(n).map(|r| r.to_vec()).collect();
    Pms::verify_i64(&rows).expect("search emits only magic grids")
}

/// Enumerate every PMS within the spec's window, in lexicographic row-major
/// order, each exactly once.
pub fn enumerate_pms(spec: &SearchSpec) -> Result<Vec<Pms>, SearchError> {
    let mut out = Vec::new();
    let n = spec.order;
    run_search(spec, &mut |grid| out.push(to_pms(n, grid)))?;
    Ok(out)
}

/// Same output as [`enumerate_pms`], with the subtrees under each value of
/// the first cell searched in parallel and concatenated in value order.
pub fn enumerate_pms_parallel(spec: &SearchSpec) -> Result<Vec<Pms>, SearchError> {
    validate(spec)?;
    if spec.order == 1 {
        return enumerate_pms(spec);
    }
    let results: Vec<Result<Vec<Pms>, SearchError>> = (spec.lo..=spec.hi)
        .collect::<Vec<i64>>()
        .par_iter()
        .map(|&first| {
            let mut out = Vec::new();
            let n = spec.order;
            run_prefixed(spec, first, &mut |grid| out.push(to_pms(n, grid)))?;
            Ok(out)
        })
        .collect();
    let mut merged = Vec::new();
    for r in results {
        merged.extend(r?);
    }
    Ok(merged)
}

// search only the subtree where cell (0,0) holds `first`
fn run_prefixed(
    spec: &SearchSpec,
    first: i64,
    sink: &mut dyn FnMut(&[i64]),
) -> Result<(), SearchError> {
    let n = spec.order;
    let mut search = Search {
        n,
        lo: spec.lo,
        hi: spec.hi,
        distinct: spec.require_distinct,
        constant: spec.constant,
        grid: vec![0; n * n],
        row_sums: vec![0; n],
        col_sums: vec![0; n],
        used: HashSet::new(),
        sink,
    };
    if search.value_ok(first) {
        search.place(0, first);
    }
    Ok(())
}

/// The lexicographically least image of `a` under the dihedral group of the
/// square (4 rotations and 4 reflections, the transpose among them).
/// Idempotent; constant preserved by every image.
pub fn canonical_form(a: &Pms) -> Pms {
    d4_orbit(a).into_iter().min().expect("orbit is nonempty")
}

/// All 8 dihedral images of `a` (with repeats for symmetric squares).
pub fn d4_orbit(a: &Pms) -> Vec<Pms> {
    let mut images = Vec::with_capacity(8);
    let mut r = a.clone();
    for _ in 0..4 {
        images.push(r.transpose());
        images.push(r.clone());
        r = r.rotate();
    }
    images
}

/// One dihedral equivalence class within an enumeration window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClass {
    /// Lexicographically least matrix of the orbit, within or outside the
    /// window.
    pub representative: Pms,
    /// Number of distinct enumerated matrices in the class.
    pub size: u64,
}

/// Partition the enumeration into dihedral orbits. Classes are sorted by
/// representative; sizes sum to the total count.
pub fn count_classes(spec: &SearchSpec) -> Result<Vec<EquivalenceClass>, SearchError> {
    use std::collections::BTreeMap;
    let mut classes: BTreeMap<Pms, u64> = BTreeMap::new();
    for sq in enumerate_pms(spec)? {
        *classes.entry(canonical_form(&sq)).or_insert(0) += 1;
    }
    Ok(classes
        .into_iter()
        .map(|(representative, size)| EquivalenceClass {
            representative,
            size,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_one_window() {
        let sqs = enumerate_pms(&SearchSpec::new(1, 0, 4)).unwrap();
        assert_eq!(sqs.len(), 5);
        assert_eq!(sqs[0], Pms::verify_i64(&[vec![0]]).unwrap());
        assert_eq!(sqs[4], Pms::verify_i64(&[vec![4]]).unwrap());
    }

    #[test]
    fn binary_two_by_two() {
        let sqs = enumerate_pms(&SearchSpec::new(2, 0, 1)).unwrap();
        assert_eq!(sqs.len(), 4);
        for sq in &sqs {
            assert_eq!(sq.entry(0, 0), sq.entry(1, 1));
            assert_eq!(sq.entry(0, 1), sq.entry(1, 0));
        }
    }

    #[test]
    fn order_three_distinct_census() {
        // 72 squares satisfy the row/column condition on a 1..9 permutation;
        // the textbook count of 8 additionally constrains the diagonals,
        // which are outside the definition here
        let spec = SearchSpec::new(3, 1, 9).with_constant(15).distinct();
        let sqs = enumerate_pms(&spec).unwrap();
        assert_eq!(sqs.len(), 72);
        assert!(sqs.contains(&Pms::loh_shu()));
        let classes = count_classes(&spec).unwrap();
        assert_eq!(classes.len(), 9);
        assert!(classes.iter().all(|c| c.size == 8));
        // the 8 diagonal-magic squares are exactly one dihedral class
        let loh_class = canonical_form(&Pms::loh_shu());
        assert!(classes.iter().any(|c| c.representative == loh_class));
    }

    #[test]
    fn parallel_matches_sequential() {
        for spec in [
            SearchSpec::new(3, 0, 2),
            SearchSpec::new(2, -2, 2),
            SearchSpec::new(3, 1, 9).with_constant(15).distinct(),
        ] {
            assert_eq!(
                enumerate_pms(&spec).unwrap(),
                enumerate_pms_parallel(&spec).unwrap()
            );
        }
    }

    #[test]
    fn canonical_form_fixed_points_and_orbits() {
        assert_eq!(canonical_form(&Pms::zero(3)), Pms::zero(3));
        let loh = Pms::loh_shu();
        assert_eq!(canonical_form(&loh), canonical_form(&loh.transpose()));
        for g in d4_orbit(&loh) {
            assert_eq!(canonical_form(&g), canonical_form(&loh));
            assert_eq!(g.constant(), loh.constant());
        }
        let canon = canonical_form(&loh);
        assert_eq!(canonical_form(&canon), canon);
    }

    #[test]
    fn class_sizes_two_by_two() {
        let classes = count_classes(&SearchSpec::new(2, 0, 1)).unwrap();
        assert_eq!(classes.len(), 3);
        let sizes: Vec<u64> = classes.iter().map(|c| c.size).collect();
        assert_eq!(sizes.iter().sum::<u64>(), 4);
        assert!(sizes.contains(&2));
    }

    #[test]
    fn one_by_one_classes() {
        let classes = count_classes(&SearchSpec::new(1, 0, 4)).unwrap();
        assert_eq!(classes.len(), 5);
        assert!(classes.iter().all(|c| c.size == 1));
    }

    #[test]
    fn infeasible_constant() {
        assert!(matches!(
            enumerate_pms(&SearchSpec::new(2, 0, 1).with_constant(5)),
            Err(SearchError::InfeasibleConstant { .. })
        ));
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(
            enumerate_pms(&SearchSpec::new(8, 0, 100)),
            Err(SearchError::BudgetExceeded { .. })
        ));
    }
}
