//! Generic magic squares over a commutative ring with unit, carrying both an
//! additive and a multiplicative magic constant.
//!
//! The componentwise ring operations do not structurally preserve both
//! constants at once: addition guarantees the additive clause (sums
//! distribute) but not the multiplicative one, and multiplication guarantees
//! the multiplicative clause but not the additive one. The closure claim for
//! the full two-constant set is therefore treated as a falsifiable
//! hypothesis: `add_p` and `mul_p` re-verify the clause they do not
//! guarantee and surface [`RingGmsError::ClosureViolation`] instead of ever
//! constructing an invalid value, and [`closure_search`] tests the claim
//! exhaustively over finite rings.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{AlgebraError, CommutativeRing, Element};
use crate::pms::Line;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RingGmsError {
    #[error("matrix is not square: {rows} rows but row {row} has {cols} entries")]
    NotSquare { rows: usize, row: usize, cols: usize },
    #[error("matrix is empty")]
    Empty,
    #[error("not additively magic: {line} sums to {found}, expected {expected}")]
    NotAdditiveMagic {
        line: Line,
        found: Element,
        expected: Element,
    },
    #[error("not multiplicatively magic: {line} multiplies to {found}, expected {expected}")]
    NotMultiplicativeMagic {
        line: Line,
        found: Element,
        expected: Element,
    },
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("squares are over different rings: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error(transparent)]
    Carrier(#[from] AlgebraError),
    #[error("result left the ring-GMS set: {cause}")]
    ClosureViolation {
        /// The componentwise result that failed re-verification.
        candidate: Vec<Vec<Element>>,
        cause: Box<RingGmsError>,
    },
    #[error("enumeration space {states} exceeds the budget of {budget} states")]
    BudgetExceeded { states: u128, budget: u128 },
}

/// A matrix over a commutative ring whose rows and columns all sum to one
/// constant and all multiply to one (possibly different) constant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingGms {
    ring: CommutativeRing,
    order: usize,
    entries: Vec<Element>, // row-major
    c_add: Element,
    c_mul: Element,
}

impl RingGms {
    /// Verify both magic clauses and wrap the matrix.
    pub fn rverify(ring: &CommutativeRing, rows: &[Vec<Element>]) -> Result<RingGms, RingGmsError> {
        let n = rows.len();
        if n == 0 {
            return Err(RingGmsError::Empty);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(RingGmsError::NotSquare {
                    rows: n,
                    row: i,
                    cols: row.len(),
                });
            }
        }
        let c_add = ring.sum(rows[0].iter())?;
        for (i, row) in rows.iter().enumerate() {
            let s = ring.sum(row.iter())?;
            if s != c_add {
                return Err(RingGmsError::NotAdditiveMagic {
                    line: Line::Row(i),
                    found: s,
                    expected: c_add,
                });
            }
        }
        for j in 0..n {
            let s = ring.sum(rows.iter().map(|r| &r[j]))?;
            if s != c_add {
                return Err(RingGmsError::NotAdditiveMagic {
                    line: Line::Col(j),
                    found: s,
                    expected: c_add,
                });
            }
        }
        let c_mul = ring.product(rows[0].iter())?;
        for (i, row) in rows.iter().enumerate() {
            let p = ring.product(row.iter())?;
            if p != c_mul {
                return Err(RingGmsError::NotMultiplicativeMagic {
                    line: Line::Row(i),
                    found: p,
                    expected: c_mul,
                });
            }
        }
        for j in 0..n {
            let p = ring.product(rows.iter().map(|r| &r[j]))?;
            if p != c_mul {
                return Err(RingGmsError::NotMultiplicativeMagic {
                    line: Line::Col(j),
                    found: p,
                    expected: c_mul,
                });
            }
        }
        Ok(RingGms {
            ring: ring.clone(),
            order: n,
            entries: rows.iter().flatten().cloned().collect(),
            c_add,
            c_mul,
        })
    }

    /// The all-zero square, additive identity: constants `(0, 0)`.
    pub fn zeros(ring: &CommutativeRing, n: usize) -> RingGms {
        assert!(n >= 1);
        let z = ring.zero();
        RingGms {
            ring: ring.clone(),
            order: n,
            entries: vec![z.clone(); n * n],
            c_add: z.clone(),
            c_mul: if n == 0 { z } else { zero_product(ring, n) },
        }
    }

    /// The all-ones square, multiplicative identity: constants `(n*1, 1)`.
    pub fn ones(ring: &CommutativeRing, n: usize) -> RingGms {
        assert!(n >= 1);
        let one = ring.one();
        let mut c_add = ring.zero();
        for _ in 0..n {
            c_add = ring.add(&c_add, &one).unwrap();
        }
        RingGms {
            ring: ring.clone(),
            order: n,
            entries: vec![one.clone(); n * n],
            c_add,
            c_mul: one,
        }
    }

    pub fn ring(&self) -> &CommutativeRing {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn additive_constant(&self) -> &Element {
        &self.c_add
    }

    pub fn multiplicative_constant(&self) -> &Element {
        &self.c_mul
    }

    pub fn entry(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.order + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Element]> {
        self.entries.chunks(self.order)
    }

    pub fn to_rows(&self) -> Vec<Vec<Element>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    fn check_compatible(&self, other: &RingGms) -> Result<(), RingGmsError> {
        if self.ring != other.ring {
            return Err(RingGmsError::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        if self.order != other.order {
            return Err(RingGmsError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    fn componentwise(
        &self,
        other: &RingGms,
        f: impl Fn(&Element, &Element) -> Result<Element, AlgebraError>,
    ) -> Result<Vec<Vec<Element>>, RingGmsError> {
        self.check_compatible(other)?;
        let n = self.order;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| f(self.entry(i, j), other.entry(i, j)).map_err(RingGmsError::from))
                    .collect()
            })
            .collect()
    }

    /// Componentwise ring addition. The additive clause holds with constant
    /// `c_add(A) + c_add(B)`; the multiplicative clause is re-verified and a
    /// failure is surfaced as `ClosureViolation`.
    pub fn add_p(&self, other: &RingGms) -> Result<RingGms, RingGmsError> {
        let rows = self.componentwise(other, |a, b| self.ring.add(a, b))?;
        RingGms::rverify(&self.ring, &rows).map_err(|cause| match cause {
            e @ RingGmsError::NotMultiplicativeMagic { .. } => RingGmsError::ClosureViolation {
                candidate: rows.clone(),
                cause: Box::new(e),
            },
            other => other,
        })
    }

    /// Componentwise ring multiplication. The multiplicative clause holds
    /// with constant `c_mul(A) * c_mul(B)`; the additive clause is
    /// re-verified and a failure is surfaced as `ClosureViolation`.
    pub fn mul_p(&self, other: &RingGms) -> Result<RingGms, RingGmsError> {
        let rows = self.componentwise(other, |a, b| self.ring.mul(a, b))?;
        RingGms::rverify(&self.ring, &rows).map_err(|cause| match cause {
            e @ RingGmsError::NotAdditiveMagic { .. } => RingGmsError::ClosureViolation {
                candidate: rows.clone(),
                cause: Box::new(e),
            },
            other => other,
        })
    }

    /// Multiply every entry by a fixed ring element `r`. Closure is
    /// unconditional (distributivity and commutativity), so the result is
    /// constructed directly with constants `(r * c_add, r^n * c_mul)`.
    pub fn scalar_act(&self, r: &Element) -> Result<RingGms, RingGmsError> {
        let entries = self
            .entries
            .iter()
            .map(|a| self.ring.mul(r, a))
            .collect::<Result<Vec<_>, _>>()?;
        let c_add = self.ring.mul(r, &self.c_add)?;
        let c_mul = self.ring.mul(&self.ring.pow(r, self.order)?, &self.c_mul)?;
        let out = RingGms {
            ring: self.ring.clone(),
            order: self.order,
            entries,
            c_add,
            c_mul,
        };
        debug_assert!(RingGms::rverify(&self.ring, &out.to_rows())
            .map(|v| v == out)
            .unwrap_or(false));
        Ok(out)
    }
}

// product of n zeros: 0 for n >= 1
fn zero_product(ring: &CommutativeRing, n: usize) -> Element {
    let z = ring.zero();
    let mut acc = ring.one();
    for _ in 0..n {
        acc = ring.mul(&acc, &z).unwrap();
    }
    acc
}

impl fmt::Display for RingGms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Outcome of testing one componentwise operation over the full ring-GMS set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Closed,
    /// Lexicographically first ordered pair whose componentwise result left
    /// the set, with the failing candidate matrix.
    Counterexample {
        left: RingGms,
        right: RingGms,
        candidate: Vec<Vec<Element>>,
        cause: String,
    },
}

impl Verdict {
    pub fn is_closed(&self) -> bool {
        matches!(self, Verdict::Closed)
    }
}

/// Exhaustive closure report for one finite ring and order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub ring: CommutativeRing,
    pub order: usize,
    pub set_size: usize,
    pub add_verdict: Verdict,
    pub mul_verdict: Verdict,
}

/// Enumerate every ring-GMS of order `n` over a finite ring, in row-major
/// lexicographic order of the carrier enumeration.
pub fn all_ring_gms(
    ring: &CommutativeRing,
    n: usize,
    budget: u128,
) -> Result<Vec<RingGms>, RingGmsError> {
    let m = ring
        .order()
        .ok_or_else(|| AlgebraError::InfiniteCarrier(ring.to_string()))? as u128;
    let cells = (n * n) as u32;
    let states = m
        .checked_pow(cells)
        .ok_or(RingGmsError::BudgetExceeded {
            states: u128::MAX,
            budget,
        })?;
    if states > budget {
        return Err(RingGmsError::BudgetExceeded { states, budget });
    }
    let elems = ring.elements()?;
    let mut out = Vec::new();
    let mut digits = vec![0usize; n * n];
    loop {
        let rows: Vec<Vec<Element>> = (0..n)
            .map(|i| (0..n).map(|j| elems[digits[i * n + j]].clone()).collect())
            .collect();
        if let Ok(sq) = RingGms::rverify(ring, &rows) {
            out.push(sq);
        }
        let mut k = n * n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < elems.len() {
                break;
            }
            digits[k] = 0;
        }
    }
}

/// Enumerate all order-n ring-GMS over a finite ring and test every ordered
/// pair under `add_p` and `mul_p`. Returns `Closed` per operation, or the
/// lexicographically first counterexample pair. The pair space may be
/// partitioned across rayon workers; verdicts are merged in canonical
/// enumeration order, so the report is identical for any worker count.
pub fn closure_search(
    ring: &CommutativeRing,
    n: usize,
    budget: u128,
) -> Result<ClosureReport, RingGmsError> {
    let set = all_ring_gms(ring, n, budget)?;
    let first_failure = |op: fn(&RingGms, &RingGms) -> Result<RingGms, RingGmsError>| {
        set.par_iter()
            .enumerate()
            .filter_map(|(i, a)| {
                set.iter().enumerate().find_map(|(j, b)| match op(a, b) {
                    Err(RingGmsError::ClosureViolation { candidate, cause }) => {
                        Some(((i, j), a.clone(), b.clone(), candidate, cause.to_string()))
                    }
                    _ => None,
                })
            })
            .min_by_key(|(ij, ..)| *ij)
    };
    let to_verdict = |found: Option<((usize, usize), RingGms, RingGms, Vec<Vec<Element>>, String)>| {
        match found {
            None => Verdict::Closed,
            Some((_, left, right, candidate, cause)) => Verdict::Counterexample {
                left,
                right,
                candidate,
                cause,
            },
        }
    };
    Ok(ClosureReport {
        ring: ring.clone(),
        order: n,
        set_size: set.len(),
        add_verdict: to_verdict(first_failure(RingGms::add_p)),
        mul_verdict: to_verdict(first_failure(RingGms::mul_p)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[Vec<i64>]) -> Vec<Vec<Element>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| Element::int(v)).collect())
            .collect()
    }

    fn circulant() -> RingGms {
        RingGms::rverify(
            &CommutativeRing::Integers,
            &ints(&[vec![1, 2, 3], vec![3, 1, 2], vec![2, 3, 1]]),
        )
        .unwrap()
    }

    #[test]
    fn all_zero_constants() {
        let z = RingGms::rverify(&CommutativeRing::Integers, &ints(&vec![vec![0; 3]; 3])).unwrap();
        assert_eq!(*z.additive_constant(), Element::int(0));
        assert_eq!(*z.multiplicative_constant(), Element::int(0));
        assert_eq!(z, RingGms::zeros(&CommutativeRing::Integers, 3));
    }

    #[test]
    fn circulant_constants() {
        let c = circulant();
        assert_eq!(*c.additive_constant(), Element::int(6));
        assert_eq!(*c.multiplicative_constant(), Element::int(6));
    }

    #[test]
    fn loh_shu_not_multiplicative() {
        let err = RingGms::rverify(
            &CommutativeRing::Integers,
            &ints(&[vec![4, 9, 2], vec![3, 5, 7], vec![8, 1, 6]]),
        )
        .unwrap_err();
        match err {
            RingGmsError::NotMultiplicativeMagic { line, found, expected } => {
                assert_eq!(line, Line::Row(1));
                assert_eq!(found, Element::int(105));
                assert_eq!(expected, Element::int(72));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn add_p_identity() {
        let c = circulant();
        let z = RingGms::zeros(&CommutativeRing::Integers, 3);
        assert_eq!(c.add_p(&z).unwrap(), c);
    }

    #[test]
    fn add_p_circulants() {
        let c = circulant();
        let c2 = RingGms::rverify(
            &CommutativeRing::Integers,
            &ints(&[vec![4, 5, 6], vec![6, 4, 5], vec![5, 6, 4]]),
        )
        .unwrap();
        let s = c.add_p(&c2).unwrap();
        assert_eq!(*s.additive_constant(), Element::int(21));
    }

    #[test]
    fn mul_p_identity_and_squaring() {
        let c = circulant();
        let ones = RingGms::ones(&CommutativeRing::Integers, 3);
        assert_eq!(*ones.additive_constant(), Element::int(3));
        assert_eq!(*ones.multiplicative_constant(), Element::int(1));
        assert_eq!(c.mul_p(&ones).unwrap(), c);
        let sq = c.mul_p(&c).unwrap();
        let expected = RingGms::rverify(
            &CommutativeRing::Integers,
            &ints(&[vec![1, 4, 9], vec![9, 1, 4], vec![4, 9, 1]]),
        )
        .unwrap();
        assert_eq!(sq, expected);
        assert_eq!(*sq.additive_constant(), Element::int(14));
        assert_eq!(*sq.multiplicative_constant(), Element::int(36));
    }

    #[test]
    fn scalar_act_cases() {
        let c = circulant();
        assert_eq!(c.scalar_act(&Element::int(1)).unwrap(), c);
        assert_eq!(
            c.scalar_act(&Element::int(0)).unwrap(),
            RingGms::zeros(&CommutativeRing::Integers, 3)
        );
        let doubled = c.scalar_act(&Element::int(2)).unwrap();
        assert_eq!(*doubled.additive_constant(), Element::int(12));
        assert_eq!(*doubled.multiplicative_constant(), Element::int(48));
    }

    #[test]
    fn closure_violation_over_z2() {
        // all-ones plus a zero-constant square with an all-zero first row
        let z2 = CommutativeRing::modular(2);
        let res = |rows: &[Vec<u64>]| -> Vec<Vec<Element>> {
            rows.iter()
                .map(|r| r.iter().map(|&v| Element::residue(v, 2)).collect())
                .collect()
        };
        let ones = RingGms::ones(&z2, 3);
        let b = RingGms::rverify(&z2, &res(&[vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 1]]))
            .unwrap();
        match ones.add_p(&b) {
            Err(RingGmsError::ClosureViolation { candidate, cause }) => {
                assert_eq!(candidate[0], vec![Element::residue(1, 2); 3]);
                assert!(matches!(*cause, RingGmsError::NotMultiplicativeMagic { .. }));
            }
            other => panic!("expected closure violation, got {other:?}"),
        }
    }

    #[test]
    fn closure_search_z2_order2_closed() {
        let report = closure_search(&CommutativeRing::modular(2), 2, 10_000_000).unwrap();
        assert_eq!(report.set_size, 4);
        assert!(report.add_verdict.is_closed());
        assert!(report.mul_verdict.is_closed());
    }

    #[test]
    fn closure_search_z3_order2() {
        let report = closure_search(&CommutativeRing::modular(3), 2, 10_000_000).unwrap();
        assert_eq!(report.set_size, 9);
        assert!(report.add_verdict.is_closed());
        assert!(report.mul_verdict.is_closed());
    }

    #[test]
    fn ring_mismatch() {
        let a = RingGms::ones(&CommutativeRing::modular(2), 2);
        let b = RingGms::ones(&CommutativeRing::modular(3), 2);
        assert!(matches!(a.add_p(&b), Err(RingGmsError::RingMismatch { .. })));
    }
}
