//! Generic magic squares over an arbitrary abelian group.
//!
//! A `Gms` is an `n x n` matrix with entries in an abelian group `(G, *)`
//! such that the fold of every row and every column equals one group element,
//! the generic magic constant. For `G = (Z, +)` this specializes exactly to
//! pseudo magic squares. The set of order-n squares is itself an abelian
//! group under the componentwise operation.

use std::fmt;

use thiserror::Error;

use crate::algebra::{AbelianGroup, AlgebraError, Element};
use crate::pms::Line;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GmsError {
    #[error("matrix is not square: {rows} rows but row {row} has {cols} entries")]
    NotSquare { rows: usize, row: usize, cols: usize },
    #[error("matrix is empty")]
    Empty,
    #[error("not magic: {line} folds to {found}, expected {expected}")]
    NotMagic {
        line: Line,
        found: Element,
        expected: Element,
    },
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("squares are over different groups: {left} vs {right}")]
    GroupMismatch { left: String, right: String },
    #[error(transparent)]
    Carrier(#[from] AlgebraError),
    #[error("enumeration space {states} exceeds the budget of {budget} states")]
    BudgetExceeded { states: u128, budget: u128 },
}

/// A matrix over an abelian group with all row and column folds equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gms {
    group: AbelianGroup,
    order: usize,
    entries: Vec<Element>, // row-major
    constant: Element,
}

impl Gms {
    /// Verify the fold condition over `group` and wrap the matrix.
    pub fn verify(group: &AbelianGroup, rows: &[Vec<Element>]) -> Result<Gms, GmsError> {
        let n = rows.len();
        if n == 0 {
            return Err(GmsError::Empty);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GmsError::NotSquare {
                    rows: n,
                    row: i,
                    cols: row.len(),
                });
            }
        }
        let constant = group.fold(rows[0].iter())?;
        for (i, row) in rows.iter().enumerate() {
            let fold = group.fold(row.iter())?;
            if fold != constant {
                return Err(GmsError::NotMagic {
                    line: Line::Row(i),
                    found: fold,
                    expected: constant,
                });
            }
        }
        for j in 0..n {
            let fold = group.fold(rows.iter().map(|r| &r[j]))?;
            if fold != constant {
                return Err(GmsError::NotMagic {
                    line: Line::Col(j),
                    found: fold,
                    expected: constant,
                });
            }
        }
        Ok(Gms {
            group: group.clone(),
            order: n,
            entries: rows.iter().flatten().cloned().collect(),
            constant,
        })
    }

    /// The all-identity square; its constant is the group identity.
    pub fn identity_gms(group: &AbelianGroup, n: usize) -> Gms {
        assert!(n >= 1);
        let e = group.identity();
        Gms {
            group: group.clone(),
            order: n,
            entries: vec![e.clone(); n * n],
            constant: e,
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn constant(&self) -> &Element {
        &self.constant
    }

    pub fn entry(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.order + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Element]> {
        self.entries.chunks(self.order)
    }

    fn check_compatible(&self, other: &Gms) -> Result<(), GmsError> {
        if self.group != other.group {
            return Err(GmsError::GroupMismatch {
                left: self.group.to_string(),
                right: other.group.to_string(),
            });
        }
        if self.order != other.order {
            return Err(GmsError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    /// Componentwise group operation; constants compose.
    pub fn combine(&self, other: &Gms) -> Result<Gms, GmsError> {
        self.check_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.group.op(a, b))
            .collect::<Result<_, _>>()?;
        Ok(Gms {
            group: self.group.clone(),
            order: self.order,
            entries,
            constant: self.group.op(&self.constant, &other.constant)?,
        })
    }

    /// Entry-wise inverse; the group inverse of `self`.
    pub fn invert(&self) -> Result<Gms, GmsError> {
        let entries = self
            .entries
            .iter()
            .map(|a| self.group.inverse(a))
            .collect::<Result<_, _>>()?;
        Ok(Gms {
            group: self.group.clone(),
            order: self.order,
            entries,
            constant: self.group.inverse(&self.constant)?,
        })
    }
}

impl fmt::Display for Gms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Enumerate the full set of order-n GMS over a finite group, in row-major
/// lexicographic order of the group's element enumeration. Test utility for
/// exhaustive closure checks; bounded by `|G|^(n^2) <= budget` states.
pub fn all_gms(group: &AbelianGroup, n: usize, budget: u128) -> Result<Vec<Gms>, GmsError> {
    let m = group
        .order()
        .ok_or_else(|| AlgebraError::InfiniteCarrier(group.to_string()))? as u128;
    let cells = (n * n) as u32;
    let states = m.checked_pow(cells).filter(|&s| s <= budget).ok_or(
        GmsError::BudgetExceeded {
            states: u128::MAX,
            budget,
        },
    )?;
    if states > budget {
        return Err(GmsError::BudgetExceeded { states, budget });
    }
    let elems = group.elements()?;
    let mut out = Vec::new();
    let mut digits = vec![0usize; n * n];
    loop {
        let rows: Vec<Vec<Element>> = (0..n)
            .map(|i| (0..n).map(|j| elems[digits[i * n + j]].clone()).collect())
            .collect();
        if let Ok(sq) = Gms::verify(group, &rows) {
            out.push(sq);
        }
        // odometer increment, most significant digit first for lex order
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
