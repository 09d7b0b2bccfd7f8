//! Pseudo magic squares over the integers.
//!
//! A `Pms` is an `n x n` integer matrix whose row sums and column sums all
//! equal one constant. Values are only constructed through verifying or
//! provably-closed operations, so every held `Pms` satisfies the line-sum
//! invariant. The set of order-n squares is a free abelian group of rank
//! `(n-1)^2 + 1`; [`lattice_basis`] materializes an explicit basis and
//! [`decompose`] inverts it.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

/// A row or column of a square, used in violation reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Line {
    Row(usize),
    Col(usize),
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Row(i) => write!(f, "row {i}"),
            Line::Col(j) => write!(f, "column {j}"),
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PmsError {
    #[error("matrix is not square: {rows} rows but row {row} has {cols} entries")]
    NotSquare { rows: usize, row: usize, cols: usize },
    #[error("matrix is empty")]
    Empty,
    #[error("not magic: {line} sums to {found}, expected {expected}")]
    NotMagic {
        line: Line,
        found: BigInt,
        expected: BigInt,
    },
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("square is not in the integer span of the given basis")]
    NotInSpan,
}

/// An order-n integer matrix with all row and column sums equal to one
/// constant. Immutable; the constant is computed at construction and cached.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Pms {
    order: usize,
    entries: Vec<BigInt>, // row-major, length order^2
    constant: BigInt,
}

impl Pms {
    /// Check the line-sum condition and wrap the matrix. Reports the first
    /// deviating row or column together with both sums.
    pub fn verify(rows: &[Vec<BigInt>]) -> Result<Pms, PmsError> {
        let n = rows.len();
        if n == 0 {
            return Err(PmsError::Empty);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(PmsError::NotSquare {
                    rows: n,
                    row: i,
                    cols: row.len(),
                });
            }
        }
        let constant: BigInt = rows[0].iter().sum();
        for (i, row) in rows.iter().enumerate() {
            let sum: BigInt = row.iter().sum();
            if sum != constant {
                return Err(PmsError::NotMagic {
                    line: Line::Row(i),
                    found: sum,
                    expected: constant,
                });
            }
        }
        for j in 0..n {
            let sum: BigInt = rows.iter().map(|r| &r[j]).sum();
            if sum != constant {
                return Err(PmsError::NotMagic {
                    line: Line::Col(j),
                    found: sum,
                    expected: constant,
                });
            }
        }
        Ok(Pms {
            order: n,
            entries: rows.iter().flatten().cloned().collect(),
            constant,
        })
    }

    /// Convenience constructor from machine integers; verifies.
    pub fn verify_i64(rows: &[Vec<i64>]) -> Result<Pms, PmsError> {
        let big: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        Pms::verify(&big)
    }

    // Internal constructor for operations whose output is magic by
    // construction. Debug builds re-verify.
    fn from_parts(order: usize, entries: Vec<BigInt>, constant: BigInt) -> Pms {
        let sq = Pms {
            order,
            entries,
            constant,
        };
        debug_assert!({
            let rows: Vec<Vec<BigInt>> = (0..order)
                .map(|i| sq.row(i).to_vec())
                .collect();
            Pms::verify(&rows).map(|v| v == sq).unwrap_or(false)
        });
        sq
    }

    /// The all-zero square, identity of the group.
    pub fn zero(n: usize) -> Pms {
        assert!(n >= 1);
        Pms::from_parts(n, vec![BigInt::zero(); n * n], BigInt::zero())
    }

    /// The identity matrix, a PMS with constant 1.
    pub fn identity_matrix(n: usize) -> Pms {
        assert!(n >= 1);
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        Pms::from_parts(n, entries, BigInt::one())
    }

    /// The square with every entry `v`, constant `n * v`.
    pub fn constant_square(n: usize, v: &BigInt) -> Pms {
        assert!(n >= 1);
        Pms::from_parts(n, vec![v.clone(); n * n], v * n)
    }

    /// The Loh-Shu square, constant 15. Canonical test fixture.
    pub fn loh_shu() -> Pms {
        Pms::verify_i64(&[vec![4, 9, 2], vec![3, 5, 7], vec![8, 1, 6]]).unwrap()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn constant(&self) -> &BigInt {
        &self.constant
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.order)
    }

    /// Row-major entry vector of length `order^2`.
    pub fn flatten(&self) -> &[BigInt] {
        &self.entries
    }

    fn check_order(&self, other: &Pms) -> Result<(), PmsError> {
        if self.order != other.order {
            return Err(PmsError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    /// Matrix addition; constants add.
    pub fn add(&self, other: &Pms) -> Result<Pms, PmsError> {
        self.check_order(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Pms::from_parts(
            self.order,
            entries,
            &self.constant + &other.constant,
        ))
    }

    /// Entry-wise negation, the group inverse.
    pub fn neg(&self) -> Pms {
        Pms::from_parts(
            self.order,
            self.entries.iter().map(|a| -a).collect(),
            -&self.constant,
        )
    }

    /// Every entry multiplied by `k`; constant becomes `k * c`.
    pub fn scale(&self, k: &BigInt) -> Pms {
        Pms::from_parts(
            self.order,
            self.entries.iter().map(|a| a * k).collect(),
            k * &self.constant,
        )
    }

    /// Every entry increased by `k`; constant becomes `c + n * k`.
    pub fn shift(&self, k: &BigInt) -> Pms {
        Pms::from_parts(
            self.order,
            self.entries.iter().map(|a| a + k).collect(),
            &self.constant + k * self.order,
        )
    }

    /// The `2n x 2n` block matrix with `self` on the diagonal blocks and
    /// `other` off-diagonal; constant is the sum of the two constants.
    pub fn direct_sum(&self, other: &Pms) -> Result<Pms, PmsError> {
        self.check_order(other)?;
        let n = self.order;
        let m = 2 * n;
        let mut entries = vec![BigInt::zero(); m * m];
        for i in 0..n {
            for j in 0..n {
                entries[i * m + j] = self.entry(i, j).clone();
                entries[i * m + (j + n)] = other.entry(i, j).clone();
                entries[(i + n) * m + j] = other.entry(i, j).clone();
                entries[(i + n) * m + (j + n)] = self.entry(i, j).clone();
            }
        }
        Ok(Pms::from_parts(m, entries, &self.constant + &other.constant))
    }

    /// Kronecker (tensor) product. Entry `((i,k),(j,l))` is
    /// `self[i][j] * other[k][l]`; constants multiply. Orders may differ.
    pub fn kronecker(&self, other: &Pms) -> Pms {
        let n = self.order;
        let m = other.order;
        let nm = n * m;
        let mut entries = vec![BigInt::zero(); nm * nm];
        for i in 0..n {
            for j in 0..n {
                let a = self.entry(i, j);
                for k in 0..m {
                    for l in 0..m {
                        entries[(i * m + k) * nm + (j * m + l)] = a * other.entry(k, l);
                    }
                }
            }
        }
        Pms::from_parts(nm, entries, &self.constant * &other.constant)
    }

    pub fn transpose(&self) -> Pms {
        let n = self.order;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entry(i, j).clone();
            }
        }
        Pms::from_parts(n, entries, self.constant.clone())
    }

    /// Rotate 90 degrees clockwise.
    pub fn rotate(&self) -> Pms {
        let n = self.order;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + (n - 1 - i)] = self.entry(i, j).clone();
            }
        }
        Pms::from_parts(n, entries, self.constant.clone())
    }
}

impl fmt::Display for Pms {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// An explicit basis of the free abelian group of order-n PMS, of size
/// `(n-1)^2 + 1`.
///
/// The first element is the identity matrix (constant 1); the rest are the
/// constant-zero squares `B_{ij}` (`i, j < n-1`) with `+1` at `(i,j)` and
/// `(n-1,n-1)` and `-1` at `(i,n-1)` and `(n-1,j)`. Every order-n PMS is an
/// integer combination: subtract `c` copies of the identity matrix, then the
/// remaining zero-constant square is freely coordinatized by its upper-left
/// `(n-1) x (n-1)` block.
pub fn lattice_basis(n: usize) -> Vec<Pms> {
    assert!(n >= 1);
    let mut basis = vec![Pms::identity_matrix(n)];
    for i in 0..n.saturating_sub(1) {
        for j in 0..n - 1 {
            let mut entries = vec![BigInt::zero(); n * n];
            entries[i * n + j] = BigInt::one();
            entries[i * n + (n - 1)] = -BigInt::one();
            entries[(n - 1) * n + j] = -BigInt::one();
            entries[(n - 1) * n + (n - 1)] = BigInt::one();
            basis.push(Pms::from_parts(n, entries, BigInt::zero()));
        }
    }
    basis
}

/// Integer linear combination of basis squares.
pub fn compose(coeffs: &[BigInt], basis: &[Pms]) -> Result<Pms, PmsError> {
    assert_eq!(coeffs.len(), basis.len(), "one coefficient per basis square");
    let n = basis.first().ok_or(PmsError::Empty)?.order();
    let mut acc = Pms::zero(n);
    for (k, b) in coeffs.iter().zip(basis) {
        acc = acc.add(&b.scale(k))?;
    }
    Ok(acc)
}

/// Express `a` as an integer combination of `basis` (as produced by
/// [`lattice_basis`] for `a`'s order). The candidate coordinates are read off
/// the canonical basis layout and the recomposition is checked exactly; any
/// mismatch is a basis defect reported as `NotInSpan`.
pub fn decompose(a: &Pms, basis: &[Pms]) -> Result<Vec<BigInt>, PmsError> {
    let n = a.order();
    if basis.len() != (n - 1) * (n - 1) + 1 {
        return Err(PmsError::NotInSpan);
    }
    let mut coeffs = Vec::with_capacity(basis.len());
    coeffs.push(a.constant().clone());
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            let mut v = a.entry(i, j).clone();
            if i == j {
                v -= a.constant();
            }
            coeffs.push(v);
        }
    }
    if &compose(&coeffs, basis)? != a {
        return Err(PmsError::NotInSpan);
    }
    Ok(coeffs)
}
