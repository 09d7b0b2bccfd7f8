//! JSON matrix and independence-system formats shared by the CLI, the file
//! fixtures, and foreign-language callers.
//!
//! Matrix document: `{"order": 3, "modulus": null, "entries": [[4,9,2],...]}`.
//! `"modulus": null` selects the integers, `"modulus": m` selects `Z_m`, and
//! product groups use `"moduli": [m1, m2, ...]` with tuple entries. Entries
//! are exact integers; arbitrary precision survives the round trip.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{AbelianGroup, CommutativeRing, Element};
use crate::gms::{Gms, GmsError};
use crate::matroid::{IndependenceSystem, MatroidError};
use crate::pms::{Pms, PmsError};
use crate::ring_gms::{RingGms, RingGmsError};

#[derive(Error, Debug)]
pub enum JsonError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("bad entry {0}: expected an integer (or a tuple matching \"moduli\")")]
    BadEntry(String),
    #[error("\"modulus\" and \"moduli\" cannot both be set")]
    ConflictingCarrier,
    #[error("order field is {declared} but the matrix has {actual} rows")]
    OrderMismatch { declared: usize, actual: usize },
    #[error("product carriers have no ring structure; use \"modulus\" or null")]
    NoRingStructure,
    #[error(transparent)]
    Pms(#[from] PmsError),
    #[error(transparent)]
    Gms(#[from] GmsError),
    #[error(transparent)]
    RingGms(#[from] RingGmsError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// On-disk matrix form.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct MatrixDoc {
    pub order: usize,
    pub modulus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moduli: Option<Vec<u64>>,
    pub entries: Vec<Vec<Value>>,
}

fn bigint_to_value(v: &BigInt) -> Value {
    serde_json::from_str(&v.to_string()).expect("integer literal parses")
}

fn value_to_bigint(v: &Value) -> Result<BigInt, JsonError> {
    match v {
        Value::Number(n) => {
            BigInt::from_str(&n.to_string()).map_err(|_| JsonError::BadEntry(n.to_string()))
        }
        other => Err(JsonError::BadEntry(other.to_string())),
    }
}

fn value_to_element(v: &Value, group: &AbelianGroup) -> Result<Element, JsonError> {
    match group {
        AbelianGroup::Integers => Ok(Element::Int(value_to_bigint(v)?)),
        AbelianGroup::Mod(m) => {
            let raw = value_to_bigint(v)?;
            let val = u64::try_from(&raw).map_err(|_| JsonError::BadEntry(raw.to_string()))?;
            if val >= *m {
                return Err(JsonError::BadEntry(format!("{val} is not a residue mod {m}")));
            }
            Ok(Element::Residue {
                value: val,
                modulus: *m,
            })
        }
        AbelianGroup::Product(parts) => {
            let Value::Array(items) = v else {
                return Err(JsonError::BadEntry(v.to_string()));
            };
            if items.len() != parts.len() {
                return Err(JsonError::BadEntry(v.to_string()));
            }
            items
                .iter()
                .zip(parts)
                .map(|(item, g)| value_to_element(item, g))
                .collect::<Result<Vec<_>, _>>()
                .map(Element::Tuple)
        }
    }
}

fn element_to_value(e: &Element) -> Value {
    match e {
        Element::Int(v) => bigint_to_value(v),
        Element::Residue { value, .. } => Value::Number((*value).into()),
        Element::Tuple(parts) => Value::Array(parts.iter().map(element_to_value).collect()),
    }
}

impl MatrixDoc {
    /// The abelian group selected by the carrier fields.
    pub fn group(&self) -> Result<AbelianGroup, JsonError> {
        match (&self.modulus, &self.moduli) {
            (Some(_), Some(_)) => Err(JsonError::ConflictingCarrier),
            (Some(m), None) => Ok(AbelianGroup::modular(*m)),
            (None, Some(ms)) => Ok(AbelianGroup::Product(
                ms.iter().map(|&m| AbelianGroup::modular(m)).collect(),
            )),
            (None, None) => Ok(AbelianGroup::Integers),
        }
    }

    /// The commutative ring selected by the carrier fields; product carriers
    /// are rejected.
    pub fn ring(&self) -> Result<CommutativeRing, JsonError> {
        match (&self.modulus, &self.moduli) {
            (Some(_), Some(_)) => Err(JsonError::ConflictingCarrier),
            (None, Some(_)) => Err(JsonError::NoRingStructure),
            (Some(m), None) => Ok(CommutativeRing::modular(*m)),
            (None, None) => Ok(CommutativeRing::Integers),
        }
    }

    fn check_order(&self) -> Result<(), JsonError> {
        if self.entries.len() != self.order {
            return Err(JsonError::OrderMismatch {
                declared: self.order,
                actual: self.entries.len(),
            });
        }
        Ok(())
    }

    pub fn from_pms(sq: &Pms) -> MatrixDoc {
        MatrixDoc {
            order: sq.order(),
            modulus: None,
            moduli: None,
            entries: sq
                .rows()
                .map(|r| r.iter().map(bigint_to_value).collect())
                .collect(),
        }
    }

    /// Parse and verify as an integer PMS.
    pub fn to_pms(&self) -> Result<Pms, JsonError> {
        self.check_order()?;
        if self.modulus.is_some() || self.moduli.is_some() {
            return Err(JsonError::NoRingStructure);
        }
        let rows: Vec<Vec<BigInt>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(value_to_bigint).collect())
            .collect::<Result<_, _>>()?;
        Ok(Pms::verify(&rows)?)
    }

    pub fn from_gms(sq: &Gms) -> MatrixDoc {
        let (modulus, moduli) = match sq.group() {
            AbelianGroup::Integers => (None, None),
            AbelianGroup::Mod(m) => (Some(*m), None),
            AbelianGroup::Product(parts) => (
                None,
                Some(
                    parts
                        .iter()
                        .map(|g| match g {
                            AbelianGroup::Mod(m) => *m,
                            _ => unreachable!("products are built from residues"),
                        })
                        .collect(),
                ),
            ),
        };
        MatrixDoc {
            order: sq.order(),
            modulus,
            moduli,
            entries: (0..sq.order())
                .map(|i| {
                    (0..sq.order())
                        .map(|j| element_to_value(sq.entry(i, j)))
                        .collect()
                })
                .collect(),
        }
    }

    /// Parse and verify over the declared group.
    pub fn to_gms(&self) -> Result<Gms, JsonError> {
        self.check_order()?;
        let group = self.group()?;
        let rows: Vec<Vec<Element>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|v| value_to_element(v, &group)).collect())
            .collect::<Result<_, _>>()?;
        Ok(Gms::verify(&group, &rows)?)
    }

    pub fn from_ring_gms(sq: &RingGms) -> MatrixDoc {
        let modulus = match sq.ring() {
            CommutativeRing::Integers => None,
            CommutativeRing::Mod(m) => Some(*m),
        };
        MatrixDoc {
            order: sq.order(),
            modulus,
            moduli: None,
            entries: (0..sq.order())
                .map(|i| {
                    (0..sq.order())
                        .map(|j| element_to_value(sq.entry(i, j)))
                        .collect()
                })
                .collect(),
        }
    }

    /// Parse and verify both ring clauses over the declared ring.
    pub fn to_ring_gms(&self) -> Result<RingGms, JsonError> {
        self.check_order()?;
        let ring = self.ring()?;
        let group = ring.additive_group();
        let rows: Vec<Vec<Element>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|v| value_to_element(v, &group)).collect())
            .collect::<Result<_, _>>()?;
        Ok(RingGms::rverify(&ring, &rows)?)
    }

    pub fn read(path: &Path) -> Result<MatrixDoc, JsonError> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn write(&self, path: &Path) -> Result<(), JsonError> {
        std::fs::write(path, self.to_json_string())?;
        Ok(())
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string(self).expect("document serializes");
        s.push('\n');
        s
    }
}

/// On-disk independence-system form: ground-set labels plus index subsets.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SystemDoc {
    pub ground: Vec<String>,
    pub independent: Vec<Vec<usize>>,
}

impl SystemDoc {
    pub fn from_system(sys: &IndependenceSystem) -> SystemDoc {
        SystemDoc {
            ground: sys.labels().to_vec(),
            independent: sys.sets().to_vec(),
        }
    }

    pub fn to_system(&self) -> Result<IndependenceSystem, JsonError> {
        Ok(IndependenceSystem::new(
            self.ground.clone(),
            self.independent.clone(),
        )?)
    }

    pub fn read(path: &Path) -> Result<SystemDoc, JsonError> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

/// Render a matrix as aligned text rows, for reports.
pub fn render_rows(entries: &[Vec<String>]) -> String {
    let width = entries
        .iter()
        .flatten()
        .map(|s| s.len())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for row in entries {
        let cells: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        let _ = writeln!(out, "  [ {} ]", cells.join(" "));
    }
    out
}
