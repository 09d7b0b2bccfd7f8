//! Abelian groups and commutative rings with unit, as explicit carrier
//! structures that magic-square machinery can be generic over.
//!
//! Shipped carriers: the integers `Z`, residues `Z_m` for any `m >= 1`, and
//! finite direct products of groups. Elements carry enough of their carrier
//! descriptor (the modulus, for residues) that mixing structures is detected
//! as a hard error rather than silently coerced.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// A value of some declared carrier.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Element {
    /// An integer, carrier `Z`.
    Int(BigInt),
    /// A residue `0 <= value < modulus`, carrier `Z_modulus`.
    Residue { value: u64, modulus: u64 },
    /// A tuple over a product carrier, componentwise.
    Tuple(Vec<Element>),
}

impl Element {
    pub fn int(v: i64) -> Self {
        Element::Int(BigInt::from(v))
    }

    pub fn residue(value: u64, modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        Element::Residue {
            value: value % modulus,
            modulus,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Int(v) => write!(f, "{v}"),
            Element::Residue { value, .. } => write!(f, "{value}"),
            Element::Tuple(parts) => {
                write!(f, "(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("element {element} does not belong to carrier {carrier}")]
    CarrierMismatch { carrier: String, element: String },
    #[error("carrier {0} is infinite; exhaustive enumeration is not possible")]
    InfiniteCarrier(String),
}

/// An abelian group structure: carrier descriptor, operation, identity,
/// inverse map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AbelianGroup {
    /// `(Z, +)`.
    Integers,
    /// `(Z_m, + mod m)`, `m >= 1`.
    Mod(u64),
    /// Finite direct product, componentwise operation.
    Product(Vec<AbelianGroup>),
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbelianGroup::Integers => write!(f, "Z"),
            AbelianGroup::Mod(m) => write!(f, "Z_{m}"),
            AbelianGroup::Product(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

impl AbelianGroup {
    pub fn modular(m: u64) -> Self {
        assert!(m >= 1, "modulus must be positive");
        AbelianGroup::Mod(m)
    }

    pub fn contains(&self, e: &Element) -> bool {
        match (self, e) {
            (AbelianGroup::Integers, Element::Int(_)) => true,
            (AbelianGroup::Mod(m), Element::Residue { value, modulus }) => {
                modulus == m && value < m
            }
            (AbelianGroup::Product(parts), Element::Tuple(vals)) => {
                parts.len() == vals.len()
                    && parts.iter().zip(vals).all(|(g, v)| g.contains(v))
            }
            _ => false,
        }
    }

    fn mismatch(&self, e: &Element) -> AlgebraError {
        AlgebraError::CarrierMismatch {
            carrier: self.to_string(),
            element: e.to_string(),
        }
    }

    pub fn op(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        if !self.contains(a) {
            return Err(self.mismatch(a));
        }
        if !self.contains(b) {
            return Err(self.mismatch(b));
        }
        Ok(self.op_unchecked(a, b))
    }

    fn op_unchecked(&self, a: &Element, b: &Element) -> Element {
        match (self, a, b) {
            (AbelianGroup::Integers, Element::Int(x), Element::Int(y)) => Element::Int(x + y),
            (
                AbelianGroup::Mod(m),
                Element::Residue { value: x, .. },
                Element::Residue { value: y, .. },
            ) => Element::Residue {
                value: (x + y) % m,
                modulus: *m,
            },
            (AbelianGroup::Product(parts), Element::Tuple(xs), Element::Tuple(ys)) => {
                Element::Tuple(
                    parts
                        .iter()
                        .zip(xs.iter().zip(ys))
                        .map(|(g, (x, y))| g.op_unchecked(x, y))
                        .collect(),
                )
            }
            _ => unreachable!("checked by contains"),
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            AbelianGroup::Integers => Element::Int(BigInt::zero()),
            AbelianGroup::Mod(m) => Element::Residue {
                value: 0,
                modulus: *m,
            },
            AbelianGroup::Product(parts) => {
                Element::Tuple(parts.iter().map(|g| g.identity()).collect())
            }
        }
    }

    pub fn inverse(&self, a: &Element) -> Result<Element, AlgebraError> {
        if !self.contains(a) {
            return Err(self.mismatch(a));
        }
        Ok(match (self, a) {
            (AbelianGroup::Integers, Element::Int(x)) => Element::Int(-x),
            (AbelianGroup::Mod(m), Element::Residue { value, .. }) => Element::Residue {
                value: (m - value) % m,
                modulus: *m,
            },
            (AbelianGroup::Product(parts), Element::Tuple(xs)) => Element::Tuple(
                parts
                    .iter()
                    .zip(xs)
                    .map(|(g, x)| g.inverse(x))
                    .collect::<Result<_, _>>()?,
            ),
            _ => unreachable!("checked by contains"),
        })
    }

    /// Left-to-right fold; order is immaterial since the group is abelian.
    pub fn fold<'a, I: IntoIterator<Item = &'a Element>>(
        &self,
        items: I,
    ) -> Result<Element, AlgebraError> {
        let mut acc = self.identity();
        for e in items {
            acc = self.op(&acc, e)?;
        }
        Ok(acc)
    }

    /// Number of elements, `None` for infinite carriers.
    pub fn order(&self) -> Option<u64> {
        match self {
            AbelianGroup::Integers => None,
            AbelianGroup::Mod(m) => Some(*m),
            AbelianGroup::Product(parts) => {
                parts.iter().try_fold(1u64, |acc, g| Some(acc * g.order()?))
            }
        }
    }

    /// All elements of a finite carrier, in a fixed lexicographic order.
    pub fn elements(&self) -> Result<Vec<Element>, AlgebraError> {
        match self {
            AbelianGroup::Integers => Err(AlgebraError::InfiniteCarrier(self.to_string())),
            AbelianGroup::Mod(m) => Ok((0..*m)
                .map(|v| Element::Residue {
                    value: v,
                    modulus: *m,
                })
                .collect()),
            AbelianGroup::Product(parts) => {
                let mut out = vec![Vec::new()];
                for g in parts {
                    let comp = g.elements()?;
                    let mut next = Vec::with_capacity(out.len() * comp.len());
                    for prefix in &out {
                        for e in &comp {
                            let mut t = prefix.clone();
                            t.push(e.clone());
                            next.push(t);
                        }
                    }
                    out = next;
                }
                Ok(out.into_iter().map(Element::Tuple).collect())
            }
        }
    }

    fn sample(&self, rng: &mut impl Rng) -> Element {
        match self {
            AbelianGroup::Integers => Element::Int(BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000))),
            AbelianGroup::Mod(m) => Element::Residue {
                value: rng.gen_range(0..*m),
                modulus: *m,
            },
            AbelianGroup::Product(parts) => {
                Element::Tuple(parts.iter().map(|g| g.sample(rng)).collect())
            }
        }
    }

    /// Check the group axioms. Exhaustive for finite carriers whose cube of
    /// the order fits a desk budget, seeded random sampling otherwise.
    pub fn check_axioms(&self, seed: u64, trials: usize) -> AxiomReport {
        let exhaustive = matches!(self.order(), Some(k) if k.saturating_pow(3) <= 2_000_000);
        let pool: Vec<Element> = if exhaustive {
            self.elements().expect("finite carrier")
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..trials.max(2)).map(|_| self.sample(&mut rng)).collect()
        };
        let mut report = AxiomReport::new(exhaustive);
        let op = |a: &Element, b: &Element| self.op_unchecked(a, b);

        report.check("closure", pairs(&pool), |(a, b)| {
            self.contains(&op(a, b)).then_some(()).ok_or(format!("{a} * {b} left the carrier"))
        });
        report.check("associativity", triples(&pool, exhaustive), |(a, b, c)| {
            (op(&op(a, b), c) == op(a, &op(b, c)))
                .then_some(())
                .ok_or(format!("({a} * {b}) * {c} != {a} * ({b} * {c})"))
        });
        report.check("commutativity", pairs(&pool), |(a, b)| {
            (op(a, b) == op(b, a)).then_some(()).ok_or(format!("{a} * {b} != {b} * {a}"))
        });
        let e = self.identity();
        report.check("identity", pool.iter().map(|a| (a,)), |(a,)| {
            (op(a, &e) == **a).then_some(()).ok_or(format!("{a} * e != {a}"))
        });
        report.check("inverse", pool.iter().map(|a| (a,)), |(a,)| {
            let inv = self.inverse(a).map_err(|err| err.to_string())?;
            (op(a, &inv) == e).then_some(()).ok_or(format!("{a} * inv({a}) != e"))
        });
        report
    }
}

/// A commutative ring with unit: carrier, addition, multiplication, zero,
/// unit, additive inverse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CommutativeRing {
    /// `(Z, +, *)`.
    Integers,
    /// `(Z_m, + mod m, * mod m)`, `m >= 1`.
    Mod(u64),
}

impl fmt::Display for CommutativeRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommutativeRing::Integers => write!(f, "Z"),
            CommutativeRing::Mod(m) => write!(f, "Z_{m}"),
        }
    }
}

impl CommutativeRing {
    pub fn modular(m: u64) -> Self {
        assert!(m >= 1, "modulus must be positive");
        CommutativeRing::Mod(m)
    }

    /// The underlying additive group.
    pub fn additive_group(&self) -> AbelianGroup {
        match self {
            CommutativeRing::Integers => AbelianGroup::Integers,
            CommutativeRing::Mod(m) => AbelianGroup::Mod(*m),
        }
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.additive_group().contains(e)
    }

    fn mismatch(&self, e: &Element) -> AlgebraError {
        AlgebraError::CarrierMismatch {
            carrier: self.to_string(),
            element: e.to_string(),
        }
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.additive_group().op(a, b)
    }

    pub fn neg(&self, a: &Element) -> Result<Element, AlgebraError> {
        self.additive_group().inverse(a)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        if !self.contains(a) {
            return Err(self.mismatch(a));
        }
        if !self.contains(b) {
            return Err(self.mismatch(b));
        }
        Ok(self.mul_unchecked(a, b))
    }

    fn mul_unchecked(&self, a: &Element, b: &Element) -> Element {
        match (self, a, b) {
            (CommutativeRing::Integers, Element::Int(x), Element::Int(y)) => Element::Int(x * y),
            (
                CommutativeRing::Mod(m),
                Element::Residue { value: x, .. },
                Element::Residue { value: y, .. },
            ) => Element::Residue {
                value: ((*x as u128 * *y as u128) % *m as u128) as u64,
                modulus: *m,
            },
            _ => unreachable!("checked by contains"),
        }
    }

    pub fn zero(&self) -> Element {
        self.additive_group().identity()
    }

    pub fn one(&self) -> Element {
        match self {
            CommutativeRing::Integers => Element::Int(BigInt::from(1)),
            CommutativeRing::Mod(m) => Element::Residue {
                value: 1 % m,
                modulus: *m,
            },
        }
    }

    /// `a` multiplied by itself `k` times; `k = 0` gives the unit.
    pub fn pow(&self, a: &Element, k: usize) -> Result<Element, AlgebraError> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Element>>(
        &self,
        items: I,
    ) -> Result<Element, AlgebraError> {
        self.additive_group().fold(items)
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Element>>(
        &self,
        items: I,
    ) -> Result<Element, AlgebraError> {
        let mut acc = self.one();
        for e in items {
            acc = self.mul(&acc, e)?;
        }
        Ok(acc)
    }

    pub fn order(&self) -> Option<u64> {
        self.additive_group().order()
    }

    pub fn elements(&self) -> Result<Vec<Element>, AlgebraError> {
        self.additive_group().elements()
    }

    /// Ring axioms: additive group laws, commutative associative unital
    /// multiplication, distributivity.
    pub fn check_axioms(&self, seed: u64, trials: usize) -> AxiomReport {
        let mut report = self.additive_group().check_axioms(seed, trials);
        let exhaustive = report.exhaustive;
        let pool: Vec<Element> = if exhaustive {
            self.elements().expect("finite carrier")
        } else {
            let g = self.additive_group();
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
            (0..trials.max(2)).map(|_| g.sample(&mut rng)).collect()
        };
        let mul = |a: &Element, b: &Element| self.mul_unchecked(a, b);
        let add = |a: &Element, b: &Element| self.additive_group().op(a, b).unwrap();

        report.check("mul commutativity", pairs(&pool), |(a, b)| {
            (mul(a, b) == mul(b, a)).then_some(()).ok_or(format!("{a} * {b} != {b} * {a}"))
        });
        report.check("mul associativity", triples(&pool, exhaustive), |(a, b, c)| {
            (mul(&mul(a, b), c) == mul(a, &mul(b, c)))
                .then_some(())
                .ok_or(format!("({a}{b}){c} != {a}({b}{c})"))
        });
        let one = self.one();
        report.check("unit", pool.iter().map(|a| (a,)), |(a,)| {
            (mul(a, &one) == **a).then_some(()).ok_or(format!("{a} * 1 != {a}"))
        });
        report.check("distributivity", triples(&pool, exhaustive), |(a, b, c)| {
            (mul(a, &add(b, c)) == add(&mul(a, b), &mul(a, c)))
                .then_some(())
                .ok_or(format!("{a}({b}+{c}) != {a}{b}+{a}{c}"))
        });
        report
    }
}

/// An explicit binary-operation table on `{0, .., size-1}`, for checking the
/// group axioms on hand-built (possibly deliberately broken) structures.
#[derive(Clone, Debug)]
pub struct OpTable {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
}

impl OpTable {
    /// Materialize a finite group's operation as a table.
    pub fn from_group(g: &AbelianGroup) -> Result<OpTable, AlgebraError> {
        let elems = g.elements()?;
        let index = |e: &Element| elems.iter().position(|x| x == e).unwrap();
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| index(&g.op_unchecked(a, b))).collect())
            .collect();
        Ok(OpTable {
            size: elems.len(),
            table,
        })
    }

    /// Exhaustive abelian-group axiom check over the table.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.size;
        let mut report = AxiomReport::new(true);
        let all: Vec<usize> = (0..n).collect();

        report.check("closure", pairs(&all), |&(a, b)| {
            (self.table[*a][*b] < n)
                .then_some(())
                .ok_or(format!("{a} * {b} = {} is outside the carrier", self.table[*a][*b]))
        });
        if !report.all_pass() {
            return report; // later laws would index out of bounds
        }
        let op = |a: usize, b: usize| self.table[a][b];
        report.check("associativity", triples(&all, true), |&(a, b, c)| {
            (op(op(*a, *b), *c) == op(*a, op(*b, *c)))
                .then_some(())
                .ok_or(format!("({a}*{b})*{c} != {a}*({b}*{c})"))
        });
        report.check("commutativity", pairs(&all), |&(a, b)| {
            (op(*a, *b) == op(*b, *a)).then_some(()).ok_or(format!("{a}*{b} != {b}*{a}"))
        });
        let identity = (0..n).find(|&e| (0..n).all(|a| op(a, e) == a && op(e, a) == a));
        match identity {
            None => report.fail("identity", "no two-sided identity element".to_string()),
            Some(e) => {
                report.pass("identity");
                report.check("inverse", all.iter().map(|a| (a,)), |&(a,)| {
                    (0..n)
                        .any(|b| op(*a, b) == e)
                        .then_some(())
                        .ok_or(format!("element {a} has no inverse"))
                });
            }
        }
        report
    }
}

/// Per-axiom pass/fail with a witness for the first violation found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub law: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    /// True when every pair/triple of the carrier was tested.
    pub exhaustive: bool,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    fn new(exhaustive: bool) -> Self {
        AxiomReport {
            exhaustive,
            checks: Vec::new(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn violation(&self, law: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.law == law && !c.passed)
    }

    fn pass(&mut self, law: &'static str) {
        self.checks.push(AxiomCheck {
            law,
            passed: true,
            witness: None,
        });
    }

    fn fail(&mut self, law: &'static str, witness: String) {
        self.checks.push(AxiomCheck {
            law,
            passed: false,
            witness: Some(witness),
        });
    }

    fn check<T, I, F>(&mut self, law: &'static str, cases: I, mut f: F)
    where
        I: IntoIterator<Item = T>,
        F: FnMut(&T) -> Result<(), String>,
    {
        for case in cases {
            if let Err(witness) = f(&case) {
                self.fail(law, witness);
                return;
            }
        }
        self.pass(law);
    }
}

fn pairs<T>(pool: &[T]) -> impl Iterator<Item = (&T, &T)> {
    pool.iter().flat_map(move |a| pool.iter().map(move |b| (a, b)))
}

fn triples<'a, T>(pool: &'a [T], exhaustive: bool) -> Box<dyn Iterator<Item = (&'a T, &'a T, &'a T)> + 'a> {
    if exhaustive {
        Box::new(pool.iter().flat_map(move |a| {
            pool.iter()
                .flat_map(move |b| pool.iter().map(move |c| (a, b, c)))
        }))
    } else {
        // sampled pool: zip rotations so the case count stays linear
        let n = pool.len();
        Box::new((0..n).map(move |i| (&pool[i], &pool[(i + 1) % n], &pool[(i + 2) % n])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_inverse_law() {
        let g = AbelianGroup::Integers;
        assert_eq!(g.op(&Element::int(3), &Element::int(-3)).unwrap(), Element::int(0));
    }

    #[test]
    fn modular_op() {
        let g = AbelianGroup::modular(5);
        assert_eq!(
            g.op(&Element::residue(4, 5), &Element::residue(3, 5)).unwrap(),
            Element::residue(2, 5)
        );
    }

    #[test]
    fn product_componentwise() {
        let g = AbelianGroup::Product(vec![AbelianGroup::modular(2), AbelianGroup::modular(3)]);
        let x = Element::Tuple(vec![Element::residue(1, 2), Element::residue(2, 3)]);
        assert_eq!(
            g.op(&x, &x).unwrap(),
            Element::Tuple(vec![Element::residue(0, 2), Element::residue(1, 3)])
        );
    }

    #[test]
    fn carrier_mismatch_is_hard_error() {
        let g = AbelianGroup::modular(3);
        let foreign = Element::residue(2, 5);
        assert!(matches!(
            g.op(&g.identity(), &foreign),
            Err(AlgebraError::CarrierMismatch { .. })
        ));
        assert!(g.op(&Element::int(1), &g.identity()).is_err());
    }

    #[test]
    fn ring_ops() {
        let z = CommutativeRing::Integers;
        assert_eq!(z.mul(&Element::int(-5), &Element::int(4)).unwrap(), Element::int(-20));
        assert_eq!(
            z.add(&Element::int(7), &z.neg(&Element::int(7)).unwrap()).unwrap(),
            Element::int(0)
        );
        let z4 = CommutativeRing::modular(4);
        assert_eq!(
            z4.mul(&Element::residue(2, 4), &Element::residue(2, 4)).unwrap(),
            Element::residue(0, 4)
        );
    }

    #[test]
    fn ring_axioms_z6() {
        let report = CommutativeRing::modular(6).check_axioms(0, 0);
        assert!(report.exhaustive);
        assert!(report.all_pass(), "{:?}", report.checks);
    }

    #[test]
    fn group_axioms_small_moduli() {
        for m in 2..=8 {
            let report = AbelianGroup::modular(m).check_axioms(0, 0);
            assert!(report.exhaustive);
            assert!(report.all_pass(), "Z_{m}: {:?}", report.checks);
        }
    }

    #[test]
    fn integer_group_axioms_sampled() {
        let report = AbelianGroup::Integers.check_axioms(42, 64);
        assert!(!report.exhaustive);
        assert!(report.all_pass());
    }

    #[test]
    fn broken_table_reports_witness() {
        // Z_3 addition with one corrupted cell
        let mut t = OpTable::from_group(&AbelianGroup::modular(3)).unwrap();
        t.table[1][2] = 1; // should be 0
        let report = t.check_axioms();
        assert!(!report.all_pass());
        let bad = report.checks.iter().find(|c| !c.passed).unwrap();
        assert!(bad.witness.is_some());
    }

    #[test]
    fn table_roundtrip_passes() {
        let t = OpTable::from_group(&AbelianGroup::Product(vec![
            AbelianGroup::modular(2),
            AbelianGroup::modular(2),
        ]))
        .unwrap();
        assert!(t.check_axioms().all_pass());
    }
}
