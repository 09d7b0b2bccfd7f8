//! Acceptance suite: one test per criterion, each printing a PASS line on
//! success. Expected values tagged as derived are computed by independent
//! oracles implemented in this file (naive filters, permutation brute force,
//! rational elimination), not by the code paths under test.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pmsq::algebra::{CommutativeRing, Element};
use pmsq::enumerate::{canonical_form, count_classes, enumerate_pms, SearchSpec};
use pmsq::gms::all_gms;
use pmsq::harness::random_pms;
use pmsq::pms::{compose, decompose, lattice_basis, Pms};
use pmsq::ring_gms::{all_ring_gms, closure_search, RingGms, Verdict};

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

#[test]
fn criterion_01_paper_fixtures() {
    let t = Instant::now();
    let loh = Pms::verify_i64(&[vec![4, 9, 2], vec![3, 5, 7], vec![8, 1, 6]]).unwrap();
    assert_eq!(*loh.constant(), big(15));
    let loh_elapsed = t.elapsed();
    let t = Instant::now();
    let neg5 = Pms::verify_i64(&vec![vec![-5; 4]; 4]).unwrap();
    assert_eq!(*neg5.constant(), big(-20));
    let neg5_elapsed = t.elapsed();
    assert!(loh_elapsed.as_millis() < 1, "Loh-Shu verify took {loh_elapsed:?}");
    assert!(neg5_elapsed.as_millis() < 1, "all-(-5) verify took {neg5_elapsed:?}");
    println!("criterion 1 (fixtures: Loh-Shu 15, all-(-5) -20): PASS");
}

#[test]
fn criterion_02_group_laws() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE01);
    for n in 1..=5 {
        for _ in 0..1000 {
            let a = random_pms(n, &mut rng, 10_000);
            let b = random_pms(n, &mut rng, 10_000);
            let c = random_pms(n, &mut rng, 10_000);
            assert!(a.flatten().iter().all(|e| e.abs() <= big(1_000_000)));
            assert_eq!(
                a.add(&b).unwrap().add(&c).unwrap(),
                a.add(&b.add(&c).unwrap()).unwrap()
            );
            assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            assert_eq!(a.add(&Pms::zero(n)).unwrap(), a);
            assert_eq!(a.add(&a.neg()).unwrap(), Pms::zero(n));
            assert_eq!(*a.add(&b).unwrap().constant(), a.constant() + b.constant());
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "group-law suite took {elapsed:?}");
    println!("criterion 2 (group laws, 1000 triples for n=1..5): PASS");
}

#[test]
fn criterion_03_direct_sum() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE02);
    for n in 1..=4 {
        for _ in 0..500 {
            let a = random_pms(n, &mut rng, 1000);
            let b = random_pms(n, &mut rng, 1000);
            let c = random_pms(n, &mut rng, 1000);
            let d = random_pms(n, &mut rng, 1000);
            let ds = a.direct_sum(&b).unwrap();
            assert_eq!(ds.order(), 2 * n);
            assert_eq!(*ds.constant(), a.constant() + b.constant());
            assert_eq!(
                ds.add(&c.direct_sum(&d).unwrap()).unwrap(),
                a.add(&c).unwrap().direct_sum(&b.add(&d).unwrap()).unwrap()
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 5, "direct-sum suite took {elapsed:?}");
    println!("criterion 3 (direct sums, 500 pairs for n=1..4): PASS");
}

#[test]
fn criterion_04_finite_group_squares() {
    let start = Instant::now();
    for (m, n) in [(2u64, 2usize), (3, 2), (2, 3)] {
        let group = pmsq::algebra::AbelianGroup::modular(m);
        let set = all_gms(&group, n, 10_000_000).unwrap();
        let identity = pmsq::gms::Gms::identity_gms(&group, n);
        assert!(set.contains(&identity), "Z_{m} n={n}: identity missing");
        for a in &set {
            let inv = a.invert().unwrap();
            assert!(set.contains(&inv), "Z_{m} n={n}: inverse left the set");
            assert_eq!(a.combine(&inv).unwrap(), identity);
            assert_eq!(a.combine(&identity).unwrap(), *a);
            for b in &set {
                let c = a.combine(b).unwrap();
                assert!(set.contains(&c), "Z_{m} n={n}: closure violated");
                assert_eq!(
                    *c.constant(),
                    group.op(a.constant(), b.constant()).unwrap()
                );
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "finite-group suite took {elapsed:?}");
    println!("criterion 4 (finite-group squares, exhaustive Z_2/Z_3): PASS");
}

// independent naive machinery for criterion 5

fn naive_residue_matrices(m: u64, n: usize) -> Vec<Vec<u64>> {
    let cells = n * n;
    let total = (m as u128).pow(cells as u32);
    let mut out = Vec::with_capacity(total as usize);
    for idx in 0..total {
        let mut grid = vec![0u64; cells];
        let mut rest = idx;
        for k in (0..cells).rev() {
            grid[k] = (rest % m as u128) as u64;
            rest /= m as u128;
        }
        out.push(grid);
    }
    out
}

fn naive_is_two_constant(m: u64, n: usize, grid: &[u64]) -> bool {
    let row = |i: usize| (0..n).map(move |j| grid[i * n + j]);
    let col = |j: usize| (0..n).map(move |i| grid[i * n + j]);
    let sum = |it: &mut dyn Iterator<Item = u64>| it.fold(0u64, |a, v| (a + v) % m);
    let prod = |it: &mut dyn Iterator<Item = u64>| it.fold(1u64, |a, v| (a * v) % m);
    let s0 = sum(&mut row(0));
    let p0 = prod(&mut row(0));
    (0..n).all(|i| sum(&mut row(i)) == s0 && prod(&mut row(i)) == p0)
        && (0..n).all(|j| sum(&mut col(j)) == s0 && prod(&mut col(j)) == p0)
}

fn grid_of(sq: &RingGms) -> Vec<u64> {
    (0..sq.order())
        .flat_map(|i| {
            (0..sq.order()).map(move |j| match sq.entry(i, j) {
                Element::Residue { value, .. } => *value,
                _ => panic!("finite ring expected"),
            })
        })
        .collect()
}

#[test]
fn criterion_05_closure_search_matches_naive_oracle() {
    let start = Instant::now();
    for (m, n) in [(2u64, 2usize), (2, 3), (3, 2)] {
        let ring = CommutativeRing::modular(m);
        let report = closure_search(&ring, n, 10_000_000).unwrap();

        // oracle: filter all matrices naively, then the double loop
        let set: Vec<Vec<u64>> = naive_residue_matrices(m, n)
            .into_iter()
            .filter(|g| naive_is_two_constant(m, n, g))
            .collect();
        assert_eq!(report.set_size, set.len(), "Z_{m} n={n}: set size");

        let add = |a: &[u64], b: &[u64]| -> Vec<u64> {
            a.iter().zip(b).map(|(x, y)| (x + y) % m).collect()
        };
        let mul = |a: &[u64], b: &[u64]| -> Vec<u64> {
            a.iter().zip(b).map(|(x, y)| (x * y) % m).collect()
        };
        let first_bad = |op: &dyn Fn(&[u64], &[u64]) -> Vec<u64>| {
            set.iter().enumerate().find_map(|(i, a)| {
                set.iter()
                    .position(|b| !naive_is_two_constant(m, n, &op(a, b)))
                    .map(|j| (i, j))
            })
        };
        for (verdict, oracle) in [
            (&report.add_verdict, first_bad(&add)),
            (&report.mul_verdict, first_bad(&mul)),
        ] {
            match (verdict, oracle) {
                (Verdict::Closed, None) => {}
                (Verdict::Counterexample { left, right, .. }, Some((i, j))) => {
                    assert_eq!(grid_of(left), set[i], "Z_{m} n={n}: left operand");
                    assert_eq!(grid_of(right), set[j], "Z_{m} n={n}: right operand");
                }
                other => panic!("Z_{m} n={n}: verdict/oracle disagree: {other:?}"),
            }
        }

        // determinism across runs and worker counts
        for workers in [1, 4] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .unwrap();
            let again = pool.install(|| closure_search(&ring, n, 10_000_000).unwrap());
            assert_eq!(again, report, "Z_{m} n={n}: not deterministic at {workers} workers");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "closure suite took {elapsed:?}");
    println!("criterion 5 (closure search matches naive double-loop oracle): PASS");
}

// exact rational elimination, independent of the matroid module

fn rational_rank(rows: &[Vec<i64>]) -> usize {
    #[derive(Clone)]
    struct Frac(BigInt, BigInt); // num, den > 0
    impl Frac {
        fn reduce(mut self) -> Frac {
            if self.1.is_negative() {
                self.0 = -self.0;
                self.1 = -self.1.clone();
            }
            let g = self.0.gcd(&self.1);
            if !g.is_zero() {
                Frac(&self.0 / &g, &self.1 / &g)
            } else {
                Frac(BigInt::zero(), BigInt::one())
            }
        }
        fn sub_mul(&self, factor: &Frac, other: &Frac) -> Frac {
            // self - factor * other
            let num = &self.0 * (&factor.1 * &other.1) - (&factor.0 * &other.0) * &self.1;
            let den = &self.1 * &factor.1 * &other.1;
            Frac(num, den).reduce()
        }
        fn div(&self, other: &Frac) -> Frac {
            Frac(&self.0 * &other.1, &self.1 * &other.0).reduce()
        }
        fn is_zero(&self) -> bool {
            self.0.is_zero()
        }
    }
    let mut m: Vec<Vec<Frac>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| Frac(big(v), BigInt::one())).collect())
        .collect();
    let (nrows, ncols) = (m.len(), m.first().map_or(0, |r| r.len()));
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..nrows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].div(&m[rank][col]);
                for c in col..ncols {
                    m[r][c] = m[r][c].sub_mul(&factor, &m[rank][c]);
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

#[test]
fn criterion_06_lattice_rank_and_round_trip() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE06);
    for n in 1..=6usize {
        // constraint system over entries + c: each row/column sums to c
        let unknowns = n * n + 1;
        let mut constraints: Vec<Vec<i64>> = Vec::new();
        for i in 0..n {
            let mut row = vec![0i64; unknowns];
            for j in 0..n {
                row[i * n + j] = 1;
            }
            row[n * n] = -1;
            constraints.push(row);
        }
        for j in 0..n {
            let mut row = vec![0i64; unknowns];
            for i in 0..n {
                row[i * n + j] = 1;
            }
            row[n * n] = -1;
            constraints.push(row);
        }
        let solution_rank = unknowns - rational_rank(&constraints);
        let basis = lattice_basis(n);
        assert_eq!(basis.len(), (n - 1) * (n - 1) + 1);
        assert_eq!(basis.len(), solution_rank, "n={n}: rank oracle disagrees");

        for _ in 0..200 {
            let coeffs: Vec<BigInt> = (0..basis.len())
                .map(|_| big(rng.gen_range(-1000..=1000)))
                .collect();
            let sq = compose(&coeffs, &basis).unwrap();
            // composition must verify as a PMS (verify_i64 path re-checks)
            let rows: Vec<Vec<BigInt>> = sq.rows().map(|r| r.to_vec()).collect();
            assert!(Pms::verify(&rows).is_ok());
            assert_eq!(decompose(&sq, &basis).unwrap(), coeffs);
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "lattice suite took {elapsed:?}");
    println!("criterion 6 (lattice rank (n-1)^2+1 for n=1..6, decompose round trips): PASS");
}

// 9!-permutation brute force, independent of the enumerator

fn permutation_oracle() -> Vec<Pms> {
    use itertools::Itertools;
    let mut out = Vec::new();
    for p in (1i64..=9).permutations(9) {
        let rows = vec![p[0..3].to_vec(), p[3..6].to_vec(), p[6..9].to_vec()];
        let row_ok = rows.iter().all(|r| r.iter().sum::<i64>() == 15);
        let col_ok = (0..3).all(|j| (0..3).map(|i| rows[i][j]).sum::<i64>() == 15);
        if row_ok && col_ok {
            out.push(Pms::verify_i64(&rows).unwrap());
        }
    }
    out.sort();
    out
}

fn naive_filter(spec: &SearchSpec) -> Vec<Pms> {
    let n = spec.order;
    let w = (spec.hi - spec.lo + 1) as u128;
    let total = w.pow((n * n) as u32);
    assert!(total <= 100_000, "naive oracle only runs on small windows");
    let mut out = Vec::new();
    for idx in 0..total {
        let mut grid = vec![0i64; n * n];
        let mut rest = idx;
        for k in (0..n * n).rev() {
            grid[k] = spec.lo + (rest % w) as i64;
            rest /= w;
        }
        let rows: Vec<Vec<i64>> = grid.chunks(n).map(|r| r.to_vec()).collect();
        let sum0: i64 = rows[0].iter().sum();
        let magic = rows.iter().all(|r| r.iter().sum::<i64>() == sum0)
            && (0..n).all(|j| (0..n).map(|i| rows[i][j]).sum::<i64>() == sum0);
        if !magic {
            continue;
        }
        if let Some(c) = spec.constant {
            if sum0 != c {
                continue;
            }
        }
        if spec.require_distinct {
            let mut vals = grid.clone();
            vals.sort_unstable();
            vals.dedup();
            if vals.len() != grid.len() {
                continue;
            }
        }
        out.push(Pms::verify_i64(&rows).unwrap());
    }
    out
}

#[test]
fn criterion_07_order_three_census() {
    let start = Instant::now();

    // pruned enumerator equals the naive filter on small windows
    for spec in [
        SearchSpec::new(1, -3, 3),
        SearchSpec::new(2, 0, 3),
        SearchSpec::new(2, -2, 2).with_constant(0),
        SearchSpec::new(3, 0, 1),
        SearchSpec::new(3, 0, 2),
        SearchSpec::new(3, -1, 1).with_constant(0),
        SearchSpec::new(3, 0, 2).distinct(),
    ] {
        let mut naive = naive_filter(&spec);
        naive.sort();
        let mut pruned = enumerate_pms(&spec).unwrap();
        pruned.sort();
        assert_eq!(pruned, naive, "pruned vs naive mismatch for {spec:?}");
    }

    // census against the 9!-permutation oracle
    let spec = SearchSpec::new(3, 1, 9).with_constant(15).distinct();
    let mut emitted = enumerate_pms(&spec).unwrap();
    emitted.sort();
    let oracle = permutation_oracle();
    assert_eq!(emitted, oracle, "enumerator disagrees with the 9! oracle");
    assert!(emitted.contains(&Pms::loh_shu()));
    let classes = count_classes(&spec).unwrap();
    assert_eq!(
        classes.iter().map(|c| c.size).sum::<u64>() as usize,
        emitted.len()
    );
    // the diagonal-magic squares form one complete dihedral class
    let loh_class = canonical_form(&Pms::loh_shu());
    assert!(classes
        .iter()
        .any(|c| c.representative == loh_class && c.size == 8));
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 5, "census took {elapsed:?}");

    // the criterion's stated census: 8 squares in 1 class; the row/column
    // definition (diagonals unchecked) makes the machine verdict 72 and 9
    assert_eq!(
        emitted.len(),
        8,
        "stated census of 8 conflicts with the row/column-only definition: \
         the 9! oracle finds {} squares in {} dihedral classes (8 requires \
         the out-of-scope diagonal constraint)",
        oracle.len(),
        classes.len()
    );
    assert_eq!(classes.len(), 1);
    println!("criterion 7 (order-3 census, pruned = naive = 9! oracle): PASS");
}

#[test]
fn criterion_08_kronecker_and_scalar_action() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE08);
    for _ in 0..500 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let a = random_pms(n, &mut rng, 50);
        let b = random_pms(m, &mut rng, 50);
        let k = a.kronecker(&b);
        assert_eq!(k.order(), n * m);
        assert_eq!(*k.constant(), a.constant() * b.constant());
    }

    // scalar action on circulant two-constant squares over Z
    let z = CommutativeRing::Integers;
    for _ in 0..500 {
        let (a, b, c) = (
            rng.gen_range(-20i64..=20),
            rng.gen_range(-20i64..=20),
            rng.gen_range(-20i64..=20),
        );
        let sq = RingGms::rverify(
            &z,
            &[
                vec![Element::int(a), Element::int(b), Element::int(c)],
                vec![Element::int(c), Element::int(a), Element::int(b)],
                vec![Element::int(b), Element::int(c), Element::int(a)],
            ],
        )
        .unwrap();
        let r = rng.gen_range(-10i64..=10);
        let acted = sq.scalar_act(&Element::int(r)).unwrap();
        assert_eq!(
            *acted.additive_constant(),
            z.mul(&Element::int(r), sq.additive_constant()).unwrap()
        );
        assert_eq!(
            *acted.multiplicative_constant(),
            z.mul(&z.pow(&Element::int(r), 3).unwrap(), sq.multiplicative_constant())
                .unwrap()
        );
        assert!(RingGms::rverify(&z, &acted.to_rows()).is_ok());
    }

    // exhaustive over Z_2 and Z_3 at orders 2 and 3
    for (m, n) in [(2u64, 2usize), (2, 3), (3, 2), (3, 3)] {
        let ring = CommutativeRing::modular(m);
        for sq in all_ring_gms(&ring, n, 10_000_000).unwrap() {
            for rv in 0..m {
                let r = Element::residue(rv, m);
                let acted = sq.scalar_act(&r).unwrap();
                let reverified = RingGms::rverify(&ring, &acted.to_rows()).unwrap();
                assert_eq!(reverified, acted);
                assert_eq!(
                    *acted.additive_constant(),
                    ring.mul(&r, sq.additive_constant()).unwrap()
                );
                assert_eq!(
                    *acted.multiplicative_constant(),
                    ring.mul(&ring.pow(&r, n).unwrap(), sq.multiplicative_constant())
                        .unwrap()
                );
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 5, "kronecker/scalar suite took {elapsed:?}");
    println!("criterion 8 (kronecker constants multiply; scalar action exact): PASS");
}

#[test]
fn criterion_09_vector_matroids() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE09);
    for _ in 0..100 {
        let n = rng.gen_range(2..=3);
        let count = rng.gen_range(1..=6);
        let ground: Vec<Pms> = (0..count).map(|_| random_pms(n, &mut rng, 3)).collect();
        let sys = pmsq::matroid::vector_matroid(&ground).unwrap();
        assert_eq!(
            pmsq::matroid::is_matroid(&sys),
            Ok(()),
            "axioms failed for {ground:?}"
        );
    }
    let sys = pmsq::matroid::vector_matroid(&lattice_basis(3)).unwrap();
    assert_eq!(sys.rank(), 5);
    assert_eq!(sys.sets().len(), 1 << 5);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "matroid suite took {elapsed:?}");
    println!("criterion 9 (vector matroids satisfy the axioms; basis has rank 5): PASS");
}

#[test]
fn criterion_10_report_determinism() {
    use std::process::Command;
    let bin = env!("CARGO_BIN_EXE_pmsq");
    let run = |workers: &str| {
        let out = Command::new(bin)
            .args(["check-theorems", "--seed", "42", "--trials", "50", "--workers", workers])
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "check-theorems exited nonzero");
        out.stdout
    };
    let first = run("1");
    let second = run("1");
    let four = run("4");
    assert_eq!(first, second, "reports differ across runs");
    assert_eq!(first, four, "reports differ across worker counts");
    assert!(!first.is_empty());
    println!("criterion 10 (check-theorems byte-identical across runs and workers): PASS");
}
