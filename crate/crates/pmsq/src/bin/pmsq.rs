//! Command-line front end: verification, constructions, enumeration, the
//! lattice basis, matroid checks, and the theorem harness.
//!
//! Exit codes: 0 verified/success, 1 domain-level negative (not magic,
//! closure violation, axiom violation), 2 usage or parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use pmsq::enumerate::{count_classes, enumerate_pms, enumerate_pms_parallel, SearchSpec};
use pmsq::gms::GmsError;
use pmsq::harness::{check_theorems, HarnessConfig, Status};
use pmsq::json::{JsonError, MatrixDoc, SystemDoc};
use pmsq::matroid::{is_matroid, vector_matroid, MatroidViolation};
use pmsq::pms::{lattice_basis, Pms, PmsError};
use pmsq::ring_gms::RingGmsError;

#[derive(Parser)]
#[command(name = "pmsq", version, about = "pseudo and generic magic squares")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a matrix file and print its magic constant(s)
    Verify {
        file: PathBuf,
        /// Check both ring clauses (additive and multiplicative constants)
        #[arg(long)]
        ring: bool,
    },
    /// Write a standard square
    Make {
        kind: MakeKind,
        /// Square order (ignored for loh-shu)
        #[arg(short = 'n', long, default_value_t = 3)]
        order: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Combine squares with a construction
    Combine {
        op: CombineOp,
        inputs: Vec<PathBuf>,
        /// Integer operand for scale, shift, and scalar-act
        #[arg(short = 'k', long, allow_hyphen_values = true)]
        k: Option<i64>,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Exhaustively list PMS within entry bounds
    Enumerate {
        #[arg(short = 'n', long)]
        order: usize,
        #[arg(long, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, allow_hyphen_values = true)]
        hi: i64,
        /// Fix the magic constant
        #[arg(short = 'c', long, allow_hyphen_values = true)]
        constant: Option<i64>,
        /// Require pairwise distinct entries
        #[arg(long)]
        distinct: bool,
        /// Group output into dihedral equivalence classes
        #[arg(long)]
        classes: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Print a basis of the order-n PMS lattice as JSON lines
    Basis {
        #[arg(short = 'n', long)]
        order: usize,
    },
    /// Check the matroid axioms
    Matroid {
        /// Explicit independence system (JSON: ground labels + subsets)
        #[arg(long, conflicts_with = "vector")]
        system: Option<PathBuf>,
        /// Matrix files forming the ground set of a vector matroid
        #[arg(long, num_args = 1..)]
        vector: Vec<PathBuf>,
    },
    /// Run the full property suites and the closure search
    CheckTheorems {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Largest modulus for the exhaustive suites
        #[arg(long, default_value_t = 3)]
        max_ring: u64,
        /// Largest square order exercised
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Machine-readable report
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MakeKind {
    Zero,
    Ones,
    Identity,
    LohShu,
}

#[derive(Clone, Copy, ValueEnum)]
enum CombineOp {
    Add,
    DirectSum,
    Kron,
    Scale,
    Shift,
    /// Componentwise ring addition (re-verifies the multiplicative clause)
    AddP,
    /// Componentwise ring multiplication (re-verifies the additive clause)
    MulP,
    ScalarAct,
}

const EXIT_OK: u8 = 0;
const EXIT_DOMAIN: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    };
    ExitCode::from(code)
}

// domain-level negatives exit 1, everything else is a usage/parse error
fn exit_code_for(e: &JsonError) -> u8 {
    match e {
        JsonError::Pms(PmsError::NotMagic { .. })
        | JsonError::Gms(GmsError::NotMagic { .. })
        | JsonError::Gms(GmsError::OrderMismatch { .. })
        | JsonError::Gms(GmsError::GroupMismatch { .. })
        | JsonError::Pms(PmsError::OrderMismatch { .. })
        | JsonError::RingGms(RingGmsError::NotAdditiveMagic { .. })
        | JsonError::RingGms(RingGmsError::NotMultiplicativeMagic { .. })
        | JsonError::RingGms(RingGmsError::OrderMismatch { .. })
        | JsonError::RingGms(RingGmsError::RingMismatch { .. })
        | JsonError::RingGms(RingGmsError::ClosureViolation { .. }) => EXIT_DOMAIN,
        _ => EXIT_USAGE,
    }
}

fn run(cli: Cli) -> Result<u8, JsonError> {
    match cli.cmd {
        Command::Verify { file, ring } => verify_cmd(&file, ring),
        Command::Make {
            kind,
            order,
            output,
        } => make_cmd(kind, order, output.as_deref()),
        Command::Combine {
            op,
            inputs,
            k,
            output,
        } => combine_cmd(op, &inputs, k, output.as_deref()),
        Command::Enumerate {
            order,
            lo,
            hi,
            constant,
            distinct,
            classes,
            workers,
        } => enumerate_cmd(order, lo, hi, constant, distinct, classes, workers),
        Command::Basis { order } => {
            for sq in lattice_basis(order) {
                print!("{}", MatrixDoc::from_pms(&sq).to_json_string());
            }
            Ok(EXIT_OK)
        }
        Command::Matroid { system, vector } => matroid_cmd(system.as_deref(), &vector),
        Command::CheckTheorems {
            trials,
            seed,
            max_ring,
            max_order,
            workers,
            json,
        } => {
            let cfg = HarnessConfig {
                trials,
                seed,
                max_ring,
                max_order,
                ..HarnessConfig::default()
            };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers.max(1))
                .build()
                .expect("thread pool");
            let report = pool.install(|| check_theorems(&cfg));
            if json {
                print!("{}", report.render_json());
            } else {
                print!("{}", report.render_text());
            }
            Ok(if report.sections.iter().any(|s| s.status == Status::Fail) {
                EXIT_DOMAIN
            } else {
                EXIT_OK
            })
        }
    }
}

fn verify_cmd(file: &std::path::Path, ring: bool) -> Result<u8, JsonError> {
    let doc = MatrixDoc::read(file)?;
    if ring {
        match doc.to_ring_gms() {
            Ok(sq) => {
                println!(
                    "ring-GMS over {}, order {}, additive constant {}, multiplicative constant {}",
                    sq.ring(),
                    sq.order(),
                    sq.additive_constant(),
                    sq.multiplicative_constant()
                );
                Ok(EXIT_OK)
            }
            Err(e @ JsonError::RingGms(RingGmsError::NotAdditiveMagic { .. }))
            | Err(e @ JsonError::RingGms(RingGmsError::NotMultiplicativeMagic { .. })) => {
                println!("{e}");
                Ok(EXIT_DOMAIN)
            }
            Err(e) => Err(e),
        }
    } else if doc.modulus.is_none() && doc.moduli.is_none() {
        match doc.to_pms() {
            Ok(sq) => {
                println!("PMS, order {}, constant {}", sq.order(), sq.constant());
                Ok(EXIT_OK)
            }
            Err(e @ JsonError::Pms(PmsError::NotMagic { .. })) => {
                println!("{e}");
                Ok(EXIT_DOMAIN)
            }
            Err(e) => Err(e),
        }
    } else {
        match doc.to_gms() {
            Ok(sq) => {
                println!(
                    "GMS over {}, order {}, constant {}",
                    sq.group(),
                    sq.order(),
                    sq.constant()
                );
                Ok(EXIT_OK)
            }
            Err(e @ JsonError::Gms(GmsError::NotMagic { .. })) => {
                println!("{e}");
                Ok(EXIT_DOMAIN)
            }
            Err(e) => Err(e),
        }
    }
}

fn make_cmd(kind: MakeKind, order: usize, output: Option<&std::path::Path>) -> Result<u8, JsonError> {
    let sq = match kind {
        MakeKind::Zero => Pms::zero(order),
        MakeKind::Ones => Pms::constant_square(order, &BigInt::from(1)),
        MakeKind::Identity => Pms::identity_matrix(order),
        MakeKind::LohShu => Pms::loh_shu(),
    };
    emit_pms(&sq, output)
}

fn emit_pms(sq: &Pms, output: Option<&std::path::Path>) -> Result<u8, JsonError> {
    let doc = MatrixDoc::from_pms(sq);
    match output {
        Some(path) => {
            doc.write(path)?;
            println!("order {}, constant {}", sq.order(), sq.constant());
        }
        None => print!("{}", doc.to_json_string()),
    }
    Ok(EXIT_OK)
}

fn combine_cmd(
    op: CombineOp,
    inputs: &[PathBuf],
    k: Option<i64>,
    output: Option<&std::path::Path>,
) -> Result<u8, JsonError> {
    let arity = match op {
        CombineOp::Add | CombineOp::DirectSum | CombineOp::Kron | CombineOp::AddP | CombineOp::MulP => 2,
        CombineOp::Scale | CombineOp::Shift | CombineOp::ScalarAct => 1,
    };
    if inputs.len() != arity {
        eprintln!("error: this operation takes {arity} input file(s)");
        return Ok(EXIT_USAGE);
    }
    let needs_k = matches!(op, CombineOp::Scale | CombineOp::Shift | CombineOp::ScalarAct);
    let Some(k_or_default) = k.or(if needs_k { None } else { Some(0) }) else {
        eprintln!("error: this operation requires -k");
        return Ok(EXIT_USAGE);
    };
    match op {
        CombineOp::Add | CombineOp::DirectSum | CombineOp::Kron => {
            let a = MatrixDoc::read(&inputs[0])?.to_pms()?;
            let b = MatrixDoc::read(&inputs[1])?.to_pms()?;
            let out = match op {
                CombineOp::Add => a.add(&b)?,
                CombineOp::DirectSum => a.direct_sum(&b)?,
                _ => a.kronecker(&b),
            };
            emit_pms(&out, output)
        }
        CombineOp::Scale | CombineOp::Shift => {
            let a = MatrixDoc::read(&inputs[0])?.to_pms()?;
            let kk = BigInt::from(k_or_default);
            let out = match op {
                CombineOp::Scale => a.scale(&kk),
                _ => a.shift(&kk),
            };
            emit_pms(&out, output)
        }
        CombineOp::AddP | CombineOp::MulP => {
            let a = MatrixDoc::read(&inputs[0])?.to_ring_gms()?;
            let b = MatrixDoc::read(&inputs[1])?.to_ring_gms()?;
            let out = match op {
                CombineOp::AddP => a.add_p(&b)?,
                _ => a.mul_p(&b)?,
            };
            emit_ring(&out, output)
        }
        CombineOp::ScalarAct => {
            let a = MatrixDoc::read(&inputs[0])?.to_ring_gms()?;
            let doc = MatrixDoc::from_ring_gms(&a);
            let scalar = scalar_for(&doc, k_or_default)?;
            let out = a.scalar_act(&scalar)?;
            emit_ring(&out, output)
        }
    }
}

fn scalar_for(doc: &MatrixDoc, k: i64) -> Result<pmsq::algebra::Element, JsonError> {
    Ok(match doc.ring()? {
        pmsq::algebra::CommutativeRing::Integers => pmsq::algebra::Element::int(k),
        pmsq::algebra::CommutativeRing::Mod(m) => {
            pmsq::algebra::Element::residue(k.rem_euclid(m as i64) as u64, m)
        }
    })
}

fn emit_ring(sq: &pmsq::ring_gms::RingGms, output: Option<&std::path::Path>) -> Result<u8, JsonError> {
    let doc = MatrixDoc::from_ring_gms(sq);
    match output {
        Some(path) => {
            doc.write(path)?;
            println!(
                "order {}, additive constant {}, multiplicative constant {}",
                sq.order(),
                sq.additive_constant(),
                sq.multiplicative_constant()
            );
        }
        None => print!("{}", doc.to_json_string()),
    }
    Ok(EXIT_OK)
}

fn enumerate_cmd(
    order: usize,
    lo: i64,
    hi: i64,
    constant: Option<i64>,
    distinct: bool,
    classes: bool,
    workers: usize,
) -> Result<u8, JsonError> {
    let mut spec = SearchSpec::new(order, lo, hi);
    spec.constant = constant;
    spec.require_distinct = distinct;
    let fail = |e: pmsq::enumerate::SearchError| {
        eprintln!("error: {e}");
        Ok(EXIT_USAGE)
    };
    if classes {
        let result = count_classes(&spec);
        let classes = match result {
            Ok(c) => c,
            Err(e) => return fail(e),
        };
        println!("class_size\tconstant\trepresentative");
        for c in &classes {
            println!(
                "{}\t{}\t{}",
                c.size,
                c.representative.constant(),
                MatrixDoc::from_pms(&c.representative)
                    .to_json_string()
                    .trim_end()
            );
        }
        return Ok(EXIT_OK);
    }
    let result = if workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        pool.install(|| enumerate_pms_parallel(&spec))
    } else {
        enumerate_pms(&spec)
    };
    match result {
        Ok(squares) => {
            for sq in &squares {
                print!("{}", MatrixDoc::from_pms(sq).to_json_string());
            }
            Ok(EXIT_OK)
        }
        Err(e) => fail(e),
    }
}

fn matroid_cmd(system: Option<&std::path::Path>, vector: &[PathBuf]) -> Result<u8, JsonError> {
    let sys = if let Some(path) = system {
        SystemDoc::read(path)?.to_system()?
    } else if !vector.is_empty() {
        let ground: Vec<Pms> = vector
            .iter()
            .map(|p| MatrixDoc::read(p)?.to_pms())
            .collect::<Result<_, _>>()?;
        let m = vector_matroid(&ground)?;
        print!("{}", serde_json::to_string(&SystemDoc::from_system(&m)).unwrap());
        println!();
        m
    } else {
        eprintln!("error: provide --system FILE or --vector FILES...");
        return Ok(EXIT_USAGE);
    };
    match is_matroid(&sys) {
        Ok(()) => {
            println!("matroid: yes (rank {})", sys.rank());
            Ok(EXIT_OK)
        }
        Err(v) => {
            let text = match v {
                MatroidViolation::EmptySetMissing => "axiom I.1 violated: empty set missing".to_string(),
                MatroidViolation::NotHereditary { superset, missing } => format!(
                    "axiom I.2 violated: {superset:?} is independent but {missing:?} is not"
                ),
                MatroidViolation::ExchangeFails { smaller, larger } => format!(
                    "axiom I.3 violated: no element of {larger:?} extends {smaller:?}"
                ),
            };
            println!("matroid: no ({text})");
            Ok(EXIT_DOMAIN)
        }
    }
}
