//! Command-line front end: relation sweeps, products, canonical bases,
//! quiver verifications, and cache management, with JSON or table reports.
//!
//! Exit codes: 0 all checks pass, 1 mathematical failure, 2 usage error,
//! 3 capacity/capability limit.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use qschur::error::Error;
use qschur::flagcount::{FlagType, DEFAULT_BUDGET, DEFAULT_PRIMES};
use qschur::laurent::LaurentPoly;
use qschur::matrix::ProfileMatrix;
use qschur::quiver::{self, Decomposition, QMat, RepMatrices, ShiftKind};
use qschur::schur::{SchurContext, SchurElem};
use qschur::sweep::relation_sweep;
use qschur::udot::RelationKind;

#[derive(Parser)]
#[command(name = "qschur", version, about = "Exact q-Schur algebra workbench")]
struct Cli {
    /// JSON config file overriding defaults (primes, budget, cache_dir, format)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Cache directory for persisted tables
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Comma-separated prime pool
    #[arg(long, global = true, value_delimiter = ',')]
    primes: Option<Vec<u64>>,

    /// Work budget per enumeration
    #[arg(long, global = true)]
    budget: Option<u128>,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    parallelism: Option<usize>,

    /// Recompute cached values and compare before use
    #[arg(long, global = true)]
    audit: bool,

    /// Output format: json or table
    #[arg(long, global = true, default_value = "table")]
    format: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quantum-combinatorics helpers
    Laurent {
        #[command(subcommand)]
        op: LaurentOp,
    },
    /// Convolution-algebra operations
    Schur {
        #[command(subcommand)]
        op: SchurOp,
    },
    /// Quiver orbit calculus
    Quiver {
        #[command(subcommand)]
        op: QuiverOp,
    },
}

#[derive(Subcommand)]
enum LaurentOp {
    /// Balanced quantum integer [[s]]
    Qint { s: u64 },
    /// Quantum factorial [[s]]!
    Qfact { s: u64 },
    /// Balanced Gaussian binomial
    Qbinom { n: u64, k: u64 },
}

#[derive(Args)]
struct Dims {
    #[arg(long = "N")]
    n: usize,
    #[arg(long = "d")]
    d: u32,
}

#[derive(Subcommand)]
enum SchurOp {
    /// Multiply two standard basis elements given as profile matrices
    Mult {
        #[command(flatten)]
        dims: Dims,
        /// First label as a JSON array of arrays
        #[arg(long = "A")]
        a: String,
        /// Second label as a JSON array of arrays
        #[arg(long = "B")]
        b: String,
    },
    /// Canonical basis of one block with bar-fixedness certificates
    Canonical {
        #[command(flatten)]
        dims: Dims,
        /// Row flag type, comma-separated steps
        #[arg(long, value_delimiter = ',')]
        row: Vec<u32>,
        /// Column flag type, comma-separated steps
        #[arg(long, value_delimiter = ',')]
        col: Vec<u32>,
    },
    /// Sweep all defining-relation instances through the homomorphism
    CheckRelations {
        #[command(flatten)]
        dims: Dims,
        /// Relation kinds to check (a,b,c,d,e,f); default all
        #[arg(long, value_delimiter = ',')]
        kinds: Option<Vec<String>>,
    },
}

#[derive(Subcommand)]
enum QuiverOp {
    /// Decompose an explicit representation into interval indecomposables
    Decompose {
        #[arg(long = "N")]
        n: usize,
        /// Dimension vector over the 2N+1 positions, comma-separated
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
        /// Edge matrices as a JSON array (one integer matrix per edge)
        #[arg(long)]
        maps: String,
    },
    /// Orbit dimension of a decomposition given as JSON label/mult pairs
    OrbitDim {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        decomp: String,
    },
    /// Run the full reorientation shift-identity sweep
    VerifyShifts {
        /// Largest ambient dimension swept
        #[arg(long, default_value_t = 6)]
        dmax: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

#[derive(Default, serde::Deserialize)]
struct FileConfig {
    primes: Option<Vec<u64>>,
    budget: Option<u128>,
    cache_dir: Option<PathBuf>,
    format: Option<String>,
    parallelism: Option<usize>,
}

struct Settings {
    primes: Vec<u64>,
    budget: u128,
    cache_dir: Option<PathBuf>,
    json: bool,
    audit: bool,
}

fn settings(cli: &Cli) -> Result<Settings, Error> {
    let file: FileConfig = match &cli.config {
        Some(path) => {
            let body = std::fs::read_to_string(path)
                .map_err(|e| Error::domain(format!("config: {e}")))?;
            serde_json::from_str(&body).map_err(|e| Error::domain(format!("config: {e}")))?
        }
        None => FileConfig::default(),
    };
    let primes = cli
        .primes
        .clone()
        .or(file.primes)
        .unwrap_or_else(|| DEFAULT_PRIMES.to_vec());
    let budget = cli.budget.or(file.budget).unwrap_or(DEFAULT_BUDGET);
    if budget < 10_000 {
        return Err(Error::domain("budget must be at least 10^4"));
    }
    let cache_dir = cli.cache_dir.clone().or(file.cache_dir);
    let format = if cli.format != "table" {
        cli.format.clone()
    } else {
        file.format.unwrap_or_else(|| cli.format.clone())
    };
    let json = match format.as_str() {
        "json" => true,
        "table" => false,
        other => return Err(Error::domain(format!("unknown format {other:?}"))),
    };
    if let Some(par) = cli.parallelism.or(file.parallelism) {
        if par == 0 {
            return Err(Error::domain("parallelism must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(par)
            .build_global()
            .ok();
    }
    Ok(Settings { primes, budget, cache_dir, json, audit: cli.audit })
}

fn context(s: &Settings, n: usize, d: u32) -> Result<SchurContext, Error> {
    let ctx = SchurContext::with_config(n, d, s.primes.clone(), s.budget)?;
    if let Some(dir) = &s.cache_dir {
        ctx.load_cache(dir)?;
        if s.audit {
            let entries = ctx.audit_cache()?;
            eprintln!("audit: {entries} cache entries verified");
        }
    }
    Ok(ctx)
}

fn finish(ctx: &SchurContext, s: &Settings) -> Result<(), Error> {
    if let Some(dir) = &s.cache_dir {
        ctx.save_cache(dir)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let s = settings(&cli)?;
    match &cli.command {
        Command::Laurent { op } => {
            let poly = match op {
                LaurentOp::Qint { s } => LaurentPoly::quantum_integer(*s),
                LaurentOp::Qfact { s } => LaurentPoly::quantum_factorial(*s),
                LaurentOp::Qbinom { n, k } => {
                    if k > n {
                        return Err(Error::domain("k must be at most n"));
                    }
                    LaurentPoly::quantum_binomial(*n, *k)
                }
            };
            if s.json {
                println!("{}", serde_json::to_string(&poly).unwrap());
            } else {
                println!("{poly}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Schur { op } => run_schur(op, &s),
        Command::Quiver { op } => run_quiver(op, &s),
    }
}

fn parse_matrix(text: &str) -> Result<ProfileMatrix, Error> {
    let entries: Vec<Vec<u32>> =
        serde_json::from_str(text).map_err(|e| Error::domain(format!("matrix JSON: {e}")))?;
    ProfileMatrix::new(entries)
}

#[derive(Serialize)]
struct TermRecord {
    matrix: Vec<Vec<u32>>,
    coeff: LaurentPoly,
}

fn elem_records(x: &SchurElem) -> Vec<TermRecord> {
    x.terms()
        .map(|(a, c)| TermRecord { matrix: a.entries().clone(), coeff: c.clone() })
        .collect()
}

fn run_schur(op: &SchurOp, s: &Settings) -> Result<ExitCode, Error> {
    match op {
        SchurOp::Mult { dims, a, b } => {
            let ctx = context(s, dims.n, dims.d)?;
            let a = parse_matrix(a)?;
            let b = parse_matrix(b)?;
            if a.size() != dims.n + 1 || b.size() != dims.n + 1 {
                return Err(Error::domain("matrix size must be N+1"));
            }
            if a.total() != dims.d || b.total() != dims.d {
                return Err(Error::domain("matrix total must be d"));
            }
            let prod = ctx.basis_mult(&a, &b)?;
            if s.json {
                println!("{}", serde_json::to_string(&elem_records(&prod)).unwrap());
            } else {
                println!("{prod}");
            }
            finish(&ctx, s)?;
            Ok(ExitCode::SUCCESS)
        }
        SchurOp::Canonical { dims, row, col } => {
            let ctx = context(s, dims.n, dims.d)?;
            let row = FlagType::new(row.clone(), dims.d)?;
            let col = FlagType::new(col.clone(), dims.d)?;
            let basis = ctx.canonical_basis(&row, &col)?;
            let mut all_ok = true;
            #[derive(Serialize)]
            struct CanonicalRecord {
                label: Vec<Vec<u32>>,
                element: Vec<TermRecord>,
                bar_fixed: bool,
            }
            let mut records = Vec::new();
            for (a, el) in &basis {
                let bar_fixed = &ctx.bar_elem(el)? == el;
                all_ok &= bar_fixed;
                records.push(CanonicalRecord {
                    label: a.entries().clone(),
                    element: elem_records(el),
                    bar_fixed,
                });
            }
            if s.json {
                println!("{}", serde_json::to_string_pretty(&records).unwrap());
            } else {
                println!(
                    "canonical basis for block row={:?} col={:?} ({} labels)",
                    row.steps(),
                    col.steps(),
                    records.len()
                );
                for r in &records {
                    println!(
                        "  {:?}: {} terms, bar-fixed: {}",
                        r.label,
                        r.element.len(),
                        r.bar_fixed
                    );
                    for t in &r.element {
                        println!("    {:?}  {}", t.matrix, t.coeff);
                    }
                }
            }
            finish(&ctx, s)?;
            Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        SchurOp::CheckRelations { dims, kinds } => {
            let kinds: Vec<RelationKind> = match kinds {
                None => RelationKind::all().to_vec(),
                Some(ks) => {
                    if ks.is_empty() || (ks.len() == 1 && ks[0].is_empty()) {
                        return Err(Error::domain("empty kind list"));
                    }
                    ks.iter()
                        .map(|k| k.parse::<RelationKind>())
                        .collect::<Result<_, _>>()?
                }
            };
            let ctx = context(s, dims.n, dims.d)?;
            let reports = relation_sweep(&ctx, &kinds)?;
            let mut failed = 0usize;
            if s.json {
                println!("{}", serde_json::to_string_pretty(&reports).unwrap());
            } else {
                for r in &reports {
                    println!(
                        "{:<40} pass {:>5}  fail {:>3}  skipped {:>3}",
                        r.anchor, r.pass, r.fail, r.capacity_skipped
                    );
                }
            }
            for r in &reports {
                failed += r.fail;
            }
            finish(&ctx, s)?;
            Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn run_quiver(op: &QuiverOp, s: &Settings) -> Result<ExitCode, Error> {
    match op {
        QuiverOp::Decompose { n, dims, maps } => {
            let raw: Vec<Vec<Vec<i64>>> =
                serde_json::from_str(maps).map_err(|e| Error::domain(format!("maps JSON: {e}")))?;
            let qmaps: Vec<QMat> = raw.iter().map(|m| QMat::from_int_rows(m)).collect();
            let rep = RepMatrices::new(*n, dims.clone(), qmaps)?;
            let dec = quiver::decompose(&rep)?;
            if s.json {
                println!("{}", serde_json::to_string_pretty(&dec).unwrap());
            } else {
                for (l, m) in dec.iter() {
                    println!("{l:?} x {m}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        QuiverOp::OrbitDim { n, decomp } => {
            let dec: Decomposition = serde_json::from_str(decomp)
                .map_err(|e| Error::domain(format!("decomposition JSON: {e}")))?;
            let dim = quiver::orbit_dim_rep(&dec, *n)?;
            if s.json {
                println!("{{\"orbit_dim\": {dim}}}");
            } else {
                println!("{dim}");
            }
            Ok(ExitCode::SUCCESS)
        }
        QuiverOp::VerifyShifts { dmax } => {
            let mut reports = Vec::new();
            for d in 0..=*dmax {
                for v1 in 0..=d {
                    for v2 in v1..=d {
                        let nu = FlagType::new(vec![v1, v2], d)?;
                        for kind in [ShiftKind::Raise, ShiftKind::Lower, ShiftKind::Identity] {
                            let ns: Vec<u32> = if kind == ShiftKind::Identity {
                                vec![0]
                            } else {
                                (1..=d.saturating_sub(v2)).collect()
                            };
                            for n_units in ns {
                                match quiver::verify_shift_identity(kind, &nu, n_units, d) {
                                    Ok(rep) => reports.push(rep),
                                    Err(Error::Domain(_)) => {}
                                    Err(e) => return Err(e),
                                }
                            }
                        }
                    }
                }
            }
            let failed = reports.iter().filter(|r| !r.pass).count();
            if s.json {
                println!("{}", serde_json::to_string_pretty(&reports).unwrap());
            } else {
                println!(
                    "{:<12} {:<18} {:>8} {:>3} {:>3} {:>9} {:>7}  result",
                    "identity", "branch", "nu", "n", "d", "computed", "stated"
                );
                for r in &reports {
                    println!(
                        "{:<12} {:<18} {:>8} {:>3} {:>3} {:>9} {:>7}  {}",
                        r.kind,
                        r.branch,
                        format!("{:?}", r.nu),
                        r.n_units,
                        r.d,
                        r.computed,
                        r.stated,
                        if r.pass { "ok" } else { "MISMATCH" }
                    );
                }
                println!("{} checks, {} mismatches", reports.len(), failed);
            }
            Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}
