//! `xlat`: command-line front end. Reports are JSON on stdout, diagnostics on
//! stderr. Exit codes: 0 done, 1 input error, 2 Galois group identification
//! failed, 3 inconclusive module check or exhausted numeric precision.

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use xlat::bench::{run_bench, to_csv, BenchConfig, Bounds};
use xlat::drivers::{fastbasis_plus, is_qtrivial_with, GroupInfo, QtrivialOptions};
use xlat::galois::{self, CATALOG_SHA256};
use xlat::galoislike::{self, analyze, check_rfqtri_on, check_rftri_on, OracleOptions};
use xlat::lattice::rat_mult_lattice;
use xlat::permgroup::{parse_generators, Permutation, PermutationGroup};
use xlat::poly::{parse_poly, Poly};
use xlat::{Error, Result};

#[derive(Parser)]
#[command(name = "xlat", version, about = "Exponent lattices of polynomial roots and Q-triviality of Galois pairs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether the Galois pair of an irreducible polynomial is Q-trivial.
    Isqtrivial {
        poly: String,
        /// Use this transitive group instead of computing the Galois group,
        /// e.g. "(1,2,3,4);(1,3)".
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Exponent lattice of the roots for polynomials of the form c*g^k in E+.
    Fastbasis { poly: String },
    /// Identify the Galois group (degree 2..7) in the transitive-group catalog.
    Galois { poly: String },
    /// Integer lattices.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Numeric exponent lattices, Galois-like groups and the triviality theorems (degree <= 6).
    Galoislike {
        poly: String,
        #[arg(long, default_value_t = galoislike::DEFAULT_PRECISION)]
        precision: u32,
        #[arg(long, default_value_t = galoislike::DEFAULT_DENOMINATOR_BOUND)]
        denominator_bound: u64,
    },
    /// Random irreducible polynomials through the Q-triviality decision.
    Bench {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        coeff_bound: i64,
        #[arg(long, default_value_t = 10)]
        edge_bound: i64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the per-sample CSV here ("-" for stdout; the summary then goes to stderr).
        #[arg(long)]
        csv: Option<String>,
        /// Write "-" instead of timings so equal seeds give identical output.
        #[arg(long)]
        deterministic: bool,
    },
    /// Transitive-group catalog maintenance.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Multiplicative relations among nonzero rationals, e.g. "2,3,6" or "1/2,-4".
    Rat { values: String },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Check the catalog (embedded, or the file named by XLAT_CATALOG) against its checksum.
    Verify,
}

fn poly_arg(s: &str) -> Result<Poly> {
    let (_, f) = parse_poly(s)?;
    if f.is_zero() {
        return Err(Error::InputError("zero polynomial".into()));
    }
    Ok(f)
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn with_input(input: &str, mut body: Value) -> Value {
    if let Value::Object(m) = &mut body {
        m.insert("input".into(), json!(input));
    }
    body
}

fn cmd_isqtrivial(poly: &str, group: Option<&str>, seed: u64) -> Result<Value> {
    let f = poly_arg(poly)?;
    let mut opts = QtrivialOptions { seed, ..QtrivialOptions::default() };
    if let Some(g) = group {
        let gens = parse_generators(g, f.degree())?;
        opts.group = Some(PermutationGroup::new(f.degree(), gens)?);
    }
    let v = is_qtrivial_with(&f, &opts)?;
    Ok(with_input(poly, serde_json::to_value(v).expect("serializable")))
}

fn cmd_fastbasis(poly: &str) -> Result<Value> {
    let t = Instant::now();
    let r = fastbasis_plus(&poly_arg(poly)?)?;
    let mut v = serde_json::to_value(r).expect("serializable");
    v["timings_ms"] = json!({ "total": ms(t) });
    Ok(with_input(poly, v))
}

fn cmd_galois(poly: &str) -> Result<Value> {
    let t = Instant::now();
    let e = galois::galois_group(&poly_arg(poly)?)?;
    Ok(json!({
        "input": poly,
        "group": GroupInfo::from_entry(e),
        "label": e.label(),
        "is_2transitive": e.is_2transitive,
        "is_2homogeneous": e.is_2homogeneous,
        "timings_ms": { "total": ms(t) },
    }))
}

fn cmd_lattice_rat(values: &str) -> Result<Value> {
    let v = values
        .split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<num_rational::BigRational>().map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let l = rat_mult_lattice(&v)?;
    Ok(with_input(values, serde_json::to_value(l).expect("serializable")))
}

fn cycles(elements: &[Permutation]) -> Vec<String> {
    elements.iter().map(|p| p.to_string()).collect()
}

fn cmd_galoislike(poly: &str, precision: u32, denominator_bound: u64) -> Result<Value> {
    let t = Instant::now();
    let f = poly_arg(poly)?;
    let a = analyze(&f, &OracleOptions { precision, denominator_bound })?;
    let t_oracle = ms(t);
    let group = |els: &[Permutation]| json!({ "order": els.len(), "elements": cycles(els) });
    Ok(json!({
        "input": poly,
        "status": "heuristic",
        "precision": precision,
        "basis": a.lattices.r_f,
        "r_f": a.lattices.r_f,
        "r_f_q": a.lattices.r_f_q,
        "verified_relations": a.lattices.verified_relations,
        "root_kinds": a.root_kinds,
        "galois_like": {
            "g_f": group(&a.triple.g_f),
            "g_f_b": group(&a.triple.g_f_b),
            "g_f_q": group(&a.triple.g_f_q),
        },
        "rftri": check_rftri_on(&a),
        "rfqtri": check_rfqtri_on(&a),
        "timings_ms": { "analysis": t_oracle, "total": ms(t) },
    }))
}

fn cmd_catalog_verify() -> Result<Value> {
    let entries = galois::load_catalog()?;
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for e in &entries {
        *counts.entry(e.degree).or_default() += 1;
    }
    let source = std::env::var("XLAT_CATALOG").unwrap_or_else(|_| "embedded".into());
    Ok(json!({
        "status": "ok",
        "source": source,
        "entries": entries.len(),
        "counts": counts,
        "sha256": if source == "embedded" { CATALOG_SHA256.trim().to_string() } else { String::new() },
    }))
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    degree: usize,
    count: usize,
    seed: u64,
    coeff: i64,
    edge: i64,
    jobs: usize,
    csv: Option<&str>,
    deterministic: bool,
) -> Result<Value> {
    let cfg = BenchConfig { degree, count, seed, bounds: Bounds { coeff, edge }, parallelism: jobs };
    let t = Instant::now();
    let (rows, mut summary) = run_bench(&cfg)?;
    if deterministic {
        summary.average_time_ms = 0.0;
    }
    let text = to_csv(&rows, !deterministic);
    match csv {
        Some("-") => {
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Error::InputError(format!("cannot write {path}: {e}")))?
        }
        None => {}
    }
    let mut v = json!({ "config": cfg, "summary": summary });
    if !deterministic {
        v["timings_ms"] = json!({ "total": ms(t) });
    }
    Ok(v)
}

fn run(cli: Cli) -> Result<(Value, bool)> {
    let mut to_stderr = false;
    let v = match cli.cmd {
        Cmd::Isqtrivial { poly, group, seed } => cmd_isqtrivial(&poly, group.as_deref(), seed)?,
        Cmd::Fastbasis { poly } => cmd_fastbasis(&poly)?,
        Cmd::Galois { poly } => cmd_galois(&poly)?,
        Cmd::Lattice { cmd: LatticeCmd::Rat { values } } => cmd_lattice_rat(&values)?,
        Cmd::Galoislike { poly, precision, denominator_bound } => cmd_galoislike(&poly, precision, denominator_bound)?,
        Cmd::Bench { degree, count, seed, coeff_bound, edge_bound, jobs, csv, deterministic } => {
            to_stderr = csv.as_deref() == Some("-");
            cmd_bench(degree, count, seed, coeff_bound, edge_bound, jobs, csv.as_deref(), deterministic)?
        }
        Cmd::Catalog { cmd: CatalogCmd::Verify } => cmd_catalog_verify()?,
    };
    Ok((v, to_stderr))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((v, to_stderr)) => {
            let s = serde_json::to_string_pretty(&v).expect("serializable");
            // a closed pipe is not an error worth a panic
            let _ = if to_stderr {
                writeln!(std::io::stderr(), "{s}")
            } else {
                writeln!(std::io::stdout(), "{s}")
            };
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("xlat: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
