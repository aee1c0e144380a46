//! Random-polynomial benchmark: rejection-sampled irreducible polynomials pushed
//! through the Q-triviality decision, tallied in the shape of the usual
//! "2-Transitive / Qtrivial / NotQtrivial / GaloisFail" table.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;

use crate::drivers::{is_qtrivial, QtrivialPath};
use crate::error::{Error, Result};
use crate::galois;
use crate::poly::{factor_z, Poly};
use crate::rng::SplitMix64;

/// Rejection-sampling attempts before giving up.
pub const MAX_RETRIES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// Inner coefficients are drawn from `[-coeff, coeff]`.
    pub coeff: i64,
    /// Leading and constant coefficients are drawn from `+-{1..edge}`.
    pub edge: i64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { coeff: 10, edge: 10 }
    }
}

/// An irreducible polynomial of the given degree and the number of rejected draws.
pub fn random_polynomial(rng: &mut SplitMix64, degree: usize, bounds: Bounds) -> Result<(Poly, usize)> {
    if degree < 2 {
        return Err(Error::InputError("random polynomials need degree at least 2".into()));
    }
    if bounds.coeff < 1 || bounds.edge < 1 {
        return Err(Error::InputError("coefficient bounds must be at least 1".into()));
    }
    for rejected in 0..MAX_RETRIES {
        let mut edge = || {
            let v = rng.range_i64(1, bounds.edge);
            if rng.below(2) == 0 { v } else { -v }
        };
        let lc = edge();
        let c0 = edge();
        let mut coeffs = vec![BigInt::from(c0)];
        for _ in 1..degree {
            coeffs.push(BigInt::from(rng.range_i64(-bounds.coeff, bounds.coeff)));
        }
        coeffs.push(BigInt::from(lc));
        let f = Poly::new(coeffs);
        if factor_z(&f).is_irreducible() {
            return Ok((f, rejected));
        }
    }
    Err(Error::InputError(format!("no irreducible polynomial after {MAX_RETRIES} draws")))
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchConfig {
    pub degree: usize,
    pub count: usize,
    pub seed: u64,
    pub bounds: Bounds,
    /// Worker threads; results do not depend on it.
    pub parallelism: usize,
}

impl BenchConfig {
    pub fn new(degree: usize, count: usize, seed: u64) -> Self {
        BenchConfig { degree, count, seed, bounds: Bounds::default(), parallelism: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Qtrivial,
    NotQtrivial,
    GaloisFail,
    /// The module check ran out of rounds.
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub degree: usize,
    pub index: usize,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub polynomial: Poly,
    pub outcome: Outcome,
    pub path: Option<QtrivialPath>,
    pub group_tnumber: Option<usize>,
    pub two_transitive: bool,
    pub regenerated: usize,
    pub time_ms: f64,
}

/// Table-shaped tallies. `qtrivial + not_qtrivial + galois_fail + inconclusive`
/// equals the sample count; `two_transitive` is a sub-count of `qtrivial`, and
/// `input_regenerated` counts rejected reducible draws.
#[derive(Debug, Clone, Default, Serialize, PartialEq)]
pub struct BenchSummary {
    pub degree: usize,
    pub count: usize,
    pub two_transitive: usize,
    pub qtrivial: usize,
    pub not_qtrivial: usize,
    pub galois_fail: usize,
    pub inconclusive: usize,
    pub input_regenerated: usize,
    /// Over decided samples only (GaloisFail and inconclusive excluded).
    pub average_time_ms: f64,
}

/// One sample; everything derives from `(seed, index)`.
pub fn bench_one(cfg: &BenchConfig, index: usize) -> Result<BenchRow> {
    let mut rng = SplitMix64::for_index(cfg.seed, index as u64);
    let (f, regenerated) = random_polynomial(&mut rng, cfg.degree, cfg.bounds)?;
    let start = Instant::now();
    let res = is_qtrivial(&f);
    let mut row = BenchRow {
        degree: cfg.degree,
        index,
        polynomial: f.clone(),
        outcome: Outcome::GaloisFail,
        path: None,
        group_tnumber: None,
        two_transitive: false,
        regenerated,
        time_ms: 0.0,
    };
    match res {
        Ok(v) => {
            row.outcome = if v.verdict { Outcome::Qtrivial } else { Outcome::NotQtrivial };
            row.path = Some(v.path);
            row.group_tnumber = v.group.as_ref().and_then(|g| g.t_number);
            row.two_transitive = v.path == QtrivialPath::DoublyTransitive;
        }
        Err(Error::ModuleCheckInconclusive) => row.outcome = Outcome::Inconclusive,
        Err(Error::GaloisFail(_)) | Err(Error::DegreeOutOfRange(_)) => row.outcome = Outcome::GaloisFail,
        Err(e) => return Err(e),
    }
    row.time_ms = start.elapsed().as_secs_f64() * 1e3;
    // the prime-degree shortcut skips the group; identify it for the table when we can
    if row.path == Some(QtrivialPath::PrimeDegree) {
        if let Ok(e) = galois::galois_group(&f) {
            row.group_tnumber = Some(e.t_number);
            row.two_transitive = e.is_2transitive;
        }
    }
    Ok(row)
}

/// Run the benchmark; rows come back in index order whatever the parallelism.
pub fn run_bench(cfg: &BenchConfig) -> Result<(Vec<BenchRow>, BenchSummary)> {
    if cfg.count == 0 {
        return Err(Error::InputError("count must be at least 1".into()));
    }
    let workers = cfg.parallelism.clamp(1, cfg.count);
    let rows: Vec<Result<BenchRow>> = if workers == 1 {
        (0..cfg.count).map(|i| bench_one(cfg, i)).collect()
    } else {
        let mut slots: Vec<Option<Result<BenchRow>>> = (0..cfg.count).map(|_| None).collect();
        std::thread::scope(|s| {
            let chunks = slots.chunks_mut(cfg.count.div_ceil(workers));
            let mut offset = 0;
            for chunk in chunks {
                let base = offset;
                offset += chunk.len();
                s.spawn(move || {
                    for (j, slot) in chunk.iter_mut().enumerate() {
                        *slot = Some(bench_one(cfg, base + j));
                    }
                });
            }
        });
        slots.into_iter().map(|r| r.expect("every slot filled")).collect()
    };
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let summary = summarize(cfg.degree, &rows);
    Ok((rows, summary))
}

pub fn summarize(degree: usize, rows: &[BenchRow]) -> BenchSummary {
    let mut s = BenchSummary { degree, count: rows.len(), ..BenchSummary::default() };
    let mut decided_time = 0.0;
    for r in rows {
        s.input_regenerated += r.regenerated;
        match r.outcome {
            Outcome::Qtrivial => s.qtrivial += 1,
            Outcome::NotQtrivial => s.not_qtrivial += 1,
            Outcome::GaloisFail => s.galois_fail += 1,
            Outcome::Inconclusive => s.inconclusive += 1,
        }
        if r.two_transitive && r.outcome == Outcome::Qtrivial {
            s.two_transitive += 1;
        }
        if matches!(r.outcome, Outcome::Qtrivial | Outcome::NotQtrivial) {
            decided_time += r.time_ms;
        }
    }
    let decided = s.qtrivial + s.not_qtrivial;
    if decided > 0 {
        s.average_time_ms = decided_time / decided as f64;
    }
    s
}

/// CSV with columns `degree,index,verdict,path,group_tnumber,time_ms`. With
/// `with_time = false` the time column is written as `-`, making the output a pure
/// function of the configuration.
pub fn to_csv(rows: &[BenchRow], with_time: bool) -> String {
    let mut out = String::from("degree,index,verdict,path,group_tnumber,time_ms\n");
    for r in rows {
        let path = r.path.map(|p| format!("{p:?}")).unwrap_or_default();
        let t = r.group_tnumber.map(|t| t.to_string()).unwrap_or_default();
        let time = if with_time { format!("{:.3}", r.time_ms) } else { "-".into() };
        let _ = writeln!(out, "{},{},{:?},{},{},{}", r.degree, r.index, r.outcome, path, t, time);
    }
    out
}
