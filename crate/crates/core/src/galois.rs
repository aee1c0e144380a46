//! Galois groups of irreducible polynomials of degree 2..=7, identified against an
//! embedded catalog of transitive groups by Frobenius cycle types, the
//! discriminant, subset-sum resolvents and a likelihood test on cycle-type
//! frequencies.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::permgroup::{parse_generators, PermutationGroup, DEFAULT_ELEMENT_CAP};
use crate::poly::modp::{degree_pattern, is_prime_u64};
use crate::poly::{discriminant, factor_z, subset_sum_resolvent, tschirnhaus_by, Poly};

const CATALOG: &str = include_str!("../data/catalog.txt");
pub const CATALOG_SHA256: &str = include_str!("../data/catalog.sha256");
const RESOLVENTS: &str = include_str!("../data/resolvents.txt");

/// Expected number of transitive groups of degree 2..=7.
pub const COUNTS: [(usize, usize); 6] = [(2, 1), (3, 2), (4, 5), (5, 5), (6, 16), (7, 7)];

pub const DEFAULT_PRIME_BUDGET: usize = 80;
pub const FIRST_PRIME: u64 = 10_000;
/// Competing candidates must be this many times less likely than the winner.
pub const LIKELIHOOD_RATIO: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct TransitiveGroupEntry {
    pub degree: usize,
    pub t_number: usize,
    pub order: u64,
    pub name: String,
    pub generators: Vec<String>,
    pub is_2transitive: bool,
    pub is_2homogeneous: bool,
    /// Contained in the alternating group.
    pub even: bool,
    #[serde(skip)]
    group: PermutationGroup,
    #[serde(skip)]
    cycle_type_counts: BTreeMap<Vec<usize>, u64>,
}

impl TransitiveGroupEntry {
    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    /// How many elements have each cycle type (lengths descending, fixed points included).
    pub fn cycle_type_counts(&self) -> &BTreeMap<Vec<usize>, u64> {
        &self.cycle_type_counts
    }

    pub fn label(&self) -> String {
        format!("{}T{}", self.degree, self.t_number)
    }
}

fn corrupt(msg: impl Into<String>) -> Error {
    Error::CatalogCorrupt(msg.into())
}

fn sha256_hex(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Parse and validate catalog text against its SHA-256 checksum.
pub fn parse_catalog(text: &str, checksum: &str) -> Result<Vec<TransitiveGroupEntry>> {
    if sha256_hex(text) != checksum.trim().to_ascii_lowercase() {
        return Err(corrupt("checksum mismatch"));
    }
    let mut entries = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |m: &str| corrupt(format!("line {}: {m}", lineno + 1));
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 5 {
            return Err(at("expected 'degree T order name generators...'"));
        }
        let degree: usize = fields[0].parse().map_err(|_| at("bad degree"))?;
        let t_number: usize = fields[1].parse().map_err(|_| at("bad T-number"))?;
        let order: u64 = fields[2].parse().map_err(|_| at("bad order"))?;
        let name = fields[3].to_string();
        let generators: Vec<String> = fields[4..].iter().map(|s| s.to_string()).collect();
        let perms = parse_generators(&generators.join(";"), degree).map_err(|e| at(&e.to_string()))?;
        let group = PermutationGroup::new(degree, perms).map_err(|e| at(&e.to_string()))?;
        if group.order() != order as u128 {
            return Err(at(&format!("generators give order {}, not {order}", group.order())));
        }
        if !group.is_transitive() {
            return Err(at("group is not transitive"));
        }
        let mut cycle_type_counts = BTreeMap::new();
        for g in group.enumerate_elements(DEFAULT_ELEMENT_CAP).map_err(|e| at(&e.to_string()))? {
            *cycle_type_counts.entry(g.cycle_type()).or_insert(0) += 1;
        }
        entries.push(TransitiveGroupEntry {
            degree,
            t_number,
            order,
            name,
            generators,
            is_2transitive: group.is_2transitive().map_err(|e| at(&e.to_string()))?,
            is_2homogeneous: group.is_2homogeneous().map_err(|e| at(&e.to_string()))?,
            even: group.is_in_alternating(),
            group,
            cycle_type_counts,
        });
    }
    for (d, count) in COUNTS {
        let found = entries.iter().filter(|e| e.degree == d).count();
        if found != count {
            return Err(corrupt(format!("degree {d}: {found} groups, expected {count}")));
        }
    }
    Ok(entries)
}

/// Load the catalog: the embedded copy, or the file named by `XLAT_CATALOG`
/// (validated against the checksum in `<file>.sha256`).
pub fn load_catalog() -> Result<Vec<TransitiveGroupEntry>> {
    match std::env::var_os("XLAT_CATALOG") {
        Some(path) => {
            let path = std::path::PathBuf::from(path);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| corrupt(format!("{}: {e}", path.display())))?;
            let mut sum_path = path.clone().into_os_string();
            sum_path.push(".sha256");
            let sum = std::fs::read_to_string(&sum_path)
                .map_err(|e| corrupt(format!("{}: {e}", sum_path.to_string_lossy())))?;
            parse_catalog(&text, &sum)
        }
        None => parse_catalog(CATALOG, CATALOG_SHA256),
    }
}

/// The catalog, loaded once per process.
pub fn catalog() -> Result<&'static [TransitiveGroupEntry]> {
    static CELL: OnceLock<Result<Vec<TransitiveGroupEntry>>> = OnceLock::new();
    match CELL.get_or_init(load_catalog) {
        Ok(v) => Ok(v),
        Err(e) => Err(e.clone()),
    }
}

/// Orbit lengths on `k`-subsets, keyed by (degree, T-number, k), from the table file.
pub fn resolvent_table() -> &'static BTreeMap<(usize, usize, usize), Vec<usize>> {
    static CELL: OnceLock<BTreeMap<(usize, usize, usize), Vec<usize>>> = OnceLock::new();
    CELL.get_or_init(|| parse_resolvent_table(RESOLVENTS).expect("embedded resolvent table is well formed"))
}

/// Lines `degree T k l1,l2,...`: the orbit lengths of nT on k-subsets, which are the
/// factor degrees of the squarefree k-subset-sum resolvent.
pub fn parse_resolvent_table(text: &str) -> Result<BTreeMap<(usize, usize, usize), Vec<usize>>> {
    let mut out = BTreeMap::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let f: Vec<&str> = line.split_whitespace().collect();
        let bad = || corrupt(format!("resolvent table line '{line}'"));
        if f.len() != 4 {
            return Err(bad());
        }
        let key = (
            f[0].parse().map_err(|_| bad())?,
            f[1].parse().map_err(|_| bad())?,
            f[2].parse().map_err(|_| bad())?,
        );
        let sizes = f[3].split(',').map(|s| s.parse().map_err(|_| bad())).collect::<Result<Vec<usize>>>()?;
        out.insert(key, sizes);
    }
    Ok(out)
}

/// Frobenius cycle types of `f` at `primes`, plus the exact discriminant-square test.
#[derive(Debug, Clone, Serialize)]
pub struct CycleTypeEvidence {
    pub primes: Vec<u64>,
    /// Degree pattern at each prime, descending.
    pub patterns: Vec<Vec<usize>>,
    pub discriminant_square: bool,
}

impl CycleTypeEvidence {
    pub fn distinct_patterns(&self) -> BTreeSet<Vec<usize>> {
        self.patterns.iter().cloned().collect()
    }
}

pub fn is_rational_square(q: &BigRational) -> bool {
    if q.is_negative() {
        return false;
    }
    let sq = |x: &BigInt| {
        let r = x.sqrt();
        &r * &r == *x
    };
    sq(q.numer()) && sq(q.denom())
}

/// Factor `f` modulo `prime_budget` primes from 10^4 upward, skipping divisors of
/// `disc(f) * lc(f)`.
pub fn cycle_types(f: &Poly, prime_budget: usize) -> CycleTypeEvidence {
    let f = f.primitive_part();
    let disc = discriminant(&f);
    let bad: BigInt = disc.numer() * f.lc();
    let mut primes = Vec::with_capacity(prime_budget);
    let mut patterns = Vec::with_capacity(prime_budget);
    let mut p = FIRST_PRIME;
    while primes.len() < prime_budget {
        p += 1;
        if !is_prime_u64(p) || (&bad % BigInt::from(p)).is_zero() {
            continue;
        }
        let Some(mut pat) = degree_pattern(&f, p) else { continue };
        pat.reverse();
        primes.push(p);
        patterns.push(pat);
    }
    CycleTypeEvidence { primes, patterns, discriminant_square: is_rational_square(&disc) }
}

/// Orbit lengths of `Gal(f)` on `k`-subsets of roots, read off the factor degrees
/// of the subset-sum resolvent (after a Tschirnhaus transform if it is not squarefree).
pub fn resolvent_signature(f: &Poly, k: usize) -> Result<Vec<usize>> {
    let f = f.primitive_part();
    let n = f.degree();
    // x, then x^d + c x for d = 2..n-1: a transform with a power not divisible by
    // the order of some root-of-unity pattern breaks coincidences among subset sums
    let transforms = std::iter::once(Poly::x()).chain((2..n.max(3)).flat_map(|d| {
        (1..=6).map(move |c| Poly::monomial(BigInt::one(), d).add(&Poly::from_i64(&[0, c])))
    }));
    for t in transforms {
        let g = tschirnhaus_by(&f, &t);
        if !g.is_squarefree() {
            continue;
        }
        let r = subset_sum_resolvent(&g, k);
        if !r.is_squarefree() {
            continue;
        }
        let mut degs: Vec<usize> = factor_z(&r).factors.iter().map(|(h, _)| h.degree()).collect();
        degs.sort_unstable();
        return Ok(degs);
    }
    Err(Error::GaloisFail(format!("no squarefree {k}-set resolvent found")))
}

fn log_likelihood(entry: &TransitiveGroupEntry, ev: &CycleTypeEvidence) -> f64 {
    ev.patterns
        .iter()
        .map(|t| (*entry.cycle_type_counts.get(t).unwrap_or(&0) as f64 / entry.order as f64).ln())
        .sum()
}

#[derive(Debug, Clone, Copy)]
pub struct GaloisOptions {
    pub prime_budget: usize,
}

impl Default for GaloisOptions {
    fn default() -> Self {
        GaloisOptions { prime_budget: DEFAULT_PRIME_BUDGET }
    }
}

pub fn galois_group(f: &Poly) -> Result<&'static TransitiveGroupEntry> {
    galois_group_with(f, GaloisOptions::default())
}

pub fn galois_group_with(f: &Poly, opts: GaloisOptions) -> Result<&'static TransitiveGroupEntry> {
    let n = f.degree();
    if !(2..=7).contains(&n) {
        return Err(Error::DegreeOutOfRange(n));
    }
    if f.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    if !factor_z(f).is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    let f = f.primitive_part();
    let cat = catalog()?;
    let max_budget = 4 * opts.prime_budget.max(1);
    let mut budget = opts.prime_budget.max(1);
    let mut ev = cycle_types(&f, budget);
    let admissible = |e: &TransitiveGroupEntry, ev: &CycleTypeEvidence| {
        e.degree == n
            && e.even == ev.discriminant_square
            && ev.patterns.iter().all(|t| e.cycle_type_counts.contains_key(t))
    };
    let mut cands: Vec<&TransitiveGroupEntry> = cat.iter().filter(|e| admissible(e, &ev)).collect();
    let table = resolvent_table();
    let mut resolved_k = 0;
    loop {
        // resolvent disambiguation, computed only while needed
        while cands.len() > 1 && resolved_k < 3 && resolved_k < n / 2 {
            resolved_k = if resolved_k == 0 { 2 } else { resolved_k + 1 };
            if signatures_agree(&cands, resolved_k, table) {
                continue;
            }
            let sig = resolvent_signature(&f, resolved_k)?;
            cands.retain(|e| table.get(&(n, e.t_number, resolved_k)) == Some(&sig));
        }
        match cands.len() {
            0 => return Err(Error::GaloisFail("no catalog group is consistent with the evidence".into())),
            1 => return Ok(finish(cands[0], &ev)),
            _ => {}
        }
        let mut scored: Vec<(f64, &TransitiveGroupEntry)> =
            cands.iter().map(|e| (log_likelihood(e, &ev), *e)).collect();
        scored.sort_by(|a, b| b.0.total_cmp(&a.0));
        let margin = scored[0].0 - scored[1].0;
        if margin > -LIKELIHOOD_RATIO.ln() {
            return Ok(finish(scored[0].1, &ev));
        }
        if budget >= max_budget {
            let names: Vec<String> = cands.iter().map(|e| e.label()).collect();
            return Err(Error::GaloisFail(format!("ambiguous between {}", names.join(", "))));
        }
        budget = (budget * 2).min(max_budget);
        ev = cycle_types(&f, budget);
        cands.retain(|e| admissible(e, &ev));
    }
}

fn signatures_agree(
    cands: &[&TransitiveGroupEntry],
    k: usize,
    table: &BTreeMap<(usize, usize, usize), Vec<usize>>,
) -> bool {
    let sigs: BTreeSet<Option<&Vec<usize>>> =
        cands.iter().map(|e| table.get(&(e.degree, e.t_number, k))).collect();
    sigs.len() <= 1
}

fn finish(entry: &'static TransitiveGroupEntry, ev: &CycleTypeEvidence) -> &'static TransitiveGroupEntry {
    assert!(
        ev.patterns.iter().all(|t| entry.cycle_type_counts.contains_key(t)),
        "Dedekind soundness: observed cycle type missing from {}",
        entry.label()
    );
    entry
}

/// Catalog entry by degree and T-number.
pub fn entry(degree: usize, t_number: usize) -> Result<&'static TransitiveGroupEntry> {
    catalog()?
        .iter()
        .find(|e| e.degree == degree && e.t_number == t_number)
        .ok_or_else(|| Error::InputError(format!("no catalog group {degree}T{t_number}")))
}
