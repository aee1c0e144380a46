//! Galois-like groups at desk scale: a numeric exponent-lattice oracle, brute-force
//! filtering of all `n!` root permutations against lattice bases, and checkers for
//! the triviality theorems built on them.
//!
//! Everything numeric here is a heuristic oracle for fixtures and cross-checks;
//! the group filtering and the checkers are exact given the oracle's lattices.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::drivers::{decide_group, QtrivialOptions};
use crate::error::{Error, Result};
use crate::galois;
use crate::lattice::{hnf, rat_mult_lattice, IntegerLattice};
use crate::linalg::Subspace;
use crate::numeric::{bits_for_digits, certified_roots, eval_with_derivative, lll_reduce, pi, Cx, Real, RootSystem};
use crate::numtests::is_ror;
use crate::permgroup::{Permutation, PermutationGroup};
use crate::poly::{factor_z, parse_poly, Poly};

pub const DEFAULT_PRECISION: u32 = 60;
pub const DEFAULT_DENOMINATOR_BOUND: u64 = 1_000_000;
/// Largest degree the oracle accepts.
pub const MAX_ORACLE_DEGREE: usize = 6;
/// Largest degree for brute-force permutation filtering.
pub const MAX_FILTER_DEGREE: usize = 8;

#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    /// Decimal digits used for relation detection; verification runs at 4x.
    pub precision: u32,
    pub denominator_bound: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { precision: DEFAULT_PRECISION, denominator_bound: DEFAULT_DENOMINATOR_BOUND }
    }
}

/// Oracle output. Always heuristic: relations found are verified, completeness is not.
#[derive(Debug, Clone, Serialize)]
pub struct NumericLattices {
    pub r_f: IntegerLattice,
    pub r_f_q: IntegerLattice,
    pub precision: u32,
    pub heuristic: bool,
    /// Relations that passed the 4x-precision check.
    pub verified_relations: usize,
    /// `R_f^Q` relations dropped because their value's denominator exceeded the bound.
    pub rejected_by_denominator: usize,
}

/// One integer relation found by lattice reduction, with its side data.
struct Relation {
    u: Vec<BigInt>,
    /// Exponents of the primes in the value (`R_f^Q` only).
    e: Vec<BigInt>,
}

fn check_oracle_input(f: &Poly) -> Result<()> {
    let n = f.degree();
    if f.is_zero() || n == 0 || n > MAX_ORACLE_DEGREE {
        return Err(Error::DegreeOutOfRange(n));
    }
    if f.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    Ok(())
}

/// Prime divisors by trial division (inputs are small: `lc * f(0)` of desk-scale
/// polynomials).
fn prime_divisors(m: &BigInt) -> Vec<BigInt> {
    let mut m = m.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        if (&m % &p).is_zero() {
            while (&m % &p).is_zero() {
                m /= &p;
            }
            out.push(p.clone());
        }
        p += 1;
    }
    if m > BigInt::one() {
        out.push(m);
    }
    out
}

/// Candidate exponent lattices `R_f` and `R_f^Q` from integer relations among the
/// logarithms of the roots.
///
/// `R_f`: `sum u_i ln|r_i| = 0` and `sum u_i arg r_i = 2 pi k`. `R_f^Q`: the value
/// is `+-prod p^{e_p}` over the primes dividing `lc * f(0)` (the only primes a root
/// can have nonzero valuation at), i.e. `sum u_i ln|r_i| = sum e_p ln p` and
/// `sum u_i arg r_i = pi k`. One reduced basis per lattice; rows with tiny residual
/// columns are the relations. Each is re-checked at four times the precision.
pub fn numeric_lattices(f: &Poly, precision: u32, denominator_bound: u64) -> Result<NumericLattices> {
    check_oracle_input(f)?;
    let roots = certified_roots(f, 4 * precision)?;
    numeric_lattices_from_roots(f, &roots, precision, denominator_bound)
}

/// As [`numeric_lattices`], reusing roots already computed to at least `4 * precision` digits.
pub fn numeric_lattices_from_roots(
    f: &Poly,
    roots: &RootSystem,
    precision: u32,
    denominator_bound: u64,
) -> Result<NumericLattices> {
    check_oracle_input(f)?;
    if precision < 20 {
        return Err(Error::InputError("oracle precision must be at least 20 digits".into()));
    }
    if roots.digits < 4 * precision {
        return Err(Error::InputError("roots are not precise enough for verification".into()));
    }
    let n = f.degree();
    let hi_bits = roots.bits();
    let lo_bits = bits_for_digits(precision) + 32;
    let ln_hi: Vec<Real> = roots.roots.iter().map(|r| r.ln_abs()).collect();
    let arg_hi: Vec<Real> = roots.roots.iter().map(|r| r.arg()).collect();
    let ln_lo: Vec<Real> = ln_hi.iter().map(|x| x.with_bits(lo_bits)).collect();
    let arg_lo: Vec<Real> = arg_hi.iter().map(|x| x.with_bits(lo_bits)).collect();

    let primes = prime_divisors(&(f.lc() * f.constant_term()));
    let lnp_hi: Vec<Real> =
        primes.iter().map(|p| crate::numeric::ln(&Real::from_int(p, hi_bits))).collect();
    let lnp_lo: Vec<Real> = lnp_hi.iter().map(|x| x.with_bits(lo_bits)).collect();

    let hi = Values { ln: &ln_hi, arg: &arg_hi, lnp: &lnp_hi, pi: pi(hi_bits) };
    let lo = Values { ln: &ln_lo, arg: &arg_lo, lnp: &lnp_lo, pi: pi(lo_bits) };

    let rf_rel = find_relations(n, &[], &lo, &hi, precision, 2)?;
    let rfq_rel = find_relations(n, &primes, &lo, &hi, precision, 1)?;

    let mut verified = rf_rel.len();
    let mut rejected = 0;
    let mut q_rows = Vec::new();
    for rel in &rfq_rel {
        let mut den = BigInt::one();
        for (p, e) in primes.iter().zip(&rel.e) {
            if e.is_negative() {
                den *= num_traits::pow(p.clone(), (-e).to_usize().unwrap_or(usize::MAX));
            }
        }
        if den > BigInt::from(denominator_bound) {
            rejected += 1;
        } else {
            verified += 1;
            q_rows.push(rel.u.clone());
        }
    }
    let rf_rows: Vec<Vec<BigInt>> = rf_rel.into_iter().map(|r| r.u).collect();
    Ok(NumericLattices {
        r_f: hnf(&rf_rows, n)?,
        r_f_q: hnf(&q_rows, n)?,
        precision,
        heuristic: true,
        verified_relations: verified,
        rejected_by_denominator: rejected,
    })
}

struct Values<'a> {
    ln: &'a [Real],
    arg: &'a [Real],
    lnp: &'a [Real],
    pi: Real,
}

impl Values<'_> {
    /// `(sum u ln|r| - sum e ln p, sum u arg r - k * period)`.
    fn residuals(&self, u: &[BigInt], k: &BigInt, e: &[BigInt], period: &Real) -> (Real, Real) {
        let bits = self.pi.bits();
        let mut a = Real::zero(bits);
        let mut b = Real::zero(bits);
        for (i, ui) in u.iter().enumerate() {
            a = a.add(&self.ln[i].mul_int(ui));
            b = b.add(&self.arg[i].mul_int(ui));
        }
        for (lp, ep) in self.lnp.iter().zip(e) {
            a = a.sub(&lp.mul_int(ep));
        }
        (a, b.sub(&period.mul_int(k)))
    }
}

/// Reduce the scaled relation basis and read off verified relations.
/// `period_mult` is 2 for arguments in `2 pi Z`, 1 for `pi Z`.
fn find_relations(
    n: usize,
    primes: &[BigInt],
    lo: &Values,
    hi: &Values,
    precision: u32,
    period_mult: i64,
) -> Result<Vec<Relation>> {
    let np = primes.len();
    let width = n + 1 + np;
    let scale = num_traits::pow(BigInt::from(10), (precision - 10) as usize);
    let period_lo = lo.pi.mul_int(&BigInt::from(period_mult));
    let period_hi = hi.pi.mul_int(&BigInt::from(period_mult));
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(width);
    for i in 0..width {
        let mut row = vec![BigInt::zero(); width + 2];
        row[i] = BigInt::one();
        if i < n {
            row[width] = lo.ln[i].round_scaled(&scale);
            row[width + 1] = lo.arg[i].round_scaled(&scale);
        } else if i == n {
            row[width + 1] = -period_lo.round_scaled(&scale);
        } else {
            row[width] = -lo.lnp[i - n - 1].round_scaled(&scale);
        }
        rows.push(row);
    }
    lll_reduce(&mut rows);

    let tol_lo = -(bits_for_digits(precision / 2) as i64);
    let tol_hi = -(bits_for_digits(2 * precision) as i64);
    let size_cap = num_traits::pow(BigInt::from(10), (precision / 8) as usize);
    let mut out = Vec::new();
    for row in rows {
        let u: Vec<BigInt> = row[..n].to_vec();
        let k = row[n].clone();
        let e: Vec<BigInt> = row[n + 1..width].to_vec();
        if u.iter().all(|x| x.is_zero()) || u.iter().any(|x| x.abs() >= size_cap) {
            continue;
        }
        let (a, b) = lo.residuals(&u, &k, &e, &period_lo);
        if !(a.abs_below_pow2(tol_lo) && b.abs_below_pow2(tol_lo)) {
            continue;
        }
        let (a, b) = hi.residuals(&u, &k, &e, &period_hi);
        if !(a.abs_below_pow2(tol_hi) && b.abs_below_pow2(tol_hi)) {
            return Err(Error::PrecisionExhausted(format!(
                "relation {u:?} holds to {} digits but fails at {}",
                precision / 2,
                2 * precision
            )));
        }
        out.push(Relation { u, e });
    }
    Ok(out)
}

/// The three Galois-like groups as explicit sorted element lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisLikeTriple {
    pub degree: usize,
    pub g_f: Vec<Permutation>,
    pub g_f_b: Vec<Permutation>,
    pub g_f_q: Vec<Permutation>,
}

impl GaloisLikeTriple {
    pub fn group_f(&self) -> PermutationGroup {
        group_from_elements(self.degree, &self.g_f)
    }

    pub fn group_f_b(&self) -> PermutationGroup {
        group_from_elements(self.degree, &self.g_f_b)
    }

    pub fn group_f_q(&self) -> PermutationGroup {
        group_from_elements(self.degree, &self.g_f_q)
    }
}

/// `n!` as `u128`.
pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Every permutation of `0..n` in lexicographic order of images.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![Permutation::from_images(cur.clone()).expect("identity")];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Permutation::from_images(cur.clone()).expect("bijection"));
    }
}

/// `hat(sigma)(v)`: the coordinate permutation with `b_i = v_{sigma(i)}`, so that
/// `sigma(Omega)^{hat(sigma)(v)} = Omega^v`.
pub fn hat(sigma: &Permutation, v: &[BigInt]) -> Vec<BigInt> {
    (0..v.len()).map(|i| v[sigma.apply(i)].clone()).collect()
}

/// A group from an element list, generated by a greedily chosen subset.
pub fn group_from_elements(n: usize, elements: &[Permutation]) -> PermutationGroup {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut g = PermutationGroup::new(n, Vec::new()).expect("degree fits");
    for e in elements {
        if !g.contains(e) {
            gens.push(e.clone());
            g = PermutationGroup::new(n, gens.clone()).expect("degree fits");
        }
    }
    g
}

/// Filter all `n!` permutations against lattice bases.
///
/// `sigma` lies in `G_f` iff `sigma(Omega)^v = 1` for every relation `v`, i.e. iff
/// `hat(sigma)^{-1}(v) in R_f`; checking the basis rows suffices because the image
/// is again a lattice of the same rank and determinant. `G_f^Q` is the same with
/// `R_f^Q`; `G_f^B` asks `hat(sigma)^{-1}(v) - v in R_f` for every `R_f^Q` row.
pub fn galois_like_groups(r_f: &IntegerLattice, r_f_q: &IntegerLattice, n: usize) -> Result<GaloisLikeTriple> {
    if n > MAX_FILTER_DEGREE {
        return Err(Error::DegreeTooLarge(n));
    }
    for l in [r_f, r_f_q] {
        if l.ambient_dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: l.ambient_dim() });
        }
    }
    if !r_f_q.contains_lattice(r_f)? {
        return Err(Error::InputError("R_f is not contained in R_f^Q".into()));
    }
    let (mut g_f, mut g_f_b, mut g_f_q) = (Vec::new(), Vec::new(), Vec::new());
    for sigma in all_permutations(n) {
        let inv = sigma.inverse();
        let maps_into = |l: &IntegerLattice| -> Result<bool> {
            for v in l.basis() {
                if !l.member(&hat(&inv, v))? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        if maps_into(r_f)? {
            g_f.push(sigma.clone());
        }
        if maps_into(r_f_q)? {
            g_f_q.push(sigma.clone());
        }
        let mut fixes_values = true;
        for v in r_f_q.basis() {
            let w: Vec<BigInt> = hat(&inv, v).iter().zip(v).map(|(a, b)| a - b).collect();
            if !r_f.member(&w)? {
                fixes_values = false;
                break;
            }
        }
        if fixes_values {
            g_f_b.push(sigma);
        }
    }
    Ok(GaloisLikeTriple { degree: n, g_f, g_f_b, g_f_q })
}

/// Closed under composition and inverse (as a finite set, hence a group).
pub fn is_closed(elements: &[Permutation]) -> bool {
    let set: HashSet<&[usize]> = elements.iter().map(|p| p.images()).collect();
    elements.iter().all(|a| {
        set.contains(a.inverse().images()) && elements.iter().all(|b| set.contains(a.mul(b).images()))
    })
}

fn is_subset(a: &[Permutation], b: &[Permutation]) -> bool {
    let set: HashSet<&[usize]> = b.iter().map(|p| p.images()).collect();
    a.iter().all(|p| set.contains(p.images()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootKind {
    Rational,
    /// Root of a rational but not rational.
    Ror,
    NonRor,
}

/// Everything the checkers need about one polynomial.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub poly: Poly,
    pub roots: RootSystem,
    pub lattices: NumericLattices,
    pub triple: GaloisLikeTriple,
    /// Irreducible factors (primitive, positive leading coefficient) with their ROR status.
    pub factors: Vec<(Poly, bool)>,
    /// For each root in canonical order, the index of its factor.
    pub root_factor: Vec<usize>,
    pub root_kinds: Vec<RootKind>,
}

impl Analysis {
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1
    }
}

pub fn analyze(f: &Poly, opts: &OracleOptions) -> Result<Analysis> {
    check_oracle_input(f)?;
    let f = f.primitive_part();
    let n = f.degree();
    let roots = certified_roots(&f, 4 * opts.precision)?;
    let lattices = numeric_lattices_from_roots(&f, &roots, opts.precision, opts.denominator_bound)?;
    let triple = galois_like_groups(&lattices.r_f, &lattices.r_f_q, n)?;
    let mut factors = Vec::new();
    for (g, _) in factor_z(&f).factors {
        let ror = is_ror(&g)?.is_ror();
        factors.push((g, ror));
    }
    let root_factor = assign_roots(&roots, &factors)?;
    let root_kinds = root_factor
        .iter()
        .map(|&j| match (factors[j].0.degree(), factors[j].1) {
            (1, _) => RootKind::Rational,
            (_, true) => RootKind::Ror,
            _ => RootKind::NonRor,
        })
        .collect();
    Ok(Analysis { poly: f, roots, lattices, triple, factors, root_factor, root_kinds })
}

/// Match each root to the factor that (numerically) vanishes on it; each factor
/// must receive exactly its degree's worth of roots.
fn assign_roots(roots: &RootSystem, factors: &[(Poly, bool)]) -> Result<Vec<usize>> {
    let mut counts = vec![0usize; factors.len()];
    let mut out = Vec::new();
    for r in &roots.roots {
        let mut best: Option<(usize, i64)> = None;
        for (j, (g, _)) in factors.iter().enumerate() {
            let (v, _) = eval_with_derivative(g.coeffs(), r);
            let size = v.abs().ilog2().unwrap_or(i64::MIN);
            if best.is_none_or(|(_, s)| size < s) {
                best = Some((j, size));
            }
        }
        let (j, _) = best.expect("at least one factor");
        counts[j] += 1;
        out.push(j);
    }
    if counts.iter().zip(factors).any(|(&c, (g, _))| c != g.degree()) {
        return Err(Error::PrecisionExhausted("roots could not be matched to factors".into()));
    }
    Ok(out)
}

/// One side condition of a theorem, by name.
#[derive(Debug, Clone, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

/// Both sides of a triviality theorem evaluated independently.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub theorem: &'static str,
    pub polynomial: String,
    /// Triviality of the lattice, from the oracle.
    pub lattice_trivial: bool,
    pub conditions: Vec<Condition>,
    pub conditions_hold: bool,
    /// The biconditional itself.
    pub holds: bool,
}

fn theorem_report(theorem: &'static str, a: &Analysis, lattice_trivial: bool, conditions: Vec<Condition>) -> TheoremReport {
    let conditions_hold = conditions.iter().all(|c| c.holds);
    TheoremReport {
        theorem,
        polynomial: a.poly.to_string(),
        lattice_trivial,
        conditions,
        conditions_hold,
        holds: lattice_trivial == conditions_hold,
    }
}

/// Product of the roots of a polynomial: `(-1)^deg f(0) / lc`.
fn root_product(g: &Poly) -> BigRational {
    let sign = if g.degree().is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    BigRational::new(sign * g.constant_term(), g.lc())
}

/// `v_f`: the rational roots, preceded by the product of all non-ROR roots if any.
pub fn v_f(a: &Analysis) -> Vec<BigRational> {
    let mut out = Vec::new();
    let non_ror: Vec<&Poly> = a.factors.iter().filter(|(g, r)| g.degree() > 1 && !r).map(|(g, _)| g).collect();
    if !non_ror.is_empty() {
        out.push(non_ror.iter().map(|g| root_product(g)).product());
    }
    for (g, _) in &a.factors {
        if g.degree() == 1 {
            out.push(root_product(g));
        }
    }
    out
}

fn is_full_symmetric(elements: &[Permutation], n: usize) -> bool {
    elements.len() as u128 == factorial(n)
}

pub fn check_rftri(f: &Poly) -> Result<TheoremReport> {
    Ok(check_rftri_on(&analyze(f, &OracleOptions::default())?))
}

/// R_f is trivial iff (i) `G_f` is the full symmetric group, (ii) every root is
/// rational or not ROR, and (iii) `R_{v_f}` is trivial.
pub fn check_rftri_on(a: &Analysis) -> TheoremReport {
    let n = a.poly.degree();
    let c1 = is_full_symmetric(&a.triple.g_f, n);
    let c2 = a.root_kinds.iter().all(|&k| k != RootKind::Ror);
    let v = v_f(a);
    let c3 = if v.is_empty() {
        true
    } else {
        rat_mult_lattice(&v).expect("nonzero entries").is_trivial()
    };
    let vs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    let conditions = vec![
        Condition { name: "G_f = Sym", holds: c1, detail: format!("|G_f| = {}", a.triple.g_f.len()) },
        Condition { name: "roots rational or non-ROR", holds: c2, detail: format!("{:?}", a.root_kinds) },
        Condition { name: "R_{v_f} trivial", holds: c3, detail: format!("v_f = ({})", vs.join(", ")) },
    ];
    theorem_report("rftri", a, a.lattices.r_f.is_trivial(), conditions)
}

pub fn check_rfqtri(f: &Poly) -> Result<TheoremReport> {
    Ok(check_rfqtri_on(&analyze(f, &OracleOptions::default())?))
}

/// R_f^Q is trivial iff (i) `G_f^B` is the full symmetric group, (ii) the degree is
/// 1 or no root is ROR, and (iii) f is irreducible.
pub fn check_rfqtri_on(a: &Analysis) -> TheoremReport {
    let n = a.poly.degree();
    let c1 = is_full_symmetric(&a.triple.g_f_b, n);
    let c2 = n == 1 || a.root_kinds.iter().all(|&k| k == RootKind::NonRor);
    let c3 = a.is_irreducible();
    let conditions = vec![
        Condition { name: "G_f^B = Sym", holds: c1, detail: format!("|G_f^B| = {}", a.triple.g_f_b.len()) },
        Condition { name: "degree 1 or no ROR root", holds: c2, detail: format!("{:?}", a.root_kinds) },
        Condition { name: "f irreducible", holds: c3, detail: format!("{} irreducible factors", a.factors.len()) },
    ];
    theorem_report("rfqtri", a, a.lattices.r_f_q.is_trivial(), conditions)
}

/// A corpus line.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusItem {
    pub polynomial: String,
    #[serde(rename = "expected_Rf_rank")]
    pub expected_rf_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_basis: Option<Vec<Vec<i64>>>,
    pub source: String,
}

/// Parse a JSON-lines corpus; blank lines are skipped.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusItem>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::Parse(format!("corpus line {}: {e}", i + 1))))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
    /// Failed where the oracle is known to be possibly incomplete.
    Advisory,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyCheck {
    pub property: &'static str,
    pub status: CheckStatus,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ItemReport {
    pub polynomial: String,
    pub checks: Vec<PropertyCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ItemReport {
    pub fn failures(&self) -> Vec<&PropertyCheck> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail).collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Section3Report {
    pub items: Vec<ItemReport>,
}

impl Section3Report {
    pub fn failure_count(&self) -> usize {
        self.items.iter().map(|i| i.failures().len() + usize::from(i.error.is_some())).sum()
    }

    pub fn count(&self, property: &str, status: CheckStatus) -> usize {
        self.items.iter().flat_map(|i| &i.checks).filter(|c| c.property == property && c.status == status).count()
    }
}

pub fn check_section3_properties(corpus: &[CorpusItem]) -> Section3Report {
    check_section3_properties_with(corpus, &OracleOptions::default())
}

pub fn check_section3_properties_with(corpus: &[CorpusItem], opts: &OracleOptions) -> Section3Report {
    let items = corpus
        .iter()
        .map(|item| {
            let mut report = ItemReport { polynomial: item.polynomial.clone(), checks: Vec::new(), error: None };
            let analysis = parse_poly(&item.polynomial).and_then(|(_, f)| analyze(&f, opts));
            match analysis {
                Ok(a) => report.checks = item_checks(item, &a),
                Err(e) => report.error = Some(e.to_string()),
            }
            report
        })
        .collect();
    Section3Report { items }
}

fn check(property: &'static str, ok: bool, note: impl Into<String>) -> PropertyCheck {
    PropertyCheck { property, status: if ok { CheckStatus::Pass } else { CheckStatus::Fail }, note: note.into() }
}

fn not_applicable(property: &'static str, note: impl Into<String>) -> PropertyCheck {
    PropertyCheck { property, status: CheckStatus::NotApplicable, note: note.into() }
}

/// Exact `n v_i = sum v` at every non-ROR position.
fn nonror_average(v: &[BigInt], kinds: &[RootKind]) -> bool {
    let total: BigInt = v.iter().sum();
    let n = BigInt::from(v.len());
    v.iter().zip(kinds).all(|(x, &k)| k != RootKind::NonRor || &n * x == total)
}

fn transitive_2(g: &PermutationGroup) -> bool {
    g.degree() >= 2 && g.is_2transitive().unwrap_or(false)
}

fn item_checks(item: &CorpusItem, a: &Analysis) -> Vec<PropertyCheck> {
    let n = a.poly.degree();
    let t = &a.triple;
    let mut out = Vec::new();

    if let Some(rank) = item.expected_rf_rank {
        out.push(check("fixture rank", a.lattices.r_f.rank() == rank, format!("oracle rank {}, expected {rank}", a.lattices.r_f.rank())));
    }
    if let Some(basis) = &item.expected_basis {
        let ok = IntegerLattice::from_i64_rows(basis, n).map(|l| crate::lattice::equal(&l, &a.lattices.r_f)).unwrap_or(false);
        out.push(check("fixture basis", ok, format!("oracle basis {:?}", a.lattices.r_f.basis_i64())));
    }

    // (a) closure, and the containments G_f^B in G_f, G_f^Q
    let closed = [&t.g_f, &t.g_f_b, &t.g_f_q].iter().all(|s| is_closed(s));
    out.push(check("closure", closed, format!("orders {}, {}, {}", t.g_f.len(), t.g_f_b.len(), t.g_f_q.len())));
    let contained = is_subset(&t.g_f_b, &t.g_f) && is_subset(&t.g_f_b, &t.g_f_q);
    out.push(check("containment", contained, ""));

    // (b) Galois group inside G_f^B
    out.push(galois_embedding(a));

    let rftri = check_rftri_on(a);
    let rfqtri = check_rfqtri_on(a);
    out.push(check("rftri", rftri.holds, format!("lattice trivial {}, conditions {}", rftri.lattice_trivial, rftri.conditions_hold)));
    out.push(check("rfqtri", rfqtri.holds, format!("lattice trivial {}, conditions {}", rfqtri.lattice_trivial, rfqtri.conditions_hold)));

    // (c) transitive G_f^B: spans, root-product clause and the triviality biconditional
    let g_b = t.group_f_b();
    if g_b.is_transitive() {
        let w = a.lattices.r_f.rational_span();
        let wq = a.lattices.r_f_q.rational_span();
        out.push(check("wfwfq sum", wq == a.lattices.r_f.span_plus_allones(), format!("dim W = {}, dim W^Q = {}", w.dim(), wq.dim())));
        let unit = root_product(&a.poly).abs().is_one();
        out.push(check("wfwfq equality", (wq == w) == unit, format!("root product {}", root_product(&a.poly))));
        let v0_dim = |s: &Subspace| s.dim() - usize::from(!in_v0(s));
        out.push(check("wfwfq V0", v0_dim(&w) == v0_dim(&wq), ""));
        out.push(check(
            "triiff",
            a.lattices.r_f.is_trivial() == a.lattices.r_f_q.is_trivial(),
            format!("R_f trivial {}, R_f^Q trivial {}", a.lattices.r_f.is_trivial(), a.lattices.r_f_q.is_trivial()),
        ));
    } else {
        out.push(not_applicable("wfwfq sum", "G_f^B intransitive"));
        out.push(not_applicable("triiff", "G_f^B intransitive"));
    }

    // (d) 2-transitive groups force equal non-ROR coordinates
    let g_f = t.group_f();
    let g_q = t.group_f_q();
    if transitive_2(&g_f) {
        let ok = a.lattices.r_f.basis().iter().all(|v| nonror_average(v, &a.root_kinds));
        out.push(check("gf2tran", ok, ""));
    } else {
        out.push(not_applicable("gf2tran", "G_f not 2-transitive"));
    }
    if transitive_2(&g_b) || transitive_2(&g_q) {
        let ok = a.lattices.r_f_q.basis().iter().all(|v| nonror_average(v, &a.root_kinds));
        let mixed = a.root_kinds.contains(&RootKind::NonRor) && a.root_kinds.iter().any(|&k| k != RootKind::NonRor);
        let status = match (ok, mixed) {
            (true, _) => CheckStatus::Pass,
            (false, true) => CheckStatus::Advisory,
            (false, false) => CheckStatus::Fail,
        };
        out.push(PropertyCheck { property: "gfq2tran", status, note: String::new() });
    } else {
        out.push(not_applicable("gfq2tran", "G_f^B and G_f^Q not 2-transitive"));
    }

    // (e) the four equivalent conditions
    if n >= 2 && rftri.conditions[1].holds && rftri.conditions[2].holds {
        out.push(four_equivalent("4eq", &g_f, n));
    } else {
        out.push(not_applicable("4eq", "side conditions of rftri fail"));
    }
    if n >= 2 && rfqtri.conditions[1].holds && rfqtri.conditions[2].holds {
        let mut c = four_equivalent("4eqagain", &g_b, n);
        if c.status == CheckStatus::Pass {
            c = four_equivalent("4eqagain", &g_q, n);
        }
        out.push(c);
    } else {
        out.push(not_applicable("4eqagain", "side conditions of rfqtri fail"));
    }
    out
}

fn in_v0(s: &Subspace) -> bool {
    s.basis.iter().all(|r| r.iter().sum::<BigRational>().is_zero())
}

/// Sym; 2-transitive; 2-homogeneous; transitive with a Q-trivial pair.
fn four_equivalent(property: &'static str, g: &PermutationGroup, n: usize) -> PropertyCheck {
    let sym = g.order() == factorial(n);
    let t2 = g.is_2transitive().unwrap_or(false);
    let h2 = g.is_2homogeneous().unwrap_or(false);
    let opts = QtrivialOptions { force_module_check: true, ..QtrivialOptions::default() };
    let qt = if g.is_transitive() {
        match decide_group(g, &opts) {
            Ok(v) => v.verdict,
            Err(e) => return check(property, false, format!("module check failed: {e}")),
        }
    } else {
        false
    };
    let all = [sym, t2, h2, qt];
    check(property, all.iter().all(|&b| b == sym), format!("sym {sym}, 2-transitive {t2}, 2-homogeneous {h2}, Q-trivial {qt}"))
}

/// Find the conjugates of the catalog group whose invariants take integral values
/// on the roots, and require each of them to lie inside `G_f^B`.
///
/// For a conjugate `H` equal to the actual Galois action, the orbit sums
/// `sum_{h in H} prod (lc r_{h(i)} + i + 1)^{e_i}` are fixed by the Galois group and are
/// algebraic integers, hence integers. The shifts and two exponent patterns make
/// accidental integrality of a wrong conjugate unlikely (bare monomials in roots
/// of unity are integral far too often).
fn galois_embedding(a: &Analysis) -> PropertyCheck {
    const PROP: &str = "subg";
    let n = a.poly.degree();
    if !a.is_irreducible() || n < 2 {
        return not_applicable(PROP, "reducible or linear");
    }
    let entry = match galois::galois_group(&a.poly) {
        Ok(e) => e,
        Err(e) => return not_applicable(PROP, format!("Galois group not identified: {e}")),
    };
    let base = match entry.group().enumerate_elements(factorial(n)) {
        Ok(e) => e,
        Err(e) => return check(PROP, false, e.to_string()),
    };
    let lc = a.poly.lc();
    let scaled: Vec<Cx> = a.roots.roots.iter().map(|r| r.scale_int(&lc)).collect();
    let patterns: [Vec<u32>; 2] = [(0..n as u32).collect(), (0..n as u32).map(|i| i * i).collect()];
    let tol = -((bits_for_digits(a.roots.digits / 3)) as i64);
    let mut seen: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    let mut matched = 0usize;
    let b_set: HashSet<&[usize]> = a.triple.g_f_b.iter().map(|p| p.images()).collect();
    for pi in all_permutations(n) {
        let pinv = pi.inverse();
        let mut conj: Vec<Vec<usize>> = base.iter().map(|g| pinv.mul(g).mul(&pi).images().to_vec()).collect();
        conj.sort();
        if !seen.insert(conj.clone()) {
            continue;
        }
        let integral = patterns.iter().all(|e| {
            let bits = scaled[0].bits();
            let mut sum = Cx::zero(bits);
            for h in &conj {
                let mut term = Cx::new(Real::from_i64(1, bits), Real::zero(bits));
                for (i, &ei) in e.iter().enumerate() {
                    let shifted = scaled[h[i]].add(&Cx::new(Real::from_i64(i as i64 + 1, bits), Real::zero(bits)));
                    for _ in 0..ei {
                        term = term.mul(&shifted);
                    }
                }
                sum = sum.add(&term);
            }
            let nearest = sum.re.round_scaled(&BigInt::one());
            sum.im.abs_below_pow2(tol) && sum.re.sub(&Real::from_int(&nearest, bits)).abs_below_pow2(tol)
        });
        if integral {
            matched += 1;
            if !conj.iter().all(|h| b_set.contains(h.as_slice())) {
                return check(PROP, false, format!("a conjugate of {} with integral invariants is not inside G_f^B", entry.label()));
            }
        }
    }
    check(PROP, matched > 0, format!("{} inside G_f^B (|G_f^B| = {}), {matched} matching conjugate(s)", entry.label(), a.triple.g_f_b.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap().1
    }

    #[test]
    fn example1_oracle() {
        let g = p("x^4 - 4x^3 + 4x^2 + 6");
        let l = numeric_lattices(&g, 60, DEFAULT_DENOMINATOR_BOUND).unwrap();
        assert_eq!(l.r_f.rank(), 1);
        let v = &l.r_f.basis_i64()[0];
        let mut abs: Vec<i64> = v.iter().map(|x| x.abs()).collect();
        abs.sort();
        assert_eq!(abs, vec![2, 2, 2, 2]);
        assert_eq!(v.iter().sum::<i64>(), 0);
        let shifted = p("x^4 - 8x^3 + 22x^2 - 24x + 15");
        assert_eq!(numeric_lattices(&shifted, 60, DEFAULT_DENOMINATOR_BOUND).unwrap().r_f.rank(), 0);
    }

    #[test]
    fn sqrt2_matches_exact() {
        let l = numeric_lattices(&p("x^2 - 2"), 40, DEFAULT_DENOMINATOR_BOUND).unwrap();
        assert_eq!(l.r_f.basis_i64(), vec![vec![2, -2]]);
        // (-sqrt 2)(sqrt 2) = -2 and (-sqrt 2)/(sqrt 2) = -1 are rational
        assert_eq!(l.r_f_q.rank(), 2);
    }

    #[test]
    fn groups_from_lattices() {
        let z3 = IntegerLattice::zero(3);
        let t = galois_like_groups(&z3, &z3, 3).unwrap();
        assert_eq!((t.g_f.len(), t.g_f_b.len(), t.g_f_q.len()), (6, 6, 6));

        let r = IntegerLattice::from_i64_rows(&[vec![-2, 2, 2, -2]], 4).unwrap();
        let t = galois_like_groups(&r, &r, 4).unwrap();
        assert_eq!(t.g_f.len(), 8);
        assert!(t.g_f.iter().all(|s| {
            let a = s.apply(0);
            let b = s.apply(3);
            (a == 0 || a == 3) == (b == 0 || b == 3)
        }));

        let r = IntegerLattice::from_i64_rows(&[vec![1, 1, -1]], 3).unwrap();
        let q = IntegerLattice::from_i64_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], 3).unwrap();
        let t = galois_like_groups(&r, &q, 3).unwrap();
        assert_eq!(t.g_f.len(), 2);
        assert!(t.g_f.iter().any(|s| s.images() == [1, 0, 2]));
        assert!(is_closed(&t.g_f) && is_closed(&t.g_f_b) && is_closed(&t.g_f_q));
        assert_eq!(galois_like_groups(&IntegerLattice::zero(9), &IntegerLattice::zero(9), 9), Err(Error::DegreeTooLarge(9)));
    }

    #[test]
    fn theorem_examples() {
        let r = check_rftri(&p("(x-2)(x-3)(x-6)")).unwrap();
        assert!(!r.lattice_trivial && !r.conditions[0].holds && r.holds);

        let a = analyze(&p("x^4 - 8x^3 + 22x^2 - 24x + 15"), &OracleOptions::default()).unwrap();
        assert_eq!(v_f(&a), vec![BigRational::from_integer(15.into())]);
        let r = check_rftri_on(&a);
        assert!(r.lattice_trivial && r.conditions_hold && r.holds);

        let r = check_rfqtri(&p("x^2 + 1")).unwrap();
        assert!(!r.lattice_trivial && !r.conditions[1].holds && r.holds);
    }

    #[test]
    fn section3_on_examples() {
        let items: Vec<CorpusItem> = ["x^4 - 4x^3 + 4x^2 + 6", "(x-2)(x-3)(x-6)", "x^5 - x - 1"]
            .iter()
            .map(|s| CorpusItem { polynomial: s.to_string(), expected_rf_rank: None, expected_basis: None, source: "derived".into() })
            .collect();
        let rep = check_section3_properties(&items);
        assert_eq!(rep.failure_count(), 0, "{}", serde_json::to_string_pretty(&rep).unwrap());
        let subg = rep.items[0].checks.iter().find(|c| c.property == "subg").unwrap();
        assert_eq!(subg.status, CheckStatus::Pass);
        assert!(rep.items[1].checks.iter().any(|c| c.property == "triiff" && c.status == CheckStatus::NotApplicable));
    }
}
