//! Top-level pipelines: the Q-triviality decision for an irreducible polynomial,
//! membership in the set `S` of exceptional degrees, membership in the generic
//! class `E+`, and the exponent-lattice basis for `E+` (FastBasis+).

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{self, GaloisOptions};
use crate::lattice::{hnf, ror_lattice, IntegerLattice};
use crate::numtests::{is_ror, Ror, RorWitness};
use crate::permgroup::PermutationGroup;
use crate::poly::modp::is_prime_u64;
use crate::poly::{factor_z, power_form, Poly, PowerForm};
use crate::qmodule::{root_difference, Irreducibility, QModuleAction, DEFAULT_ROUNDS};

/// Is `n` a prime power or `2^(f-1) (2^f - 1)` with `f >= 3` and `2^f - 1` prime?
pub fn in_set_s(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if is_prime_power(n) {
        return true;
    }
    (3..32u32).any(|f| {
        let mersenne = (1u64 << f) - 1;
        (1u64 << (f - 1)) * mersenne == n && is_prime_u64(mersenne)
    })
}

pub fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..).take_while(|d| d * d <= n).find(|d| n.is_multiple_of(*d)).unwrap_or(n);
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QtrivialPath {
    PrimeDegree,
    DoublyTransitive,
    NotInS,
    ModuleCheck,
}

/// The group a verdict was reached with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupInfo {
    pub degree: usize,
    /// Catalog T-number; `None` for a user-supplied group.
    pub t_number: Option<usize>,
    pub order: u64,
    pub name: String,
}

impl GroupInfo {
    pub fn from_entry(e: &galois::TransitiveGroupEntry) -> Self {
        GroupInfo { degree: e.degree, t_number: Some(e.t_number), order: e.order, name: e.name.clone() }
    }

    pub fn user(g: &PermutationGroup) -> Self {
        GroupInfo {
            degree: g.degree(),
            t_number: None,
            order: u64::try_from(g.order()).unwrap_or(u64::MAX),
            name: "user".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleCheck {
    /// Dimension of the submodule spun from `e_2 - e_1`.
    pub spin_dim: usize,
    pub decision: Irreducibility,
}

#[derive(Debug, Clone, Serialize)]
pub struct QtrivialVerdict {
    pub verdict: bool,
    pub path: QtrivialPath,
    pub group: Option<GroupInfo>,
    pub module_check: Option<ModuleCheck>,
    pub timings_ms: BTreeMap<String, f64>,
}

#[derive(Debug, Clone)]
pub struct QtrivialOptions {
    /// Use this group instead of computing the Galois group (any degree).
    pub group: Option<PermutationGroup>,
    pub seed: u64,
    pub rounds: usize,
    pub galois: GaloisOptions,
    /// Skip the prime-degree, 2-transitivity and set-S shortcuts and always run the
    /// module check.
    pub force_module_check: bool,
}

impl Default for QtrivialOptions {
    fn default() -> Self {
        QtrivialOptions {
            group: None,
            seed: 1,
            rounds: DEFAULT_ROUNDS,
            galois: GaloisOptions::default(),
            force_module_check: false,
        }
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub fn is_qtrivial(f: &Poly) -> Result<QtrivialVerdict> {
    is_qtrivial_with(f, &QtrivialOptions::default())
}

pub fn is_qtrivial_with(f: &Poly, opts: &QtrivialOptions) -> Result<QtrivialVerdict> {
    let start = Instant::now();
    let mut timings = BTreeMap::new();
    if f.is_zero() || f.constant_term().is_zero() {
        return Err(Error::InputError("polynomial has zero constant term".into()));
    }
    let n = f.degree();
    if n < 2 {
        return Err(Error::InputError("degree must be at least 2".into()));
    }
    let t = Instant::now();
    let irreducible = factor_z(f).is_irreducible();
    timings.insert("factor".into(), ms(t));
    if !irreducible {
        return Err(Error::InputError("polynomial is reducible over Q".into()));
    }
    if is_prime_u64(n as u64) && !opts.force_module_check {
        timings.insert("total".into(), ms(start));
        return Ok(QtrivialVerdict {
            verdict: true,
            path: QtrivialPath::PrimeDegree,
            group: None,
            module_check: None,
            timings_ms: timings,
        });
    }
    let t = Instant::now();
    let (group, info) = match &opts.group {
        Some(g) => {
            if g.degree() != n {
                return Err(Error::InputError(format!(
                    "group has degree {}, polynomial has degree {n}",
                    g.degree()
                )));
            }
            if !g.is_transitive() {
                return Err(Error::InputError("the Galois group of an irreducible polynomial is transitive".into()));
            }
            (g.clone(), GroupInfo::user(g))
        }
        None => {
            let e = galois::galois_group_with(f, opts.galois)?;
            (e.group().clone(), GroupInfo::from_entry(e))
        }
    };
    timings.insert("galois".into(), ms(t));
    let mut v = decide_group(&group, opts)?;
    v.group = Some(info);
    v.timings_ms.extend(timings);
    v.timings_ms.insert("total".into(), ms(start));
    Ok(v)
}

/// Steps after the Galois group is known, for a transitive group of degree `>= 2`.
/// The prime-degree rule is applied here too unless forced past it.
pub fn decide_group(group: &PermutationGroup, opts: &QtrivialOptions) -> Result<QtrivialVerdict> {
    let n = group.degree();
    let mut timings = BTreeMap::new();
    let verdict = |verdict, path, module_check, timings_ms| QtrivialVerdict {
        verdict,
        path,
        group: Some(GroupInfo::user(group)),
        module_check,
        timings_ms,
    };
    if !opts.force_module_check {
        if is_prime_u64(n as u64) {
            return Ok(verdict(true, QtrivialPath::PrimeDegree, None, timings));
        }
        if group.is_2transitive()? {
            return Ok(verdict(true, QtrivialPath::DoublyTransitive, None, timings));
        }
        if !in_set_s(n as u64) {
            return Ok(verdict(false, QtrivialPath::NotInS, None, timings));
        }
    }
    let t = Instant::now();
    let action = QModuleAction::new(group);
    let spin_dim = action.spin(&root_difference(n, 1, 0)).dim();
    let decision = action.is_q_irreducible_with(opts.seed, opts.rounds, !opts.force_module_check);
    timings.insert("module_check".into(), ms(t));
    let ok = match &decision {
        Irreducibility::Irreducible => spin_dim == n - 1,
        Irreducibility::Reducible(_) => false,
        Irreducibility::Undecided => return Err(Error::ModuleCheckInconclusive),
    };
    Ok(verdict(ok, QtrivialPath::ModuleCheck, Some(ModuleCheck { spin_dim, decision }), timings))
}

/// Why a polynomial is or is not in `E+`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum EPlusReason {
    /// `f = c g^k` with all roots of `g` roots of rationals.
    RootsOfRationals,
    /// `f = c g^k` with `(Gal(g), stabilizer)` Q-trivial.
    Qtrivial,
    NotPrimePower,
    /// `x` divides `f`.
    ZeroConstantTerm,
    ConstantPolynomial,
    /// `g` is neither ROR nor Q-trivial.
    NeitherRorNorQtrivial,
    /// Membership could not be decided (Galois identification or module check failed).
    Undetermined(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerData {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub c: BigRational,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub g: Poly,
    pub k: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct EPlusReport {
    pub member: bool,
    pub reason: EPlusReason,
    pub power: Option<PowerData>,
    pub ror: Option<RorWitness>,
    pub qtrivial: Option<QtrivialVerdict>,
    #[serde(skip)]
    failure: Option<Error>,
}

pub fn in_e_plus(f: &Poly) -> EPlusReport {
    in_e_plus_with(f, &QtrivialOptions::default())
}

pub fn in_e_plus_with(f: &Poly, opts: &QtrivialOptions) -> EPlusReport {
    let report = |member, reason, power, ror, qtrivial, failure| EPlusReport {
        member,
        reason,
        power,
        ror,
        qtrivial,
        failure,
    };
    if f.is_zero() || f.degree() == 0 {
        return report(false, EPlusReason::ConstantPolynomial, None, None, None, None);
    }
    let (c, g, k) = match power_form(f) {
        Err(_) => return report(false, EPlusReason::ZeroConstantTerm, None, None, None, None),
        Ok(PowerForm::NotPrimePower) => return report(false, EPlusReason::NotPrimePower, None, None, None, None),
        Ok(PowerForm::Power { c, g, k }) => (c, g, k),
    };
    let power = Some(PowerData { c, g: g.clone(), k });
    match is_ror(&g) {
        Ok(Ror::Witness(w)) => return report(true, EPlusReason::RootsOfRationals, power, Some(w), None, None),
        Ok(Ror::NotRor) => {}
        Err(e) => return report(false, EPlusReason::Undetermined(e.to_string()), power, None, None, Some(e)),
    }
    if g.degree() == 1 {
        unreachable!("linear polynomials are ROR");
    }
    match is_qtrivial_with(&g, opts) {
        Ok(v) if v.verdict => report(true, EPlusReason::Qtrivial, power, None, Some(v), None),
        Ok(v) => report(false, EPlusReason::NeitherRorNorQtrivial, power, None, Some(v), None),
        Err(e) => report(false, EPlusReason::Undetermined(e.to_string()), power, None, None, Some(e)),
    }
}

impl EPlusReport {
    /// The error that left membership undetermined, if any.
    pub fn failure(&self) -> Option<&Error> {
        self.failure.as_ref()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FastBasisStatus {
    Basis,
    F,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FastBasisCertificate {
    AllRor,
    QtrivialTrivialLattice,
}

pub const ROOT_ORDER_NOTE: &str =
    "roots of g in canonical order (real part, then imaginary part), each repeated k times consecutively";

#[derive(Debug, Clone, Serialize)]
pub struct FastBasisResult {
    pub status: FastBasisStatus,
    pub basis: Option<IntegerLattice>,
    pub certificate: Option<FastBasisCertificate>,
    pub power: Option<PowerData>,
    /// Exponent lattice of the roots of `g` alone.
    pub rg_basis: Option<IntegerLattice>,
    pub root_order: Option<&'static str>,
    pub e_plus: EPlusReport,
}

pub fn fastbasis_plus(f: &Poly) -> Result<FastBasisResult> {
    fastbasis_plus_with(f, &QtrivialOptions::default())
}

/// Exponent lattice `R_f` for `f` in `E+`, or status `F` when `f` is not in `E+`.
pub fn fastbasis_plus_with(f: &Poly, opts: &QtrivialOptions) -> Result<FastBasisResult> {
    if f.is_zero() || f.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let e = in_e_plus_with(f, opts);
    if let Some(err) = e.failure() {
        return Err(err.clone());
    }
    if !e.member {
        return Ok(FastBasisResult {
            status: FastBasisStatus::F,
            basis: None,
            certificate: None,
            power: e.power.clone(),
            rg_basis: None,
            root_order: None,
            e_plus: e,
        });
    }
    let power = e.power.clone().expect("members have a power form");
    let g = &power.g;
    let n = g.degree();
    let (rg, cert) = match &e.ror {
        Some(w) => (ror_lattice(g, w)?, FastBasisCertificate::AllRor),
        None => (trivial_lattice(g)?, FastBasisCertificate::QtrivialTrivialLattice),
    };
    let rf = lift_to_power(&rg, n, power.k)?;
    assert_eq!(rf.rank(), rg.rank() + n * (power.k - 1), "rank of the lifted lattice");
    Ok(FastBasisResult {
        status: FastBasisStatus::Basis,
        basis: Some(rf),
        certificate: Some(cert),
        power: Some(power),
        rg_basis: Some(rg),
        root_order: Some(ROOT_ORDER_NOTE),
        e_plus: e,
    })
}

/// For a Q-trivial non-ROR `g`, every relation is `m (1, ..., 1)` and its value is
/// `N^m` with `N` the product of the roots.
fn trivial_lattice(g: &Poly) -> Result<IntegerLattice> {
    let n = g.degree();
    let prod = g.root_product();
    let row = |v: i64| vec![vec![BigInt::from(v); n]];
    let lat = if prod.is_one() {
        hnf(&row(1), n)?
    } else if (-prod.clone()).is_one() {
        hnf(&row(2), n)?
    } else {
        IntegerLattice::zero(n)
    };
    for r in lat.basis() {
        let m = r[0].clone();
        let mut v = BigRational::one();
        let base = prod.clone();
        let e: u32 = u32::try_from(m.abs()).expect("small exponent");
        for _ in 0..e {
            v *= &base;
        }
        assert!(v.is_one() && !m.is_zero(), "trivial-lattice relation does not hold");
    }
    Ok(lat)
}

/// Lattice of `c g^k` from that of `g`: each `R_g` row on the first copy of each
/// root, plus differences between copies of the same root.
pub fn lift_to_power(rg: &IntegerLattice, n: usize, k: usize) -> Result<IntegerLattice> {
    assert!(k >= 1);
    let dim = n * k;
    let mut rows = Vec::new();
    for u in rg.basis() {
        let mut w = vec![BigInt::zero(); dim];
        for i in 0..n {
            w[i * k] = u[i].clone();
        }
        rows.push(w);
    }
    for i in 0..n {
        for a in 1..k {
            let mut w = vec![BigInt::zero(); dim];
            w[i * k + a] = BigInt::one();
            w[i * k] = -BigInt::one();
            rows.push(w);
        }
    }
    hnf(&rows, dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmodule::Irreducibility;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn set_s_examples() {
        assert!(in_set_s(9));
        assert!(in_set_s(28));
        assert!(!in_set_s(6));
        assert!(in_set_s(496));
        assert!(!in_set_s(120));
    }

    #[test]
    fn qtrivial_examples() {
        let v = is_qtrivial(&p(&[-1, 3, 3, -4, -1, 1])).unwrap();
        assert!(v.verdict);
        assert_eq!(v.path, QtrivialPath::PrimeDegree);
        let v = is_qtrivial(&p(&[6, 0, 4, -4, 1])).unwrap();
        assert!(!v.verdict);
        assert_eq!(v.path, QtrivialPath::ModuleCheck);
        assert!(matches!(v.module_check.unwrap().decision, Irreducibility::Reducible(_)));
        assert!(matches!(is_qtrivial(&p(&[-1, 0, 1])), Err(Error::InputError(_))));
        assert!(matches!(is_qtrivial(&p(&[0, 1, 1])), Err(Error::InputError(_))));
        let v = is_qtrivial(&p(&[1, 1, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!((v.verdict, v.path), (true, QtrivialPath::DoublyTransitive));
        // C6: 6 is not in S
        let v = is_qtrivial(&p(&[1, 1, 1, 1, 1, 1, 1])).unwrap();
        assert_eq!((v.verdict, v.path), (false, QtrivialPath::NotInS));
    }

    #[test]
    fn user_group() {
        let opts = QtrivialOptions {
            group: Some(PermutationGroup::from_cycles(4, &["(1 2 3 4)", "(1 3)"]).unwrap()),
            ..Default::default()
        };
        let v = is_qtrivial_with(&p(&[6, 0, 4, -4, 1]), &opts).unwrap();
        assert!(!v.verdict);
        assert_eq!(v.group.unwrap().t_number, None);
    }

    #[test]
    fn e_plus_examples() {
        let e = in_e_plus(&p(&[6, 0, 4, -4, 1]));
        assert!(!e.member);
        assert_eq!(e.reason, EPlusReason::NeitherRorNorQtrivial);
        assert_eq!(in_e_plus(&p(&[-2, 0, 1])).reason, EPlusReason::RootsOfRationals);
        assert_eq!(in_e_plus(&p(&[-1, 3, 3, -4, -1, 1])).reason, EPlusReason::Qtrivial);
        assert_eq!(in_e_plus(&p(&[-1, 0, 1])).reason, EPlusReason::NotPrimePower);
    }

    #[test]
    fn fastbasis_examples() {
        let r = fastbasis_plus(&p(&[-1, 3, 3, -4, -1, 1])).unwrap();
        assert_eq!(r.status, FastBasisStatus::Basis);
        assert_eq!(r.basis.unwrap().basis_i64(), vec![vec![1, 1, 1, 1, 1]]);
        let r = fastbasis_plus(&p(&[-2, 0, 1])).unwrap();
        let want = IntegerLattice::from_i64_rows(&[vec![-2, 2]], 2).unwrap();
        assert_eq!(r.basis.unwrap(), want);
        assert_eq!(fastbasis_plus(&p(&[6, 0, 4, -4, 1])).unwrap().status, FastBasisStatus::F);
        // 3 (x^2 - 2)^2: R_g = Z(2,-2) lifted, plus copy differences
        let f = p(&[-2, 0, 1]).pow(2).scale(&BigInt::from(3));
        let r = fastbasis_plus(&f).unwrap();
        let b = r.basis.unwrap();
        assert_eq!(b.rank(), 3);
        assert!(b.member(&[1, -1, 0, 0].map(BigInt::from)).unwrap());
        assert!(b.member(&[1, 1, -1, -1].map(BigInt::from)).unwrap());
        assert!(!b.member(&[1, 0, -1, 0].map(BigInt::from)).unwrap());
    }
}
