//! Sublattices of Z^n in row Hermite normal form, integer kernels, and the
//! multiplicative-relation lattices of rational vectors and of ROR root systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{QMat, Subspace};
use crate::numeric::{self, Real};
use crate::numtests::RorWitness;
use crate::poly::{graeffe, Poly};

/// A sublattice of `Z^n`, stored as its row HNF: pivots positive and strictly
/// increasing, entries above a pivot reduced into `[0, pivot)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerLattice {
    ambient_dim: usize,
    basis: Vec<Vec<BigInt>>,
}

impl IntegerLattice {
    pub fn zero(n: usize) -> Self {
        IntegerLattice { ambient_dim: n, basis: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn from_i64_rows(rows: &[Vec<i64>], n: usize) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        hnf(&rows, n)
    }

    /// Basis rows as `i64`, panicking on overflow (fine for the small lattices here).
    pub fn basis_i64(&self) -> Vec<Vec<i64>> {
        self.basis
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().expect("entry fits in i64")).collect())
            .collect()
    }

    pub fn member(&self, v: &[BigInt]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: v.len() });
        }
        let mut w = v.to_vec();
        for row in &self.basis {
            let p = pivot(row).expect("nonzero row");
            let (q, r) = w[p].div_rem(&row[p]);
            if !r.is_zero() {
                return Ok(false);
            }
            if !q.is_zero() {
                for (x, y) in w.iter_mut().zip(row) {
                    *x -= &q * y;
                }
            }
        }
        Ok(w.iter().all(|x| x.is_zero()))
    }

    pub fn contains_lattice(&self, other: &IntegerLattice) -> Result<bool> {
        for row in &other.basis {
            if !self.member(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every member has all coordinates equal.
    pub fn is_trivial(&self) -> bool {
        self.basis.iter().all(|r| r.iter().all(|x| x == &r[0]))
    }

    pub fn rational_span(&self) -> Subspace {
        Subspace::span(&to_qmat(&self.basis), self.ambient_dim)
    }

    /// `Q (x) L + V_1`, with `V_1` the all-ones line.
    pub fn span_plus_allones(&self) -> Subspace {
        let mut rows = to_qmat(&self.basis);
        rows.push(vec![BigRational::one(); self.ambient_dim]);
        Subspace::span(&rows, self.ambient_dim)
    }

    pub fn rational_span_sum_contains(&self, v: &[BigRational]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: v.len() });
        }
        Ok(self.span_plus_allones().contains(v))
    }

    /// Apply a coordinate permutation `v -> (v_{sigma(1)}, ..., v_{sigma(n)})` to
    /// every member; `images` is 0-based.
    pub fn permute(&self, images: &[usize]) -> IntegerLattice {
        let rows: Vec<Vec<BigInt>> =
            self.basis.iter().map(|r| images.iter().map(|&i| r[i].clone()).collect()).collect();
        hnf(&rows, self.ambient_dim).expect("dimensions agree")
    }
}

fn to_qmat(rows: &[Vec<BigInt>]) -> QMat {
    rows.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

fn pivot(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

impl Serialize for IntegerLattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<serde_json::Value>> =
            self.basis.iter().map(|r| r.iter().map(bigint_json).collect()).collect();
        let mut st = s.serialize_struct("IntegerLattice", 2)?;
        st.serialize_field("ambient_dim", &self.ambient_dim)?;
        st.serialize_field("basis", &rows)?;
        st.end()
    }
}

/// JSON number when it fits in `i64`, decimal string otherwise.
pub fn bigint_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

/// Row HNF of the lattice generated by `rows` (each of length `n`).
pub fn hnf(rows: &[Vec<BigInt>], n: usize) -> Result<IntegerLattice> {
    for r in rows {
        if r.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: r.len() });
        }
    }
    let mut a: Vec<Vec<BigInt>> = rows.iter().filter(|r| pivot(r).is_some()).cloned().collect();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for c in 0..n {
        // gather rows with their first nonzero in column c and run Euclid on them
        let (mut here, rest): (Vec<_>, Vec<_>) = a.into_iter().partition(|r| pivot(r) == Some(c));
        a = rest;
        while here.len() > 1 {
            let (mi, _) = here
                .iter()
                .enumerate()
                .min_by_key(|(_, r)| r[c].abs())
                .expect("nonempty");
            here.swap(0, mi);
            let (head, tail) = here.split_at_mut(1);
            let p = &head[0];
            for r in tail.iter_mut() {
                let q = r[c].div_floor(&p[c]);
                for (x, y) in r.iter_mut().zip(p.iter()) {
                    *x -= &q * y;
                }
            }
            let (keep, moved): (Vec<_>, Vec<_>) =
                here.into_iter().partition(|r| pivot(r) == Some(c));
            here = keep;
            a.extend(moved.into_iter().filter(|r| pivot(r).is_some()));
        }
        if let Some(mut r) = here.pop() {
            if r[c].is_negative() {
                for x in r.iter_mut() {
                    *x = -&*x;
                }
            }
            out.push(r);
        }
    }
    // reduce entries above pivots
    for i in 0..out.len() {
        let p = pivot(&out[i]).expect("nonzero");
        for j in 0..i {
            let q = out[j][p].div_floor(&out[i][p]);
            if !q.is_zero() {
                let (lo, hi) = out.split_at_mut(i);
                for (x, y) in lo[j].iter_mut().zip(hi[0].iter()) {
                    *x -= &q * y;
                }
            }
        }
    }
    Ok(IntegerLattice { ambient_dim: n, basis: out })
}

/// `{v in Z^n : A v = 0}` for an `m x n` integer matrix.
pub fn kernel_z(a: &[Vec<BigInt>], n: usize) -> Result<IntegerLattice> {
    for r in a {
        if r.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: r.len() });
        }
    }
    let m = a.len();
    // rows [A^T | I]; after HNF the rows with a zero A^T-part span the kernel
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut r: Vec<BigInt> = (0..m).map(|i| a[i][j].clone()).collect();
            r.extend((0..n).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let h = hnf(&rows, m + n)?;
    let ker: Vec<Vec<BigInt>> = h
        .basis
        .into_iter()
        .filter(|r| r[..m].iter().all(|x| x.is_zero()))
        .map(|r| r[m..].to_vec())
        .collect();
    hnf(&ker, n)
}

pub fn equal(a: &IntegerLattice, b: &IntegerLattice) -> bool {
    a == b
}

/// Kernel of a linear system in `n` unknowns plus congruences `sum c_j u_j = 0 mod
/// modulus`, projected back to `Z^n`.
fn kernel_with_congruences(
    linear: &[Vec<BigInt>],
    congruences: &[(Vec<BigInt>, BigInt)],
    n: usize,
) -> IntegerLattice {
    let k = congruences.len();
    let mut rows = Vec::new();
    for r in linear {
        let mut row = r.clone();
        row.extend(std::iter::repeat_n(BigInt::zero(), k));
        rows.push(row);
    }
    for (idx, (c, modulus)) in congruences.iter().enumerate() {
        let mut row = c.clone();
        for j in 0..k {
            row.push(if j == idx { -modulus.clone() } else { BigInt::zero() });
        }
        rows.push(row);
    }
    let ker = kernel_z(&rows, n + k).expect("consistent dimensions");
    let proj: Vec<Vec<BigInt>> = ker.basis.iter().map(|r| r[..n].to_vec()).collect();
    hnf(&proj, n).expect("consistent dimensions")
}

/// Coprime base of a set of positive integers: pairwise coprime `b_i > 1` such that
/// every input is a product of powers of them.
fn coprime_base(nums: &[BigInt]) -> Vec<BigInt> {
    let mut base: Vec<BigInt> = nums.iter().filter(|x| **x > BigInt::one()).cloned().collect();
    loop {
        base.sort();
        base.dedup();
        let mut changed = false;
        'scan: for i in 0..base.len() {
            for j in i + 1..base.len() {
                let g = base[i].gcd(&base[j]);
                if !g.is_one() {
                    let (a, b) = (base[i].clone(), base[j].clone());
                    let mut next: Vec<BigInt> =
                        base.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, x)| x.clone()).collect();
                    next.push(g.clone());
                    for x in [&a / &g, &b / &g] {
                        if x > BigInt::one() {
                            next.push(x);
                        }
                    }
                    base = next;
                    changed = true;
                    break 'scan;
                }
            }
        }
        if !changed {
            return base;
        }
    }
}

fn valuation(mut x: BigInt, b: &BigInt) -> i64 {
    let mut v = 0;
    while (&x % b).is_zero() {
        x /= b;
        v += 1;
    }
    v
}

/// `{u in Z^n : prod v_i^{u_i} = 1}` for nonzero rationals `v_i`.
///
/// Exponents are taken over a coprime base of all numerators and denominators (so
/// no integer factorization is needed); the sign character is the congruence
/// `sum u_i s_i = 0 mod 2`.
pub fn rat_mult_lattice(v: &[BigRational]) -> Result<IntegerLattice> {
    if v.iter().any(|x| x.is_zero()) {
        return Err(Error::ZeroEntry);
    }
    let n = v.len();
    let mut nums = Vec::new();
    for x in v {
        nums.push(x.numer().abs());
        nums.push(x.denom().clone());
    }
    let base = coprime_base(&nums);
    let linear: Vec<Vec<BigInt>> = base
        .iter()
        .map(|b| {
            v.iter()
                .map(|x| {
                    BigInt::from(valuation(x.numer().abs(), b) - valuation(x.denom().clone(), b))
                })
                .collect()
        })
        .collect();
    let signs: Vec<BigInt> =
        v.iter().map(|x| if x.is_negative() { BigInt::one() } else { BigInt::zero() }).collect();
    Ok(kernel_with_congruences(&linear, &[(signs, BigInt::from(2))], n))
}

/// Exponent lattice of the roots of an irreducible ROR polynomial `g` (roots in
/// canonical order), from its witness `r^m = q`.
///
/// Writing `r_j = rho * zeta_m^{e_j}` with `rho` the principal `m`-th root of `q`:
/// if `|q| != 1` a relation needs `sum u = 0` and `sum u_j e_j = 0 mod m`; if
/// `q = +-1`, `rho = exp(i pi c / m)` and the condition is
/// `sum u_j (2 e_j + c) = 0 mod 2m`.
pub fn ror_lattice(g: &Poly, w: &RorWitness) -> Result<IntegerLattice> {
    let n = g.degree();
    if graeffe(g, w.m as usize) != Poly::linear_power(&w.q, n as u32) {
        return Err(Error::WitnessInvalid);
    }
    let exps = root_phases(g, w)?;
    let m = BigInt::from(w.m);
    let unit = w.q.abs().is_one();
    if unit {
        let c = if w.q.is_negative() { 1 } else { 0 };
        let coeffs: Vec<BigInt> = exps.iter().map(|&e| BigInt::from(2 * e + c)).collect();
        Ok(kernel_with_congruences(&[], &[(coeffs, &m * 2)], n))
    } else {
        let ones = vec![vec![BigInt::one(); n]];
        let coeffs: Vec<BigInt> = exps.iter().map(|&e| BigInt::from(e)).collect();
        Ok(kernel_with_congruences(&ones, &[(coeffs, m)], n))
    }
}

/// The exponents `e_j` with `r_j = rho * zeta_m^{e_j}`. Roots are certified to a
/// precision far below the `2 pi / m` spacing of the candidates, so rounding the
/// normalized argument is exact.
fn root_phases(g: &Poly, w: &RorWitness) -> Result<Vec<u64>> {
    let digits = 40 + (w.m as f64).log10().ceil() as u32;
    let rs = numeric::certified_roots(&g.primitive_part(), digits)?;
    let bits = rs.bits();
    let pi = numeric::pi(bits);
    let two_pi = pi.shl(1);
    let offset = if w.q.is_negative() { pi.div_int(&BigInt::from(w.m)) } else { Real::zero(bits) };
    let mut out = Vec::with_capacity(rs.roots.len());
    for r in &rs.roots {
        let t = r.arg().sub(&offset).mul_int(&BigInt::from(w.m)).div(&two_pi);
        let k = t.round_scaled(&BigInt::one());
        let frac = t.sub(&Real::from_int(&k, bits)).to_f64();
        if frac.abs() > 1e-6 {
            return Err(Error::WitnessInvalid);
        }
        let e = k.mod_floor(&BigInt::from(w.m)).to_u64().expect("small");
        out.push(e);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtests::{is_ror, Ror};

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn rq(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn hnf_and_kernel_examples() {
        let k = kernel_z(&bi(&[&[1, 0, 1], &[0, 1, 1]]), 3).unwrap();
        assert_eq!(k.basis_i64(), vec![vec![1, 1, -1]]);
        assert_eq!(hnf(&bi(&[&[2], &[3]]), 1).unwrap().basis_i64(), vec![vec![1]]);
        let l = IntegerLattice::from_i64_rows(&[vec![-2, 2, 2, -2]], 4).unwrap();
        assert_eq!(l.basis_i64(), vec![vec![2, -2, -2, 2]]);
        assert!(l.member(&bi(&[&[-4, 4, 4, -4]])[0]).unwrap());
        assert!(!l.member(&bi(&[&[1, 1, 1, 1]])[0]).unwrap());
        assert!(matches!(l.member(&bi(&[&[1]])[0]), Err(Error::DimensionMismatch { .. })));
        let h = hnf(&bi(&[&[4, 6, 0], &[6, 9, 1], &[2, 3, 5]]), 3).unwrap();
        assert_eq!(hnf(h.basis(), 3).unwrap(), h);
        for r in bi(&[&[4, 6, 0], &[6, 9, 1], &[2, 3, 5]]) {
            assert!(h.member(&r).unwrap());
        }
        assert_eq!(h.basis_i64(), vec![vec![2, 3, 1], vec![0, 0, 2]]);
    }

    #[test]
    fn triviality() {
        let l = IntegerLattice::from_i64_rows(&[vec![-2, 2, 2, -2]], 4).unwrap();
        assert!(!l.is_trivial());
        assert!(IntegerLattice::from_i64_rows(&[vec![1, 1, 1]], 3).unwrap().is_trivial());
        assert!(IntegerLattice::zero(3).is_trivial());
    }

    #[test]
    fn rat_mult_examples() {
        let l = rat_mult_lattice(&[rq(2, 1), rq(3, 1), rq(6, 1)]).unwrap();
        assert_eq!(l.basis_i64(), vec![vec![1, 1, -1]]);
        assert_eq!(rat_mult_lattice(&[rq(-1, 1)]).unwrap().basis_i64(), vec![vec![2]]);
        assert_eq!(rat_mult_lattice(&[rq(2, 1)]).unwrap().rank(), 0);
        assert_eq!(rat_mult_lattice(&[rq(0, 1)]), Err(Error::ZeroEntry));
        // (1/2, 4, -2): 2-exponents -1, 2, 1 and a sign on the third entry
        let l = rat_mult_lattice(&[rq(1, 2), rq(4, 1), rq(-2, 1)]).unwrap();
        for r in l.basis() {
            assert!(r[2].is_even());
        }
        assert!(l.member(&bi(&[&[2, 1, 0]])[0]).unwrap());
        assert!(l.member(&bi(&[&[0, 1, -2]])[0]).unwrap());
        assert!(!l.member(&bi(&[&[0, 1, 2]])[0]).unwrap());
    }

    #[test]
    fn ror_lattice_examples() {
        let g = Poly::from_i64(&[1, 0, 1]);
        let Ror::Witness(w) = is_ror(&g).unwrap() else { panic!() };
        assert_eq!(ror_lattice(&g, &w).unwrap().basis_i64(), vec![vec![1, 1], vec![0, 4]]);
        let g = Poly::from_i64(&[-2, 0, 1]);
        let Ror::Witness(w) = is_ror(&g).unwrap() else { panic!() };
        let l = ror_lattice(&g, &w).unwrap();
        assert!(equal(&l, &IntegerLattice::from_i64_rows(&[vec![-2, 2]], 2).unwrap()));
        let g = Poly::from_i64(&[-3, 1]);
        let Ror::Witness(w) = is_ror(&g).unwrap() else { panic!() };
        assert_eq!(ror_lattice(&g, &w).unwrap().rank(), 0);
        let bad = RorWitness { m: 3, q: rq(2, 1) };
        assert_eq!(ror_lattice(&Poly::from_i64(&[-2, 0, 1]), &bad), Err(Error::WitnessInvalid));
    }

    #[test]
    fn spans() {
        let l = IntegerLattice::from_i64_rows(&[vec![-2, 2, 2, -2]], 4).unwrap();
        assert_eq!(l.span_plus_allones().dim(), 2);
        assert_eq!(IntegerLattice::zero(4).span_plus_allones().dim(), 1);
        assert!(l.rational_span_sum_contains(&vec![BigRational::one(); 4]).unwrap());
    }
}
