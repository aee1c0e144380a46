//! Algebraic-number predicates on integer polynomials: roots of rationals (ROR),
//! degeneracy (a quotient of two roots is a root of unity) and cyclotomic factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{cyclotomic, euler_phi, factor_z, graeffe, quotient_poly, squarefree_part, Poly};

/// Every root `r` satisfies `r^m = q`, with `m` minimal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RorWitness {
    pub m: u64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub q: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ror {
    Witness(RorWitness),
    NotRor,
}

impl Ror {
    pub fn is_ror(&self) -> bool {
        matches!(self, Ror::Witness(_))
    }
}

/// For an irreducible `g`: is `graeffe(g, m) = (x - q)^n` for some rational `q`?
fn graeffe_is_linear_power(g: &Poly, m: u64) -> Option<BigRational> {
    let n = g.degree();
    let h = graeffe_fast(g, m);
    // h = (a x - b)^n, primitive, a > 0
    let a_n = h.lc();
    let q = -BigRational::new(h.coeff(n - 1), a_n * BigInt::from(n));
    let want = Poly::linear_power(&q, n as u32);
    if want == h {
        Some(q)
    } else {
        None
    }
}

/// `graeffe(g, m)` by composing prime-order steps.
fn graeffe_fast(g: &Poly, m: u64) -> Poly {
    let mut h = g.primitive_part();
    let mut rest = m;
    let mut p = 2;
    while rest > 1 {
        while rest.is_multiple_of(p) {
            h = graeffe(&h, p as usize);
            rest /= p;
        }
        p += 1;
    }
    h
}

/// Root-of-rational test for an irreducible polynomial.
///
/// With `N` the product of the roots, `r_i^n / N = prod_j r_i / r_j`; the roots are
/// ROR iff all these are roots of unity, i.e. iff the polynomial of the `r_i^n / N`
/// is a product of cyclotomic polynomials. Their orders `d_i` bound the search: the
/// minimal exponent divides `n * lcm(d_i)`.
pub fn is_ror(g: &Poly) -> Result<Ror> {
    if g.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let fac = factor_z(g);
    if !fac.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    let g = g.primitive_part();
    let n = g.degree();
    if n == 1 {
        return Ok(Ror::Witness(RorWitness { m: 1, q: g.root_product() }));
    }
    let big_n = g.root_product();
    let h = graeffe(&g, n).scale_var(&big_n);
    let mut orders = Vec::new();
    for (factor, _) in factor_z(&h).factors {
        match cyclotomic_index(&factor) {
            Some(d) => orders.push(d),
            None => return Ok(Ror::NotRor),
        }
    }
    let l = orders.iter().fold(1u64, |acc, &d| acc.lcm(&d));
    let bound = n as u64 * l;
    for m in 1..=bound {
        if !bound.is_multiple_of(m) {
            continue;
        }
        if let Some(q) = graeffe_is_linear_power(&g, m) {
            return Ok(Ror::Witness(RorWitness { m, q }));
        }
    }
    unreachable!("the divisor {bound} always works for ROR polynomials")
}

/// Graeffe fixed-point test: does an irreducible primitive `g` have only roots of
/// unity as roots? Squaring roots keeps a root-of-unity system inside a finite set,
/// so the squarefree Graeffe iterates repeat; otherwise some coefficient eventually
/// leaves the binomial box `|c_j| <= C(k, j)` that bounds unit-circle polynomials.
pub fn is_cyclotomic_poly(g: &Poly) -> bool {
    if g.degree() == 0 || !g.lc().abs().is_one() || !g.constant_term().abs().is_one() {
        return false;
    }
    let mut seen: Vec<Poly> = Vec::new();
    let mut h = normalize_sign(&g.primitive_part());
    loop {
        if seen.contains(&h) {
            return true;
        }
        let k = h.degree();
        let mut binom = BigInt::one();
        for j in 0..=k {
            if h.coeff(j).abs() > binom {
                return false;
            }
            binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
        }
        seen.push(h.clone());
        h = normalize_sign(&squarefree_part(&graeffe(&h, 2)));
    }
}

fn normalize_sign(p: &Poly) -> Poly {
    if p.lc().is_negative() {
        p.neg()
    } else {
        p.clone()
    }
}

/// `d` with `g = Phi_d`, for an irreducible primitive `g`.
pub fn cyclotomic_index(g: &Poly) -> Option<u64> {
    if !is_cyclotomic_poly(g) {
        return None;
    }
    let k = g.degree() as u64;
    // phi(d) >= sqrt(d / 2), so d <= 2 k^2
    (1..=2 * k * k + 2).find(|&d| euler_phi(d) == k && cyclotomic(d) == *g)
}

/// Cyclotomic irreducible factors `Phi_d` of `h`, as the sorted list of indices `d`.
pub fn cyclotomic_factors(h: &Poly) -> Vec<u64> {
    let mut out: Vec<u64> = factor_z(h)
        .factors
        .iter()
        .filter_map(|(g, _)| cyclotomic_index(g))
        .collect();
    out.sort_unstable();
    out
}

pub fn has_cyclotomic_factor(h: &Poly) -> bool {
    !cyclotomic_factors(h).is_empty()
}

/// Is some quotient `r_i / r_j` (`i != j`) of roots of `f` a root of unity?
pub fn is_degenerate(f: &Poly) -> Result<bool> {
    if f.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    if f.degree() < 2 {
        return Err(Error::DegreeTooSmall);
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    Ok(has_cyclotomic_factor(&quotient_poly(f)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    fn rq(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn ror_examples() {
        assert_eq!(
            is_ror(&p(&[-2, 0, 1])).unwrap(),
            Ror::Witness(RorWitness { m: 2, q: rq(2, 1) })
        );
        assert_eq!(
            is_ror(&p(&[1, 1, 1])).unwrap(),
            Ror::Witness(RorWitness { m: 3, q: rq(1, 1) })
        );
        assert_eq!(is_ror(&p(&[6, 0, 4, -4, 1])).unwrap(), Ror::NotRor);
        assert_eq!(is_ror(&p(&[-3, 2])).unwrap(), Ror::Witness(RorWitness { m: 1, q: rq(3, 2) }));
        // x^2 + 1: i^2 = -1
        assert_eq!(
            is_ror(&p(&[1, 0, 1])).unwrap(),
            Ror::Witness(RorWitness { m: 2, q: rq(-1, 1) })
        );
        // 2x^3 - 5 : r^3 = 5/2
        assert_eq!(
            is_ror(&p(&[-5, 0, 0, 2])).unwrap(),
            Ror::Witness(RorWitness { m: 3, q: rq(5, 2) })
        );
        // x^4 + 4 = (x^2+2x+2)(x^2-2x+2) is reducible
        assert_eq!(is_ror(&p(&[4, 0, 0, 0, 1])), Err(Error::NotIrreducible));
        // Phi_12 = x^4 - x^2 + 1: primitive 12th roots have sixth power -1
        assert_eq!(
            is_ror(&p(&[1, 0, -1, 0, 1])).unwrap(),
            Ror::Witness(RorWitness { m: 6, q: rq(-1, 1) })
        );
        // x^4 + 2: r^4 = -2, no smaller power rational
        assert_eq!(
            is_ror(&p(&[2, 0, 0, 0, 1])).unwrap(),
            Ror::Witness(RorWitness { m: 4, q: rq(-2, 1) })
        );
        assert_eq!(is_ror(&p(&[-1, -1, 1])).unwrap(), Ror::NotRor);
    }

    #[test]
    fn witness_matches_graeffe() {
        for c in [&[-2i64, 0, 1][..], &[1, 1, 1], &[3, 0, 0, 0, 0, 1], &[1, 0, 0, 1, 0, 0, 1]] {
            let g = p(c);
            if let Ror::Witness(w) = is_ror(&g).unwrap() {
                assert_eq!(graeffe(&g, w.m as usize), Poly::linear_power(&w.q, g.degree() as u32));
            } else {
                panic!("{g} should be ROR");
            }
        }
    }

    #[test]
    fn cyclotomic_detection() {
        assert_eq!(cyclotomic_factors(&p(&[1, 0, 1])), vec![4]);
        assert!(!has_cyclotomic_factor(&p(&[-2, 0, 1])));
        assert_eq!(cyclotomic_factors(&p(&[1, 1, 1, 1, 1])), vec![5]);
        // Salem-like x^4 - x^3 - x^2 - x + 1 has two roots off the unit circle
        assert!(!is_cyclotomic_poly(&p(&[1, -1, -1, -1, 1])));
        for d in 1..=30u64 {
            assert!(is_cyclotomic_poly(&cyclotomic(d)), "Phi_{d}");
            assert_eq!(cyclotomic_index(&cyclotomic(d)), Some(d));
            let h = cyclotomic(d).mul(&p(&[3, -1, 0, 2]));
            assert!(has_cyclotomic_factor(&h));
        }
    }

    #[test]
    fn degeneracy_examples() {
        assert!(!is_degenerate(&p(&[6, 0, 4, -4, 1])).unwrap());
        assert!(is_degenerate(&p(&[-2, 0, 1])).unwrap());
        assert!(!is_degenerate(&p(&[-1, -1, 1])).unwrap());
        assert!(is_degenerate(&p(&[1, 1, 1])).unwrap());
        assert_eq!(is_degenerate(&p(&[1, 2, 1])), Err(Error::NotSquarefree));
    }
}
