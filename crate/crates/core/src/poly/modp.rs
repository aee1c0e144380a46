//! Polynomials over the prime field F_p for word-sized `p`: squarefree,
//! distinct-degree and equal-degree (Cantor–Zassenhaus) factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::Poly;
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Seed for the equal-degree splitting; fixed so that factorizations are reproducible.
const EDF_SEED: u64 = 0x0dd5_eed5;

/// Dense polynomial over F_p, lowest degree first, no trailing zeros.
pub type ModPoly = Vec<u64>;

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invm(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn trim(mut a: ModPoly) -> ModPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn reduce(f: &Poly, p: u64) -> ModPoly {
    let pb = BigInt::from(p);
    trim(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits"))
            .collect(),
    )
}

pub fn lift(a: &ModPoly) -> Poly {
    Poly::new(a.iter().map(|&c| BigInt::from(c)).collect())
}

fn deg(a: &ModPoly) -> usize {
    a.len().saturating_sub(1)
}

pub fn add(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn sub(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn mul(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    let pp = p as u128;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u128 * y as u128) % pp;
        }
    }
    trim(out.into_iter().map(|v| v as u64).collect())
}

pub fn scale(a: &ModPoly, c: u64, p: u64) -> ModPoly {
    trim(a.iter().map(|&x| mulm(x, c, p)).collect())
}

pub fn monic(a: &ModPoly, p: u64) -> ModPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, invm(l, p), p),
    }
}

pub fn divrem(a: &ModPoly, b: &ModPoly, p: u64) -> (ModPoly, ModPoly) {
    assert!(!b.is_empty(), "division by zero in F_p[x]");
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let mut r = a.clone();
    let db = deg(b);
    let inv = invm(*b.last().unwrap(), p);
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = mulm(r[k + db], inv, p);
        if c == 0 {
            continue;
        }
        q[k] = c;
        for (j, &bc) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - mulm(c, bc, p)) % p;
        }
    }
    (trim(q), trim(r))
}

pub fn rem(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    divrem(a, b, p).1
}

pub fn gcd(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// Extended gcd: returns monic `g` with `s*a + t*b = g`.
pub fn xgcd(a: &ModPoly, b: &ModPoly, p: u64) -> (ModPoly, ModPoly, ModPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (ModPoly, ModPoly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (ModPoly, ModPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let l = invm(*r0.last().expect("gcd of zero polynomials"), p);
    (scale(&r0, l, p), scale(&s0, l, p), scale(&t0, l, p))
}

pub fn powmod(a: &ModPoly, mut e: u64, m: &ModPoly, p: u64) -> ModPoly {
    let mut result: ModPoly = rem(&vec![1], m, p);
    let mut base = rem(a, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul(&result, &base, p), m, p);
        }
        e >>= 1;
        if e > 0 {
            base = rem(&mul(&base, &base, p), m, p);
        }
    }
    result
}

fn derivative(a: &ModPoly, p: u64) -> ModPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulm(c, (i as u64) % p, p))
            .collect(),
    )
}

/// Squarefree decomposition of a monic polynomial over F_p.
fn squarefree_mod(f: &ModPoly, p: u64) -> Vec<(ModPoly, usize)> {
    let mut out = Vec::new();
    if deg(f) == 0 {
        return out;
    }
    let fd = derivative(f, p);
    if fd.is_empty() {
        // f = g(x^p) = g(x)^p over F_p
        let root: ModPoly = f.iter().step_by(p as usize).copied().collect();
        for (g, m) in squarefree_mod(&root, p) {
            out.push((g, m * p as usize));
        }
        return out;
    }
    let mut c = gcd(f, &fd, p);
    let mut w = divrem(f, &c, p).0;
    let mut i = 1;
    while deg(&w) > 0 {
        let y = gcd(&w, &c, p);
        let z = divrem(&w, &y, p).0;
        if deg(&z) > 0 {
            out.push((monic(&z, p), i));
        }
        i += 1;
        w = y;
        c = divrem(&c, &w, p).0;
    }
    if deg(&c) > 0 {
        let root: ModPoly = c.iter().step_by(p as usize).copied().collect();
        for (g, m) in squarefree_mod(&root, p) {
            out.push((g, m * p as usize));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial: `(product, d)`
/// pairs where `product` collects all irreducible factors of degree `d`.
pub fn distinct_degree(f: &ModPoly, p: u64) -> Vec<(ModPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: ModPoly = vec![0, 1];
    let mut h = rem(&x, &f, p);
    let mut d = 0;
    while deg(&f) >= 2 * (d + 1) {
        d += 1;
        h = powmod(&h, p, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if deg(&g) > 0 {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, d));
        }
    }
    if deg(&f) > 0 {
        let d = deg(&f);
        out.push((f, d));
    }
    out
}

/// Split a monic squarefree product of irreducibles of degree `d`.
fn equal_degree(f: &ModPoly, d: usize, p: u64, rng: &mut SplitMix64, out: &mut Vec<ModPoly>) {
    let n = deg(f);
    if n == d {
        out.push(f.clone());
        return;
    }
    loop {
        let a: ModPoly = trim((0..n).map(|_| rng.below(p)).collect());
        if deg(&a) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map to F_2
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = rem(&mul(&t, &t, p), f, p);
                acc = add(&acc, &t, p);
            }
            acc
        } else {
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
            let mut c = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                c = powmod(&c, p, f, p);
                acc = rem(&mul(&acc, &c, p), f, p);
            }
            sub(&powmod(&acc, (p - 1) / 2, f, p), &vec![1], p)
        };
        let g = gcd(&b, f, p);
        if deg(&g) > 0 && deg(&g) < n {
            let h = divrem(f, &g, p).0;
            equal_degree(&g, d, p, rng, out);
            equal_degree(&monic(&h, p), d, p, rng, out);
            return;
        }
    }
}

/// Irreducible factors of a monic squarefree polynomial over F_p.
pub fn factor_squarefree(f: &ModPoly, p: u64) -> Vec<ModPoly> {
    let mut rng = SplitMix64::new(EDF_SEED ^ p);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        equal_degree(&g, d, p, &mut rng, &mut out);
    }
    out.sort();
    out.sort_by_key(|g| g.len());
    out
}

/// Factor `f` modulo the prime `p`. Factors are monic, given with multiplicity, and
/// sorted by degree then coefficients; the unit leading coefficient is dropped.
pub fn factor_mod_p(f: &Poly, p: u64) -> Result<Vec<(Poly, usize)>> {
    if !is_prime_u64(p) || p >= 1 << 32 {
        return Err(Error::BadPrime(p));
    }
    let fp = reduce(f, p);
    if fp.len() != f.coeffs().len() || f.is_zero() {
        return Err(Error::BadPrime(p));
    }
    let fm = monic(&fp, p);
    let mut out: Vec<(ModPoly, usize)> = Vec::new();
    for (g, m) in squarefree_mod(&fm, p) {
        for h in factor_squarefree(&g, p) {
            out.push((h, m));
        }
    }
    out.sort();
    out.sort_by_key(|(g, _)| g.len());
    Ok(out.into_iter().map(|(g, m)| (lift(&g), m)).collect())
}

/// Degrees of the irreducible factors of a squarefree `f` modulo `p`, ascending;
/// `None` when `p` divides the leading coefficient or `f` is not squarefree mod `p`.
pub fn degree_pattern(f: &Poly, p: u64) -> Option<Vec<usize>> {
    let fp = reduce(f, p);
    if fp.len() != f.coeffs().len() {
        return None;
    }
    let fm = monic(&fp, p);
    if deg(&gcd(&fm, &derivative(&fm, p), p)) > 0 {
        return None;
    }
    let mut pattern = Vec::new();
    for (g, d) in distinct_degree(&fm, p) {
        for _ in 0..deg(&g) / d {
            pattern.push(d);
        }
    }
    pattern.sort_unstable();
    Some(pattern)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi5_mod_2_is_irreducible() {
        let f = Poly::from_i64(&[1, 1, 1, 1, 1]);
        let fac = factor_mod_p(&f, 2).unwrap();
        assert_eq!(fac.len(), 1);
        assert_eq!(fac[0], (f, 1));
    }

    #[test]
    fn squares_and_bad_primes() {
        let f = Poly::from_i64(&[1, 0, 1]).pow(2).mul(&Poly::from_i64(&[-1, 1]));
        let fac = factor_mod_p(&f, 7).unwrap();
        assert_eq!(fac, vec![(Poly::from_i64(&[6, 1]), 1), (Poly::from_i64(&[1, 0, 1]), 2)]);
        assert_eq!(factor_mod_p(&Poly::from_i64(&[1, 1, 3]), 3), Err(Error::BadPrime(3)));
        assert_eq!(factor_mod_p(&Poly::from_i64(&[1, 1]), 4), Err(Error::BadPrime(4)));
        // x^4 + 1 = (x+1)^4 over F_2
        let fac = factor_mod_p(&Poly::from_i64(&[1, 0, 0, 0, 1]), 2).unwrap();
        assert_eq!(fac, vec![(Poly::from_i64(&[1, 1]), 4)]);
    }

    fn multiplicative_order(p: u64, d: u64) -> u64 {
        let mut k = 1;
        let mut v = p % d;
        while v != 1 % d {
            v = v * p % d;
            k += 1;
        }
        k
    }

    #[test]
    fn x_n_minus_1_degrees_match_orders() {
        // x^n - 1 = prod_{d | n} Phi_d and Phi_d splits into factors of degree ord_d(p)
        for n in 1..=12u64 {
            for p in (2..50u64).filter(|&p| is_prime_u64(p) && n % p != 0) {
                let f = Poly::monomial(1.into(), n as usize).sub(&Poly::one());
                let mut got: Vec<usize> = factor_mod_p(&f, p)
                    .unwrap()
                    .into_iter()
                    .map(|(g, m)| {
                        assert_eq!(m, 1);
                        g.degree()
                    })
                    .collect();
                got.sort_unstable();
                let mut want = Vec::new();
                for d in (1..=n).filter(|d| n % d == 0) {
                    let o = multiplicative_order(p, d);
                    for _ in 0..crate::poly::euler_phi(d) / o {
                        want.push(o as usize);
                    }
                }
                want.sort_unstable();
                assert_eq!(got, want, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn product_reconstructs_input() {
        let f = Poly::from_i64(&[3, -1, 4, 1, -5, 9, 2, 6]);
        for p in [5u64, 11, 101, 10007] {
            let fac = factor_mod_p(&f, p).unwrap();
            let mut prod: ModPoly = vec![*reduce(&f, p).last().unwrap()];
            for (g, m) in &fac {
                for _ in 0..*m {
                    prod = mul(&prod, &reduce(g, p), p);
                }
            }
            assert_eq!(prod, reduce(&f, p));
        }
    }
}
