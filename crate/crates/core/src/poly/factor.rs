//! Factorization over Z: Musser squarefree decomposition followed by Zassenhaus
//! (factor modulo a good prime, quadratic Hensel lifting past the Mignotte bound,
//! subset recombination).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::modp::{self, ModPoly};
use super::Poly;
use crate::error::{Error, Result};

/// `content * prod factor^multiplicity`, factors irreducible, primitive, positive
/// leading coefficient, pairwise distinct and sorted by degree then coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigRational,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        let mut p = Poly::one();
        for (g, m) in &self.factors {
            p = p.mul(&g.pow(*m as u32));
        }
        // content is an integer for integer input
        assert!(self.content.is_integer());
        p.scale(self.content.numer())
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// `f = c * g^k` with `g` irreducible, or `NotPrimePower`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PowerForm {
    Power { c: BigRational, g: Poly, k: usize },
    NotPrimePower,
}

/// Squarefree decomposition of a nonzero polynomial: primitive squarefree, pairwise
/// coprime parts `s_i` with `pp(f) = prod s_i^i`. Parts of degree zero are omitted.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let g = f.primitive_part();
    let mut out = Vec::new();
    if g.degree() == 0 {
        return out;
    }
    let mut a = g.gcd(&g.derivative());
    let mut b = g.div_q(&a);
    let mut i = 1;
    while b.degree() > 0 {
        let c = a.gcd(&b);
        a = a.div_q(&c);
        let part = b.div_q(&c);
        if part.degree() > 0 {
            out.push((part, i));
        }
        b = c;
        i += 1;
    }
    out
}

/// Complete factorization over Z.
pub fn factor_z(f: &Poly) -> Factorization {
    assert!(!f.is_zero(), "factor_z of the zero polynomial");
    let mut content = f.content();
    if f.lc().is_negative() {
        content = -content;
    }
    let mut factors: Vec<(Poly, usize)> = Vec::new();
    for (part, mult) in squarefree_decomposition(f) {
        let mut part = part;
        if part.constant_term().is_zero() {
            factors.push((Poly::x(), mult));
            part = part.div_exact(&Poly::x()).expect("x divides");
        }
        for g in factor_squarefree_primitive(&part) {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|a, b| a.0.sort_key().cmp(&b.0.sort_key()).then(a.1.cmp(&b.1)));
    Factorization { content: BigRational::from_integer(content), factors }
}

pub fn power_form(f: &Poly) -> Result<PowerForm> {
    if f.is_zero() || f.constant_term().is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let fac = factor_z(f);
    if fac.factors.len() != 1 {
        return Ok(PowerForm::NotPrimePower);
    }
    let (g, k) = fac.factors[0].clone();
    Ok(PowerForm::Power { c: fac.content, g, k })
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&p| modp::is_prime_u64(p))
}

/// Irreducible factors of a primitive squarefree polynomial with nonzero constant term.
pub(crate) fn factor_squarefree_primitive(g: &Poly) -> Vec<Poly> {
    let n = g.degree();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![g.primitive_part()];
    }
    // choose the good prime with the fewest modular factors among a handful
    let mut best: Option<(usize, u64)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (g.lc() % p).is_zero() {
            continue;
        }
        let Some(pattern) = modp::degree_pattern(g, p) else {
            continue;
        };
        tried += 1;
        if best.is_none_or(|(c, _)| pattern.len() < c) {
            best = Some((pattern.len(), p));
        }
        if pattern.len() == 1 || tried >= 8 {
            break;
        }
    }
    let (count, p) = best.expect("a good prime exists");
    if count == 1 {
        return vec![g.primitive_part()];
    }
    let gp = modp::monic(&modp::reduce(g, p), p);
    let mut locals = modp::factor_squarefree(&gp, p);
    locals.sort();

    // lc * factor coefficients are bounded by 2^n |g|_2 (Mignotte); use a margin
    let bound = (BigInt::one() << n) * g.norm2_ceil() * g.lc().abs();
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= &bound * 2 {
        pk *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(g, &locals, p, k);
    recombine(g, lifted, &pk)
}

fn symmetric(a: &Poly, m: &BigInt) -> Poly {
    let half: BigInt = m >> 1;
    Poly::new(
        a.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn recombine(g: &Poly, lifted: Vec<Poly>, pk: &BigInt) -> Vec<Poly> {
    let mut remaining = lifted;
    let mut g = g.clone();
    let mut factors = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= remaining.len() {
        let r = remaining.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let lc = g.lc();
            // cheap constant-term test before the full product
            let mut c0 = lc.clone();
            for &i in &idx {
                c0 = (c0 * remaining[i].constant_term()).mod_floor(pk);
            }
            let half: BigInt = pk >> 1;
            if c0 > half {
                c0 -= pk;
            }
            let g0 = &lc * g.constant_term();
            if !c0.is_zero() && (&g0 % &c0).is_zero() {
                let mut prod = Poly::constant(lc.clone());
                for &i in &idx {
                    prod = symmetric(&prod.mul(&remaining[i]), pk);
                }
                let cand = prod.primitive_part();
                if let Some(q) = g.div_exact(&cand) {
                    factors.push(cand);
                    g = q;
                    let mut keep = Vec::with_capacity(r - s);
                    for (i, u) in remaining.into_iter().enumerate() {
                        if !idx.contains(&i) {
                            keep.push(u);
                        }
                    }
                    remaining = keep;
                    continue 'outer;
                }
            }
            // next combination in lexicographic order
            let mut j = s;
            loop {
                if j == 0 {
                    s += 1;
                    continue 'outer;
                }
                j -= 1;
                if idx[j] < r - s + j {
                    idx[j] += 1;
                    for l in j + 1..s {
                        idx[l] = idx[l - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    if g.degree() > 0 {
        factors.push(g.primitive_part());
    }
    factors
}

fn pmod(a: &Poly, m: &BigInt) -> Poly {
    Poly::new(a.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn mulmod(a: &Poly, b: &Poly, m: &BigInt) -> Poly {
    pmod(&a.mul(b), m)
}

/// Division by a monic polynomial modulo `m`.
fn divrem_monic(a: &Poly, b: &Poly, m: &BigInt) -> (Poly, Poly) {
    let db = b.degree();
    let mut r: Vec<BigInt> = pmod(a, m).coeffs().to_vec();
    if r.len() <= db {
        return (Poly::zero(), Poly::new(r));
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, bc) in b.coeffs().iter().enumerate() {
            r[k + j] = (&r[k + j] - &c * bc).mod_floor(m);
        }
        q[k] = c;
    }
    (Poly::new(q), pmod(&Poly::new(r), m))
}

struct Pair {
    g: Poly,
    h: Poly,
    s: Poly,
    t: Poly,
}

/// One quadratic Hensel step from modulus `m` to `m2` (where `m2 | m^2`).
fn hensel_step(f: &Poly, pr: Pair, m2: &BigInt) -> Pair {
    let Pair { g, h, s, t } = pr;
    let e = pmod(&f.sub(&g.mul(&h)), m2);
    let (q, r) = divrem_monic(&mulmod(&s, &e, m2), &h, m2);
    let g2 = pmod(&g.add(&t.mul(&e)).add(&q.mul(&g)), m2);
    let h2 = pmod(&h.add(&r), m2);
    let b = pmod(&s.mul(&g2).add(&t.mul(&h2)).sub(&Poly::one()), m2);
    let (c, d) = divrem_monic(&mulmod(&s, &b, m2), &h2, m2);
    let s2 = pmod(&s.sub(&d), m2);
    let t2 = pmod(&t.sub(&t.mul(&b)).sub(&c.mul(&g2)), m2);
    Pair { g: g2, h: h2, s: s2, t: t2 }
}

/// Lift `f ≡ lc(f) * prod locals (mod p)` to monic factors modulo `p^k`.
fn hensel_lift(f: &Poly, locals: &[ModPoly], p: u64, k: u32) -> Vec<Poly> {
    let pb = BigInt::from(p);
    let pk = num_traits::pow(pb.clone(), k as usize);
    let mut out = Vec::with_capacity(locals.len());
    let mut f = pmod(f, &pk);
    for (idx, u) in locals.iter().enumerate() {
        if idx + 1 == locals.len() {
            let inv = f.lc().modinv(&pk).expect("lc invertible mod p^k");
            out.push(pmod(&f.scale(&inv), &pk));
            break;
        }
        // split f = g * h with h = u monic
        let lcp = modp::reduce(&Poly::constant(f.lc()), p)[0];
        let mut gm: ModPoly = vec![lcp];
        for w in &locals[idx + 1..] {
            gm = modp::mul(&gm, w, p);
        }
        let (one, s, t) = modp::xgcd(&gm, u, p);
        debug_assert_eq!(one, vec![1]);
        let mut pair = Pair {
            g: modp::lift(&gm),
            h: modp::lift(u),
            s: modp::lift(&s),
            t: modp::lift(&t),
        };
        let mut m = pb.clone();
        while m < pk {
            let m2 = (&m * &m).min(pk.clone());
            pair = hensel_step(&f, pair, &m2);
            m = m2;
        }
        out.push(pair.h);
        f = pair.g;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn example_quartic_is_irreducible() {
        let g = p(&[6, 0, 4, -4, 1]);
        let fac = factor_z(&g);
        assert!(fac.is_irreducible());
        assert_eq!(fac.factors[0].0, g);
    }

    #[test]
    fn small_cases() {
        let fac = factor_z(&p(&[-1, 0, 1]));
        assert_eq!(fac.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
        let fac = factor_z(&p(&[4, 0, 8, 0, 4]));
        assert_eq!(fac.content, BigRational::from_integer(4.into()));
        assert_eq!(fac.factors, vec![(p(&[1, 0, 1]), 2)]);
        let fac = factor_z(&p(&[0, 0, -3]));
        assert_eq!(fac.content, BigRational::from_integer((-3).into()));
        assert_eq!(fac.factors, vec![(Poly::x(), 2)]);
        assert!(factor_z(&p(&[5])).factors.is_empty());
    }

    #[test]
    fn swinnerton_dyer_like_products() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime
        let f = p(&[1, 0, -10, 0, 1]);
        assert!(factor_z(&f).is_irreducible());
        // x^8 - 1 = (x-1)(x+1)(x^2+1)(x^4+1)
        let f = Poly::monomial(1.into(), 8).sub(&Poly::one());
        let fac = factor_z(&f);
        let degs: Vec<usize> = fac.factors.iter().map(|(g, _)| g.degree()).collect();
        assert_eq!(degs, vec![1, 1, 2, 4]);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn power_forms() {
        let f = p(&[1, 0, 1]).pow(3).scale(&4.into());
        assert_eq!(
            power_form(&f).unwrap(),
            PowerForm::Power { c: BigRational::from_integer(4.into()), g: p(&[1, 0, 1]), k: 3 }
        );
        let g = p(&[6, 0, 4, -4, 1]);
        assert_eq!(
            power_form(&g).unwrap(),
            PowerForm::Power { c: BigRational::one(), g: g.clone(), k: 1 }
        );
        assert_eq!(power_form(&p(&[-1, 0, 1])).unwrap(), PowerForm::NotPrimePower);
        assert_eq!(power_form(&p(&[0, 1, 1])), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn products_of_known_irreducibles() {
        let a = p(&[-2, 0, 0, 1]);
        let b = p(&[1, 1, 1, 1, 1]);
        let c = p(&[3, -1, 2]);
        let f = a.mul(&b).mul(&c).mul(&c).scale(&(-6).into());
        let fac = factor_z(&f);
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.factors[0], (c.clone(), 2));
    }

    #[test]
    fn random_round_trip() {
        let mut rng = SplitMix64::new(2024);
        for _ in 0..1000 {
            let deg = rng.range_i64(0, 10) as usize;
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.range_i64(-10, 10)).collect();
            let f = p(&coeffs);
            if f.is_zero() {
                continue;
            }
            let fac = factor_z(&f);
            assert_eq!(fac.expand(), f, "round trip failed for {f}");
            for (g, _) in &fac.factors {
                assert!(g.is_primitive());
            }
            for w in fac.factors.windows(2) {
                assert_ne!(w[0].0, w[1].0);
            }
        }
    }
}
