//! Exact univariate polynomial arithmetic over Z.
//!
//! Rational inputs are normalized to a `(content, primitive)` pair right at the
//! boundary (see [`Poly::from_rationals`]); every algorithm in the crate works on
//! integer coefficients.

mod factor;
pub mod modp;
mod parse;
mod transform;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use factor::{factor_z, power_form, squarefree_decomposition, Factorization, PowerForm};
pub use modp::factor_mod_p;
pub use parse::parse_poly;
pub use transform::{
    discriminant, graeffe, power_sums, quotient_poly, resultant, squarefree_part,
    subset_sum_resolvent, tschirnhaus, tschirnhaus_by,
};

/// A polynomial with integer coefficients; `coeffs[i]` is the coefficient of `x^i`.
///
/// The coefficient vector never carries trailing zeros, so the zero polynomial has
/// an empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Poly::from_i64(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^d`
    pub fn monomial(c: BigInt, d: usize) -> Self {
        let mut v = vec![BigInt::zero(); d + 1];
        v[d] = c;
        Poly::new(v)
    }

    /// `(x - a)^n` scaled to integer form for rational `a`: `(den*x - num)^n`.
    pub fn linear_power(a: &BigRational, n: u32) -> Self {
        Poly::new(vec![-a.numer().clone(), a.denom().clone()]).pow(n)
    }

    /// Normalize rational coefficients to `(content, primitive)` with the primitive
    /// part having positive leading coefficient. The zero polynomial maps to `(0, 0)`.
    pub fn from_rationals(coeffs: &[BigRational]) -> (BigRational, Poly) {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let p = Poly::new(ints);
        if p.is_zero() {
            return (BigRational::zero(), p);
        }
        let mut cont = p.content();
        if p.lc().is_negative() {
            cont = -cont;
        }
        let prim = p.div_scalar(&cont);
        (BigRational::new(cont, den), prim)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Content 1 and positive leading coefficient.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.content().is_one() && self.lc().is_positive()
    }

    pub fn div_scalar(&self, c: &BigInt) -> Poly {
        if c.is_one() {
            return self.clone();
        }
        Poly::new(self.coeffs.iter().map(|a| a / c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// `x^deg * f(1/x)`.
    pub fn reverse(&self) -> Poly {
        let mut v = self.coeffs.clone();
        v.reverse();
        Poly::new(v)
    }

    /// `f(-x)`.
    pub fn negate_var(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `f(x + c)` by repeated synthetic division (Taylor shift).
    pub fn shift(&self, c: &BigInt) -> Poly {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        Poly::new(a)
    }

    /// Primitive part of `f(a*x)` for rational `a`.
    pub fn scale_var(&self, a: &BigRational) -> Poly {
        let n = self.degree();
        let num = a.numer();
        let den = a.denom();
        // den^n f(num/den x) = sum c_i num^i den^(n-i) x^i
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut num_pow = BigInt::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c * &num_pow * num_traits::pow(den.clone(), n - i));
            num_pow *= num;
        }
        Poly::new(out).primitive_part()
    }

    /// Polynomial division over Q where the quotient is known to be integral; `None`
    /// if `divisor` does not divide `self` exactly in Z[x].
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if self.degree() < divisor.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dl = divisor.lc();
        let dd = divisor.degree();
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&dl);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * dc;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Poly::new(quot))
    }

    /// Exact division over Q returning the primitive part of the quotient.
    pub fn div_q(&self, divisor: &Poly) -> Poly {
        let scaled = self.scale(&num_traits::pow(divisor.lc(), self.degree() + 1));
        scaled
            .div_exact(divisor)
            .expect("div_q: divisor does not divide over Q")
            .primitive_part()
    }

    /// Pseudo-remainder `prem(self, other)`.
    pub fn pseudo_rem(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        let d = other.degree();
        let l = other.lc();
        while !r.is_zero() && r.degree() >= d {
            let shift = r.degree() - d;
            let rl = r.lc();
            r = r.scale(&l).sub(&Poly::monomial(rl, shift).mul(other));
        }
        r
    }

    /// Primitive gcd over Q (positive leading coefficient), via the primitive PRS.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree() == 0 || self.gcd(&self.derivative()).degree() == 0
    }

    /// Maximum absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Ceiling of the Euclidean norm of the coefficient vector.
    pub fn norm2_ceil(&self) -> BigInt {
        let s: BigInt = self.coeffs.iter().map(|c| c * c).sum();
        let r = s.sqrt();
        if &r * &r == s {
            r
        } else {
            r + 1
        }
    }

    /// Rational coefficients divided by the leading coefficient.
    pub fn monic_rationals(&self) -> Vec<BigRational> {
        let l = self.lc();
        self.coeffs
            .iter()
            .map(|c| BigRational::new(c.clone(), l.clone()))
            .collect()
    }

    /// Product of all roots with multiplicity, `(-1)^n f(0) / lc`.
    pub fn root_product(&self) -> BigRational {
        let n = self.degree();
        let v = BigRational::new(self.constant_term(), self.lc());
        if n % 2 == 1 {
            -v
        } else {
            v
        }
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Deterministic ordering key: degree first, then coefficients from the constant term.
    pub fn sort_key(&self) -> (usize, Vec<BigInt>) {
        (self.degree(), self.coeffs.clone())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Product of a list of polynomials.
pub fn product<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> Poly {
    polys.into_iter().fold(Poly::one(), |acc, p| acc.mul(p))
}

/// The `d`-th cyclotomic polynomial.
pub fn cyclotomic(d: u64) -> Poly {
    assert!(d >= 1);
    let mut p = Poly::monomial(BigInt::one(), d as usize).sub(&Poly::one());
    for e in 1..d {
        if d.is_multiple_of(e) {
            p = p.div_exact(&cyclotomic(e)).expect("cyclotomic division");
        }
    }
    p
}

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[-1, 1]);
        let b = p(&[1, 1]);
        assert_eq!(a.mul(&b), p(&[-1, 0, 1]));
        assert_eq!(a.add(&b), p(&[0, 2]));
        assert_eq!(a.sub(&a), Poly::zero());
        assert_eq!(p(&[-1, 0, 1]).div_exact(&a), Some(b.clone()));
        assert_eq!(p(&[1, 0, 1]).div_exact(&a), None);
        assert_eq!(b.pow(3), p(&[1, 3, 3, 1]));
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = p(&[-1, 1]);
        let b = p(&[1, 1]);
        let f = a.mul(&a).mul(&b);
        let g = a.mul(&p(&[2, 0, 1]));
        assert_eq!(f.gcd(&g), a);
        assert!(!f.is_squarefree());
        assert!(a.mul(&b).is_squarefree());
    }

    #[test]
    fn shift_and_display() {
        let g = p(&[6, 0, 4, -4, 1]);
        let f = g.shift(&BigInt::from(-1));
        assert_eq!(f, p(&[15, -24, 22, -8, 1]));
        assert_eq!(g.to_string(), "x^4 - 4*x^3 + 4*x^2 + 6");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
    }

    #[test]
    fn rational_normalization() {
        let coeffs = vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-3).into(), 4.into()),
        ];
        let (c, prim) = Poly::from_rationals(&coeffs);
        assert_eq!(prim, p(&[-2, 3]));
        assert_eq!(c, BigRational::new((-1).into(), 4.into()));
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(5), p(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        assert_eq!(euler_phi(18), 6);
        for d in 1..40 {
            assert_eq!(cyclotomic(d).degree() as u64, euler_phi(d));
        }
    }
}
