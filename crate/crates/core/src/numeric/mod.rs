//! Fixed-point arbitrary-precision reals and complexes, certified polynomial roots
//! and integer-relation search. Used only by the numeric lattice oracle and tests.

mod lll;
mod roots;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use lll::lll_reduce;
pub use roots::{certified_roots, roots_f64, RootSystem};

/// `m / 2^bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Real {
    m: BigInt,
    bits: u32,
}

/// Bits needed for `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32
}

impl Real {
    pub fn zero(bits: u32) -> Self {
        Real { m: BigInt::zero(), bits }
    }

    pub fn from_int(v: &BigInt, bits: u32) -> Self {
        Real { m: v << bits, bits }
    }

    pub fn from_i64(v: i64, bits: u32) -> Self {
        Real::from_int(&BigInt::from(v), bits)
    }

    pub fn from_rational(v: &BigRational, bits: u32) -> Self {
        Real { m: (v.numer() << bits).div_floor(v.denom()), bits }
    }

    pub fn from_f64(v: f64, bits: u32) -> Self {
        let (mant, exp, sign) = num_traits::float::FloatCore::integer_decode(v);
        let mut m = BigInt::from(mant);
        let shift = exp as i64 + bits as i64;
        m = if shift >= 0 { m << shift as u32 } else { m >> (-shift) as u32 };
        Real { m: if sign < 0 { -m } else { m }, bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }

    pub fn to_f64(&self) -> f64 {
        // keep 60 significant bits then scale
        let len = self.m.bits() as i64;
        let drop = (len - 60).max(0);
        let top = (&self.m >> drop as u32).to_f64().unwrap_or(0.0);
        top * 2f64.powi((drop - self.bits as i64) as i32)
    }

    /// Re-express at another precision (truncating when lowering).
    pub fn with_bits(&self, bits: u32) -> Real {
        let m = if bits >= self.bits {
            &self.m << (bits - self.bits)
        } else {
            &self.m >> (self.bits - bits)
        };
        Real { m, bits }
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn add(&self, o: &Real) -> Real {
        debug_assert_eq!(self.bits, o.bits);
        Real { m: &self.m + &o.m, bits: self.bits }
    }

    pub fn sub(&self, o: &Real) -> Real {
        debug_assert_eq!(self.bits, o.bits);
        Real { m: &self.m - &o.m, bits: self.bits }
    }

    pub fn neg(&self) -> Real {
        Real { m: -&self.m, bits: self.bits }
    }

    pub fn abs(&self) -> Real {
        Real { m: self.m.abs(), bits: self.bits }
    }

    pub fn mul(&self, o: &Real) -> Real {
        debug_assert_eq!(self.bits, o.bits);
        Real { m: (&self.m * &o.m) >> self.bits, bits: self.bits }
    }

    pub fn mul_int(&self, k: &BigInt) -> Real {
        Real { m: &self.m * k, bits: self.bits }
    }

    pub fn div(&self, o: &Real) -> Real {
        debug_assert_eq!(self.bits, o.bits);
        Real { m: (&self.m << self.bits).div_floor(&o.m), bits: self.bits }
    }

    pub fn div_int(&self, k: &BigInt) -> Real {
        Real { m: self.m.div_floor(k), bits: self.bits }
    }

    pub fn shl(&self, k: u32) -> Real {
        Real { m: &self.m << k, bits: self.bits }
    }

    pub fn shr(&self, k: u32) -> Real {
        Real { m: &self.m >> k, bits: self.bits }
    }

    pub fn sqrt(&self) -> Real {
        assert!(!self.m.is_negative(), "sqrt of a negative number");
        Real { m: (&self.m << self.bits).sqrt(), bits: self.bits }
    }

    /// `round(self * scale)` as an integer.
    pub fn round_scaled(&self, scale: &BigInt) -> BigInt {
        let half = BigInt::one() << (self.bits - 1);
        (&self.m * scale + half) >> self.bits
    }

    /// Base-2 exponent `e` with `2^e <= |self| < 2^(e+1)`; `None` for zero.
    pub fn ilog2(&self) -> Option<i64> {
        if self.m.is_zero() {
            None
        } else {
            Some(self.m.bits() as i64 - 1 - self.bits as i64)
        }
    }

    /// True when `|self| < 2^e`.
    pub fn abs_below_pow2(&self, e: i64) -> bool {
        self.ilog2().is_none_or(|l| l < e)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, o: &Real) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Real {
    fn cmp(&self, o: &Real) -> Ordering {
        debug_assert_eq!(self.bits, o.bits);
        self.m.cmp(&o.m)
    }
}

/// `sum_{k>=0} x^(2k+1) / (2k+1)` with alternating signs when `alternate`; |x| < 1.
fn odd_series(x: &Real, alternate: bool) -> Real {
    if x.is_negative() {
        // odd function; also keeps the floor-shifted terms from sticking at -1 ulp
        return odd_series(&x.neg(), alternate).neg();
    }
    let x2 = x.mul(x);
    let mut term = x.clone();
    let mut sum = Real::zero(x.bits);
    let mut k: u64 = 0;
    while !term.is_zero() {
        let t = term.div_int(&BigInt::from(2 * k + 1));
        if alternate && k % 2 == 1 {
            sum = sum.sub(&t);
        } else {
            sum = sum.add(&t);
        }
        term = term.mul(&x2);
        k += 1;
    }
    sum
}

const GUARD: u32 = 32;

/// pi by Machin's formula.
pub fn pi(bits: u32) -> Real {
    let w = bits + GUARD;
    let a = odd_series(&Real::from_rational(&BigRational::new(1.into(), 5.into()), w), true);
    let b = odd_series(&Real::from_rational(&BigRational::new(1.into(), 239.into()), w), true);
    a.mul_int(&16.into()).sub(&b.mul_int(&4.into())).with_bits(bits)
}

pub fn ln2(bits: u32) -> Real {
    let w = bits + GUARD;
    odd_series(&Real::from_rational(&BigRational::new(1.into(), 3.into()), w), false)
        .shl(1)
        .with_bits(bits)
}

/// Natural logarithm of a positive real.
pub fn ln(x: &Real) -> Real {
    assert!(!x.is_negative() && !x.is_zero(), "ln of a non-positive number");
    let bits = x.bits;
    let w = bits + GUARD;
    let xw = x.with_bits(w);
    let k = xw.ilog2().expect("nonzero");
    // y = x / 2^k in [1, 2)
    let y = if k >= 0 { xw.shr(k as u32) } else { xw.shl((-k) as u32) };
    let one = Real::from_i64(1, w);
    let t = y.sub(&one).div(&y.add(&one));
    let r = odd_series(&t, false).shl(1).add(&ln2(w).mul_int(&BigInt::from(k)));
    r.with_bits(bits)
}

/// Arctangent of any real.
pub fn atan(x: &Real) -> Real {
    let bits = x.bits;
    let w = bits + GUARD;
    let mut y = x.with_bits(w);
    let one = Real::from_i64(1, w);
    let mut flip = false;
    if y.abs() > one {
        y = one.div(&y);
        flip = true;
    }
    // half-angle reductions: atan y = 2 atan(y / (1 + sqrt(1 + y^2)))
    const HALVINGS: u32 = 8;
    for _ in 0..HALVINGS {
        let s = one.add(&y.mul(&y)).sqrt();
        y = y.div(&one.add(&s));
    }
    let mut r = odd_series(&y, true).shl(HALVINGS);
    if flip {
        let half_pi = pi(w).shr(1);
        r = if x.is_negative() { half_pi.neg().sub(&r) } else { half_pi.sub(&r) };
    }
    r.with_bits(bits)
}

/// Argument of `x + iy` in `(-pi, pi]`.
pub fn atan2(y: &Real, x: &Real) -> Real {
    let bits = x.bits;
    if x.is_zero() && y.is_zero() {
        return Real::zero(bits);
    }
    if x.is_zero() {
        let h = pi(bits).shr(1);
        return if y.is_negative() { h.neg() } else { h };
    }
    let base = atan(&y.div(x));
    if !x.is_negative() {
        base
    } else if y.is_negative() {
        base.sub(&pi(bits))
    } else {
        base.add(&pi(bits))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cx {
    pub re: Real,
    pub im: Real,
}

impl Cx {
    pub fn new(re: Real, im: Real) -> Self {
        Cx { re, im }
    }

    pub fn zero(bits: u32) -> Self {
        Cx { re: Real::zero(bits), im: Real::zero(bits) }
    }

    pub fn from_f64(re: f64, im: f64, bits: u32) -> Self {
        Cx { re: Real::from_f64(re, bits), im: Real::from_f64(im, bits) }
    }

    pub fn bits(&self) -> u32 {
        self.re.bits
    }

    pub fn with_bits(&self, bits: u32) -> Cx {
        Cx { re: self.re.with_bits(bits), im: self.im.with_bits(bits) }
    }

    pub fn add(&self, o: &Cx) -> Cx {
        Cx { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Cx) -> Cx {
        Cx { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &Cx) -> Cx {
        Cx {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> Cx {
        Cx { re: self.re.mul_int(k), im: self.im.mul_int(k) }
    }

    pub fn norm_sqr(&self) -> Real {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    pub fn div(&self, o: &Cx) -> Cx {
        let d = o.norm_sqr();
        let num = self.mul(&o.conj());
        Cx { re: num.re.div(&d), im: num.im.div(&d) }
    }

    pub fn conj(&self) -> Cx {
        Cx { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// `ln |z|`, computed as `ln(|z|^2) / 2` to avoid a square root.
    pub fn ln_abs(&self) -> Real {
        ln(&self.norm_sqr()).shr(1)
    }

    pub fn arg(&self) -> Real {
        atan2(&self.im, &self.re)
    }
}

/// Evaluate an integer polynomial and its derivative at `z` (Horner).
pub(crate) fn eval_with_derivative(coeffs: &[BigInt], z: &Cx) -> (Cx, Cx) {
    let bits = z.bits();
    let mut p = Cx::zero(bits);
    let mut d = Cx::zero(bits);
    for c in coeffs.iter().rev() {
        d = d.mul(z).add(&p);
        p = p.mul(z);
        p.re = p.re.add(&Real::from_int(c, bits));
    }
    (p, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Real, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() <= tol
    }

    #[test]
    fn constants_match_f64() {
        assert!(close(&pi(200), std::f64::consts::PI, 1e-15));
        assert!(close(&ln2(200), std::f64::consts::LN_2, 1e-15));
    }

    #[test]
    fn pi_digits() {
        // the first 50 decimals of pi
        let want = "31415926535897932384626433832795028841971693993751";
        let p = pi(400);
        let scaled = p.round_scaled(&num_traits::pow(BigInt::from(10), 49));
        assert_eq!(scaled.to_string(), want);
    }

    #[test]
    fn elementary_functions() {
        let bits = 256;
        for &v in &[0.001, 0.5, 1.0, 2.0, 3.75, 1e6] {
            let x = Real::from_f64(v, bits);
            assert!(close(&ln(&x), v.ln(), 1e-14 * v.ln().abs().max(1.0)));
            assert!(close(&atan(&x), v.atan(), 1e-15));
            assert!(close(&atan(&x.neg()), -v.atan(), 1e-15));
        }
        let one = Real::from_i64(1, bits);
        let m1 = one.neg();
        assert!(close(&atan2(&one, &m1), 3.0 * std::f64::consts::FRAC_PI_4, 1e-15));
        assert!(close(&atan2(&m1, &m1), -3.0 * std::f64::consts::FRAC_PI_4, 1e-15));
        assert!(close(&atan2(&Real::zero(bits), &m1), std::f64::consts::PI, 1e-15));
    }

    #[test]
    fn exp_ln_consistency_at_high_precision() {
        // ln(2^k * 3) = k ln 2 + ln 3, checked to ~1e-70
        let bits = 300;
        let l3 = ln(&Real::from_i64(3, bits));
        let l = ln(&Real::from_i64(3 << 20, bits));
        let diff = l.sub(&l3).sub(&ln2(bits).mul_int(&20.into()));
        assert!(diff.abs_below_pow2(-230));
    }
}
