//! Simultaneous (Aberth-Ehrlich) root finding, refined at increasing precision and
//! certified with Weierstrass inclusion disks.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use super::{bits_for_digits, eval_with_derivative, Cx, Real};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Roots of a squarefree polynomial, each within `10^-digits` of the true root,
/// in canonical order (real part ascending, then imaginary part ascending).
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub poly: Poly,
    pub roots: Vec<Cx>,
    pub digits: u32,
}

impl RootSystem {
    pub fn bits(&self) -> u32 {
        self.roots.first().map_or(64, |r| r.bits())
    }

    pub fn to_f64(&self) -> Vec<Complex64> {
        self.roots.iter().map(|r| {
            let (a, b) = r.to_f64();
            Complex64::new(a, b)
        }).collect()
    }
}

/// Double-precision Aberth iteration; good starting values for the refinement.
pub fn roots_f64(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lc = coeffs[n];
    // Fujiwara-style radius
    let mut r: f64 = 0.0;
    for (i, c) in coeffs.iter().enumerate().take(n) {
        let v = (c / lc).abs().powf(1.0 / (n - i) as f64);
        r = r.max(v);
    }
    let r = (2.0 * r).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::zero();
        let mut d = Complex64::zero();
        for c in coeffs.iter().rev() {
            d = d * x + p;
            p = p * x + c;
        }
        (p, d)
    };
    for _ in 0..1000 {
        let mut biggest: f64 = 0.0;
        for i in 0..n {
            let (p, d) = eval(z[i]);
            if p == Complex64::zero() {
                continue;
            }
            let ratio = p / d;
            let mut s = Complex64::zero();
            for j in 0..n {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                biggest = biggest.max(w.norm() / z[i].norm().max(1e-300));
            }
        }
        if biggest < 1e-15 {
            break;
        }
    }
    z
}

fn aberth_step(coeffs: &[BigInt], z: &mut [Cx]) -> Option<i64> {
    let n = z.len();
    let mut worst: Option<i64> = None;
    let bits = z[0].bits();
    let one = Cx::new(Real::from_i64(1, bits), Real::zero(bits));
    for i in 0..n {
        let (p, d) = eval_with_derivative(coeffs, &z[i]);
        if p.is_zero() {
            continue;
        }
        if d.is_zero() {
            return Some(i64::MAX);
        }
        let ratio = p.div(&d);
        let mut s = Cx::zero(bits);
        for j in 0..n {
            if j != i {
                let diff = z[i].sub(&z[j]);
                if diff.is_zero() {
                    return Some(i64::MAX);
                }
                s = s.add(&one.div(&diff));
            }
        }
        let den = one.sub(&ratio.mul(&s));
        if den.is_zero() {
            return Some(i64::MAX);
        }
        let w = ratio.div(&den);
        let e = w.norm_sqr().ilog2().map(|e| e / 2 + 1);
        worst = match (worst, e) {
            (None, e) => e,
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, None) => a,
        };
        z[i] = z[i].sub(&w);
    }
    worst
}

/// Weierstrass corrections `W_i = f(z_i) / (lc * prod_{j != i} (z_i - z_j))`.
fn weierstrass(coeffs: &[BigInt], z: &[Cx]) -> Vec<Real> {
    let bits = z[0].bits();
    let lc = coeffs.last().unwrap();
    (0..z.len())
        .map(|i| {
            let (p, _) = eval_with_derivative(coeffs, &z[i]);
            let mut den = Cx::new(Real::from_int(lc, bits), Real::zero(bits));
            for j in 0..z.len() {
                if j != i {
                    den = den.mul(&z[i].sub(&z[j]));
                }
            }
            p.div(&den).abs()
        })
        .collect()
}

/// Certified roots to `digits` decimal digits.
///
/// The `n |W_i|` disks around the approximations are pairwise disjoint (even when
/// doubled), so each holds exactly one root; near-real approximations whose doubled
/// disk meets the real axis are snapped onto it (conjugate symmetry forces that
/// root to be real).
pub fn certified_roots(f: &Poly, digits: u32) -> Result<RootSystem> {
    let n = f.degree();
    if n == 0 {
        return Ok(RootSystem { poly: f.clone(), roots: Vec::new(), digits });
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let coeffs = f.coeffs().to_vec();
    let target_bits = bits_for_digits(digits) + 16;
    let start = roots_f64(&f.to_f64_coeffs());
    let mut extra = 64u32;
    for _attempt in 0..4 {
        let final_bits = target_bits + extra;
        let mut bits = 96u32.min(final_bits);
        let mut z: Vec<Cx> = start.iter().map(|c| Cx::from_f64(c.re, c.im, bits)).collect();
        loop {
            for _ in 0..200 {
                match aberth_step(&coeffs, &mut z) {
                    None => break,
                    Some(e) if e < -(bits as i64) + 24 => break,
                    _ => {}
                }
            }
            if bits == final_bits {
                break;
            }
            bits = (bits * 2).min(final_bits);
            z = z.iter().map(|c| c.with_bits(bits)).collect();
        }
        let w = weierstrass(&coeffs, &z);
        let nn = BigInt::from(n as u64);
        let radii: Vec<Real> = w.iter().map(|wi| wi.mul_int(&nn).shl(1)).collect();
        let mut ok = true;
        for i in 0..n {
            for j in i + 1..n {
                let d = z[i].sub(&z[j]).abs();
                if d <= radii[i].add(&radii[j]) {
                    ok = false;
                }
            }
        }
        let limit = -((digits as f64) * std::f64::consts::LOG2_10).ceil() as i64 - 1;
        if ok && radii.iter().all(|r| r.abs_below_pow2(limit)) {
            for (zi, ri) in z.iter_mut().zip(&radii) {
                if zi.im.abs() <= *ri {
                    zi.im = Real::zero(bits);
                }
            }
            canonical_sort(&mut z);
            return Ok(RootSystem { poly: f.clone(), roots: z, digits });
        }
        extra *= 2;
    }
    Err(Error::PrecisionExhausted(format!("could not certify roots of {f} to {digits} digits")))
}

fn canonical_sort(z: &mut [Cx]) {
    let bits = z.first().map_or(64, |c| c.bits());
    let tol = (bits / 2) as i64;
    z.sort_by(|a, b| {
        let d = a.re.sub(&b.re);
        if d.abs_below_pow2(-tol) {
            a.im.cmp(&b.im)
        } else if d.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    });
}
