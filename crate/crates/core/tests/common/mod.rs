//! Shared test oracles: plain f64 arithmetic, independent of the crate's own numerics.
#![allow(dead_code)]

use num_complex::Complex64;
use num_traits::ToPrimitive;
use xlat::Poly;

pub fn coeffs_f64(f: &Poly) -> Vec<f64> {
    f.coeffs().iter().map(|c| c.to_f64().unwrap()).collect()
}

pub fn eval(c: &[f64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

/// Durand-Kerner with a Newton polish; fine for the small squarefree inputs the tests use.
pub fn roots(f: &Poly) -> Vec<Complex64> {
    let c = coeffs_f64(f);
    let n = c.len() - 1;
    let lc = c[n];
    let monic: Vec<f64> = c.iter().map(|x| x / lc).collect();
    let bound = 1.0 + monic[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * bound).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(&monic, z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * bound {
            break;
        }
    }
    let d: Vec<f64> = (1..=n).map(|k| monic[k] * k as f64).collect();
    for r in z.iter_mut() {
        for _ in 0..3 {
            let dv = eval(&d, *r);
            if dv.norm() > 0.0 {
                *r -= eval(&monic, *r) / dv;
            }
        }
    }
    z
}

/// Does some `r_i / r_j` (i != j) satisfy `z^k = 1` for a `k <= max_order`?
pub fn degenerate_numeric(f: &Poly, max_order: u32) -> bool {
    let r = roots(f);
    for i in 0..r.len() {
        for j in 0..r.len() {
            if i == j {
                continue;
            }
            let q = r[i] / r[j];
            if (q.norm() - 1.0).abs() > 1e-8 {
                continue;
            }
            if (1..=max_order).any(|k| (q.powu(k) - 1.0).norm() < 1e-6) {
                return true;
            }
        }
    }
    false
}
