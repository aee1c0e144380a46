mod common;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use xlat::poly::{cyclotomic, discriminant, factor_z, parse_poly, power_form, tschirnhaus_by, PowerForm};
use xlat::Poly;

fn small_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    (1..=max_deg)
        .prop_flat_map(|d| (prop::collection::vec(-5i64..=5, d), prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3])))
        .prop_map(|(mut c, lc)| {
            c.push(lc);
            Poly::from_i64(&c)
        })
}

/// Rational roots by the rational-root theorem, with multiplicity.
fn rational_roots(f: &Poly) -> usize {
    let divisors = |n: &BigInt| -> Vec<i64> {
        let n = n.abs().to_i64().unwrap();
        (1..=n).filter(|d| n % d == 0).collect()
    };
    let mut g = f.clone();
    let mut count = 0;
    while !g.is_zero() && g.constant_term().is_zero() {
        g = g.div_exact(&Poly::x()).unwrap();
        count += 1;
    }
    if g.degree() == 0 {
        return count;
    }
    'outer: loop {
        for p in divisors(&g.constant_term()) {
            for q in divisors(&g.lc()) {
                for s in [p, -p] {
                    let lin = Poly::from_i64(&[-s, q]);
                    if let Some(h) = g.div_exact(&lin) {
                        g = h;
                        count += 1;
                        if g.degree() == 0 {
                            return count;
                        }
                        continue 'outer;
                    }
                }
            }
        }
        return count;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn factorization_round_trip(parts in prop::collection::vec(small_poly(3), 1..=3)) {
        let f = parts.iter().fold(Poly::one(), |acc, p| acc.mul(p));
        let fac = factor_z(&f);
        prop_assert_eq!(fac.expand(), f.clone());
        for (g, _) in &fac.factors {
            prop_assert!(g.degree() >= 1 && g.is_primitive() && g.lc() > BigInt::zero());
            prop_assert!(factor_z(g).is_irreducible());
        }
        let linear: usize = fac.factors.iter().filter(|(g, _)| g.degree() == 1).map(|(_, m)| m).sum();
        prop_assert_eq!(linear, rational_roots(&f));
    }

    #[test]
    fn display_parses_back(f in small_poly(7)) {
        let (c, g) = parse_poly(&f.to_string()).unwrap();
        prop_assert_eq!(g.scale(c.numer()), f);
        prop_assert!(c.is_integer());
    }

    #[test]
    fn tschirnhaus_maps_roots(f in small_poly(4), t in prop::collection::vec(-3i64..=3, 1..=3)) {
        prop_assume!(f.degree() >= 2 && f.is_squarefree());
        let tp = Poly::from_i64(&t);
        let h = tschirnhaus_by(&f, &tp);
        prop_assert_eq!(h.degree(), f.degree());
        let hc = common::coeffs_f64(&h);
        let tc = common::coeffs_f64(&tp);
        for r in common::roots(&f) {
            let y = common::eval(&tc, r);
            let scale: f64 = hc.iter().enumerate().map(|(i, c)| c.abs() * y.norm().max(1.0).powi(i as i32)).sum();
            prop_assert!(common::eval(&hc, y).norm() < 1e-7 * scale);
        }
    }

    #[test]
    fn discriminant_from_roots(f in small_poly(4)) {
        prop_assume!(f.degree() >= 2 && f.is_squarefree());
        let r = common::roots(&f);
        let n = r.len();
        let lc = f.lc().to_f64().unwrap();
        let mut d = Complex64::new(lc.powi(2 * n as i32 - 2), 0.0);
        for i in 0..n {
            for j in i + 1..n {
                d *= (r[i] - r[j]) * (r[i] - r[j]);
            }
        }
        let exact = discriminant(&f).to_f64().unwrap();
        prop_assert!((d.re - exact).abs() <= 1e-6 * exact.abs().max(1.0), "{} vs {}", d, exact);
        prop_assert!(d.im.abs() <= 1e-6 * exact.abs().max(1.0));
    }

    #[test]
    fn power_form_recovers_powers(g in small_poly(3), k in 1usize..=3, c in 1i64..=4) {
        prop_assume!(!g.constant_term().is_zero() && factor_z(&g).is_irreducible());
        let f = g.pow(k as u32).scale(&BigInt::from(c));
        match power_form(&f).unwrap() {
            PowerForm::Power { c: c2, g: g2, k: k2 } => {
                prop_assert_eq!(k2, k);
                prop_assert_eq!(g2.pow(k as u32).scale(c2.numer()), f);
                prop_assert!(c2.is_integer());
            }
            PowerForm::NotPrimePower => prop_assert!(false, "missed {}", f),
        }
    }
}

#[test]
fn cyclotomic_values() {
    let phi12 = cyclotomic(12);
    assert_eq!(phi12, Poly::from_i64(&[1, 0, -1, 0, 1]));
    // x^n - 1 is the product of Phi_d over d | n
    let x12 = (1..=12u64).filter(|d| 12 % d == 0).fold(Poly::one(), |a, d| a.mul(&cyclotomic(d)));
    assert_eq!(x12, Poly::from_i64(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]));
    let (c, f) = parse_poly("x^2/2 - 1").unwrap();
    assert_eq!(c, BigRational::new(1.into(), 2.into()));
    assert_eq!(f, Poly::from_i64(&[-2, 0, 1]));
}
