use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use xlat::galois::{catalog, galois_group, COUNTS};
use xlat::poly::{discriminant, factor_mod_p, factor_z, parse_poly};
use xlat::Poly;

fn primes(below: u64) -> Vec<u64> {
    (2..below).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

fn poly(s: &str) -> Poly {
    parse_poly(s).unwrap().1
}

#[test]
fn catalog_invariants() {
    let cat = catalog().unwrap();
    for (deg, count) in COUNTS {
        assert_eq!(cat.iter().filter(|e| e.degree == deg).count(), count);
    }
    let fact = |n: usize| (1..=n as u64).product::<u64>();
    for e in cat {
        let g = e.group();
        assert_eq!(g.order(), e.order as u128, "{}", e.label());
        assert_eq!(fact(e.degree) % e.order, 0);
        assert!(g.is_transitive());
        assert_eq!(g.is_2transitive().unwrap(), e.is_2transitive, "{}", e.label());
        assert_eq!(g.is_2homogeneous().unwrap(), e.is_2homogeneous, "{}", e.label());
        assert_eq!(g.generators().iter().all(|p| p.is_even()), e.even, "{}", e.label());
        assert_eq!(e.cycle_type_counts().values().sum::<u64>(), e.order);
    }
    for deg in 2..=7 {
        let orders: Vec<u64> = cat.iter().filter(|e| e.degree == deg).map(|e| e.order).collect();
        assert!(orders.windows(2).all(|w| w[0] <= w[1]), "degree {deg} not ordered by size");
        assert_eq!(*orders.last().unwrap(), fact(deg));
    }
}

#[test]
fn known_groups() {
    // (polynomial, order, 2-transitive)
    let cases = [
        ("x^2 - 2", 2, true),
        ("x^3 - 2", 6, true),
        ("x^3 - 3*x + 1", 3, false),
        ("x^4 + 1", 4, false),
        ("x^4 - 2", 8, false),
        ("x^4 + x + 1", 24, true),
        ("x^4 + 8*x + 12", 12, true),
        ("x^5 - 2", 20, true),
        ("x^5 - x - 1", 120, true),
        ("x^5 - x^4 - 4*x^3 + 3*x^2 + 3*x - 1", 5, false),
        ("x^6 - 2", 12, false),
        ("x^6 + x^5 + x^4 + x^3 + x^2 + x + 1", 6, false),
        ("x^6 + x + 1", 720, true),
        ("x^7 - 2", 42, true),
        ("x^7 - x - 1", 5040, true),
    ];
    for (s, order, two) in cases {
        let e = galois_group(&poly(s)).unwrap();
        assert_eq!((e.order, e.is_2transitive), (order, two), "{s}: got {}", e.label());
    }
}

fn irreducible() -> impl Strategy<Value = Poly> {
    (3usize..=6)
        .prop_flat_map(|d| (prop::collection::vec(-6i64..=6, d), prop::sample::select(vec![1i64, 2, 3])))
        .prop_filter_map("irreducible", |(mut c, lc)| {
            c.push(lc);
            let f = Poly::from_i64(&c);
            (!f.constant_term().is_zero() && factor_z(&f).is_irreducible()).then_some(f)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    /// Frobenius cycle types (Dedekind) and the discriminant parity must be realised
    /// by the identified group.
    #[test]
    fn dedekind_consistency(f in irreducible()) {
        let e = galois_group(&f).unwrap();
        let disc = discriminant(&f);
        let types: BTreeSet<Vec<usize>> = e.cycle_type_counts().keys().cloned().collect();
        for p in primes(400) {
            let pb = BigInt::from(p);
            if (&f.lc() % &pb).is_zero() || (disc.numer() % &pb).is_zero() {
                continue;
            }
            let fac = factor_mod_p(&f, p).unwrap();
            prop_assert!(fac.iter().all(|(_, m)| *m == 1));
            let mut pattern: Vec<usize> = fac.iter().map(|(g, _)| g.degree()).collect();
            pattern.sort_unstable_by(|a, b| b.cmp(a));
            prop_assert!(types.contains(&pattern), "{} mod {}: {:?} not in {}", f, p, pattern, e.label());
        }
        let square = disc > num_rational::BigRational::zero() && {
            let n = disc.numer().sqrt();
            let d = disc.denom().sqrt();
            &n * &n == *disc.numer() && &d * &d == *disc.denom()
        };
        prop_assert_eq!(square, e.even);
    }
}
