use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;
use xlat::galoislike::{
    all_permutations, check_rfqtri, check_rftri, check_section3_properties, galois_like_groups, is_closed,
    parse_corpus, CheckStatus,
};
use xlat::lattice::{hnf, IntegerLattice};
use xlat::permgroup::Permutation;
use xlat::poly::parse_poly;

const CORPUS: &str = include_str!("fixtures/corpus.jsonl");

fn member(l: &IntegerLattice, v: &[BigInt]) -> bool {
    let mut rows = l.basis().to_vec();
    rows.push(v.to_vec());
    hnf(&rows, v.len()).unwrap() == *l
}

/// `v[sigma^{-1}(i)]`, written out directly.
fn permute_inv(sigma: &Permutation, v: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); v.len()];
    for (i, x) in v.iter().enumerate() {
        out[sigma.apply(i)] = x.clone();
    }
    out
}

#[test]
fn corpus_suite_is_clean() {
    let corpus = parse_corpus(CORPUS).unwrap();
    assert!(corpus.len() >= 50);
    let sources: BTreeSet<&str> = corpus.iter().map(|c| c.source.as_str()).collect();
    assert!(sources.contains("Example1") && sources.contains("Example2"));
    let report = check_section3_properties(&corpus);
    let failures: Vec<String> = report
        .items
        .iter()
        .flat_map(|i| i.failures().into_iter().map(move |c| format!("{}: {} {}", i.polynomial, c.property, c.note)))
        .collect();
    assert_eq!(report.failure_count(), 0, "{failures:#?}");
    for property in ["closure", "containment", "subg", "rftri", "rfqtri", "triiff", "4eq"] {
        assert!(report.count(property, CheckStatus::Pass) > 0, "{property} never exercised");
    }
}

#[test]
fn rftri_on_rational_roots() {
    // 2 * 3 / 6 = 1
    let r = check_rftri(&parse_poly("(x - 2)*(x - 3)*(x - 6)").unwrap().1).unwrap();
    assert!(!r.lattice_trivial && !r.conditions_hold && r.holds);
    let r = check_rftri(&parse_poly("(x - 2)*(x - 3)*(x - 5)").unwrap().1).unwrap();
    assert!(r.lattice_trivial && r.conditions_hold && r.holds);
}

#[test]
fn rfqtri_on_gaussian() {
    let r = check_rfqtri(&parse_poly("x^2 + 1").unwrap().1).unwrap();
    assert!(!r.lattice_trivial && r.holds);
}

fn nested_lattices() -> impl Strategy<Value = (IntegerLattice, IntegerLattice, usize)> {
    (2usize..=4).prop_flat_map(|n| {
        (prop::collection::vec(prop::collection::vec(-2i64..=2, n), 0..=2), prop::collection::vec(prop::collection::vec(-2i64..=2, n), 0..=2))
            .prop_map(move |(a, b)| {
                let big = |rows: &[Vec<i64>]| -> Vec<Vec<BigInt>> {
                    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
                };
                let inner = hnf(&big(&a), n).unwrap();
                let mut both = big(&a);
                both.extend(big(&b));
                (inner, hnf(&both, n).unwrap(), n)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn groups_match_brute_force((rf, rfq, n) in nested_lattices()) {
        let t = galois_like_groups(&rf, &rfq, n).unwrap();
        let (mut gf, mut gq, mut gb) = (vec![], vec![], vec![]);
        for s in all_permutations(n) {
            if rf.basis().iter().all(|v| member(&rf, &permute_inv(&s, v))) {
                gf.push(s.clone());
            }
            if rfq.basis().iter().all(|v| member(&rfq, &permute_inv(&s, v))) {
                gq.push(s.clone());
            }
            let moves_within = |v: &Vec<BigInt>| {
                let d: Vec<BigInt> = permute_inv(&s, v).iter().zip(v).map(|(a, b)| a - b).collect();
                member(&rf, &d)
            };
            if rfq.basis().iter().all(moves_within) {
                gb.push(s);
            }
        }
        prop_assert_eq!(&t.g_f, &gf);
        prop_assert_eq!(&t.g_f_q, &gq);
        prop_assert_eq!(&t.g_f_b, &gb);
        prop_assert!(is_closed(&t.g_f) && is_closed(&t.g_f_q) && is_closed(&t.g_f_b));
        let gf_set: BTreeSet<_> = t.g_f.iter().collect();
        let gq_set: BTreeSet<_> = t.g_f_q.iter().collect();
        prop_assert!(t.g_f_b.iter().all(|s| gf_set.contains(s) && gq_set.contains(s)));
    }
}
