use std::collections::{BTreeSet, HashSet, VecDeque};

use proptest::prelude::*;
use xlat::permgroup::{parse_generators, Permutation, PermutationGroup};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn group() -> impl Strategy<Value = PermutationGroup> {
    (2usize..=6).prop_flat_map(|n| {
        prop::collection::vec(perm(n), 0..=3).prop_map(move |g| PermutationGroup::new(n, g).unwrap())
    })
}

/// Closure of the generators by breadth-first search.
fn brute_elements(g: &PermutationGroup) -> HashSet<Vec<usize>> {
    let n = g.degree();
    let id = Permutation::identity(n);
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.images().to_vec()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for s in g.generators() {
            let q = p.mul(s);
            if seen.insert(q.images().to_vec()) {
                queue.push_back(q);
            }
        }
    }
    seen
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn order_and_membership_match_closure(g in group(), probe in (2usize..=6).prop_flat_map(perm)) {
        let els = brute_elements(&g);
        prop_assert_eq!(g.order(), els.len() as u128);
        prop_assert_eq!(factorial(g.degree()) % g.order(), 0);
        if probe.degree() == g.degree() {
            prop_assert_eq!(g.contains(&probe), els.contains(probe.images()));
        }
        let listed: BTreeSet<Vec<usize>> =
            g.enumerate_elements(1_000_000).unwrap().iter().map(|p| p.images().to_vec()).collect();
        prop_assert_eq!(listed.len(), els.len());
        prop_assert!(listed.iter().all(|p| els.contains(p)));
    }

    #[test]
    fn orbit_stabilizer(g in group()) {
        for orbit in g.orbits() {
            let h = g.point_stabilizer(orbit[0]);
            prop_assert_eq!(h.order() * orbit.len() as u128, g.order());
            prop_assert!(h.is_subgroup_of(&g));
            prop_assert!(h.generators().iter().all(|s| s.apply(orbit[0]) == orbit[0]));
        }
    }

    #[test]
    fn transitivity_hierarchy(g in group()) {
        let els = brute_elements(&g);
        let n = g.degree();
        // ordered pairs of distinct points, by brute force
        let pair_orbits = |k: usize| {
            let mut seen: HashSet<Vec<usize>> = HashSet::new();
            let mut count = 0;
            let points: Vec<Vec<usize>> = if k == 2 {
                (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| vec![a, b])).collect()
            } else {
                (0..n).flat_map(|a| (a + 1..n).map(move |b| vec![a, b])).collect()
            };
            for p in points {
                if seen.contains(&p) {
                    continue;
                }
                count += 1;
                for e in &els {
                    let mut q: Vec<usize> = p.iter().map(|&i| e[i]).collect();
                    if k == 1 {
                        q.sort();
                    }
                    seen.insert(q);
                }
            }
            count
        };
        prop_assert_eq!(g.is_2transitive().unwrap(), pair_orbits(2) == 1);
        prop_assert_eq!(g.is_2homogeneous().unwrap(), pair_orbits(1) == 1);
        if g.is_2transitive().unwrap() {
            prop_assert!(g.is_2homogeneous().unwrap() && g.is_transitive());
        }
        let sizes = g.set_orbit_sizes(2);
        prop_assert_eq!(sizes.iter().sum::<usize>(), n * (n - 1) / 2);
        prop_assert_eq!(sizes.len(), pair_orbits(1));
        if g.is_transitive() {
            prop_assert_eq!(g.orbital_count(), pair_orbits(2) + 1);
        }
    }

    #[test]
    fn blocks_are_invariant_partitions(g in group()) {
        prop_assume!(g.is_transitive());
        for system in g.block_systems().unwrap() {
            let block_of: Vec<usize> = {
                let mut b = vec![0; g.degree()];
                for (i, blk) in system.iter().enumerate() {
                    for &x in blk {
                        b[x] = i;
                    }
                }
                b
            };
            for s in g.generators() {
                for blk in &system {
                    let image: BTreeSet<usize> = blk.iter().map(|&x| block_of[s.apply(x)]).collect();
                    prop_assert_eq!(image.len(), 1);
                }
            }
        }
    }

    #[test]
    fn conjugation_preserves_structure(g in group(), pi in (2usize..=6).prop_flat_map(perm)) {
        prop_assume!(pi.degree() == g.degree());
        let h = g.conjugate(&pi);
        prop_assert_eq!(h.order(), g.order());
        prop_assert_eq!(h.is_transitive(), g.is_transitive());
        prop_assert_eq!(h.cycle_types(1_000_000).unwrap(), g.cycle_types(1_000_000).unwrap());
    }
}

#[test]
fn named_examples() {
    let c5 = PermutationGroup::from_cycles(5, &["(1 2 3 4 5)"]).unwrap();
    assert!(c5.is_transitive() && !c5.is_2transitive().unwrap() && !c5.is_2homogeneous().unwrap());
    assert_eq!(c5.ordered_pair_orbits(), 4);
    assert_eq!(c5.set_orbit_sizes(2).len(), 2);
    let f21 = PermutationGroup::from_cycles(7, &["(1 2 3 4 5 6 7)", "(2 3 5)(4 7 6)"]).unwrap();
    assert_eq!(f21.order(), 21);
    assert!(f21.is_2homogeneous().unwrap() && !f21.is_2transitive().unwrap());
    let s4 = PermutationGroup::symmetric(4);
    assert!(s4.is_2transitive().unwrap() && s4.is_2homogeneous().unwrap());
    let gens = parse_generators("(1,2,3,4);(1,2)", 4).unwrap();
    assert_eq!(PermutationGroup::new(4, gens).unwrap().order(), 24);
}
