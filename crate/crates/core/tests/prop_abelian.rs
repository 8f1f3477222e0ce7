use std::collections::HashSet;

use num_rational::Rational64;
use proptest::prelude::*;
use trireg::abelian::fourier::{phase_turns, spectrum_summary};
use trireg::abelian::{
    approx_subgroup, cayley_graph, dft_indicator, enumerate_subgroups, groups_of_order, max_nontrivial_coefficient,
    subgroup_closure, AbelianGroup, GroupElement, SymmetricSet,
};
use trireg::graph::Regularity;

fn all_groups(max_order: u32) -> Vec<AbelianGroup> {
    (2..=max_order).flat_map(groups_of_order).collect()
}

/// A group of order at most 30 and a symmetric set picked by orbit bits.
fn group_and_set() -> impl Strategy<Value = SymmetricSet> {
    let groups = all_groups(30);
    (0..groups.len(), any::<u64>()).prop_map(move |(i, bits)| {
        let g = groups[i].clone();
        let elems: Vec<GroupElement> = g.elements().collect();
        let mut members = Vec::new();
        for (k, x) in elems.iter().enumerate().skip(1) {
            let neg = g.neg(x);
            let j = g.index_of(&neg);
            if k <= j && bits >> (k % 64) & 1 == 1 {
                members.push(x.clone());
                members.push(neg);
            }
        }
        SymmetricSet::new(g, members).unwrap()
    })
}

fn brute_triples(s: &SymmetricSet) -> u64 {
    let g = s.group();
    let members: HashSet<&GroupElement> = s.members().iter().collect();
    let mut n = 0;
    for a in s.members() {
        for b in s.members() {
            if members.contains(&g.add(a, b)) {
                n += 1;
            }
        }
    }
    n
}

fn is_subgroup(g: &AbelianGroup, h: &[GroupElement]) -> bool {
    h.contains(&g.zero()) && h.iter().all(|a| h.contains(&g.neg(a)) && h.iter().all(|b| h.contains(&g.add(a, b))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn spectrum_is_real_and_satisfies_plancherel(s in group_and_set()) {
        let summary = spectrum_summary(&dft_indicator(&s));
        prop_assert!(summary.max_imaginary <= 1e-9);
        prop_assert!((summary.plancherel_mean - s.len() as f64).abs() <= 1e-9);
    }

    #[test]
    fn cayley_graph_profile_matches_triple_count(s in group_and_set()) {
        let count = brute_triples(&s);
        prop_assert_eq!(count % 2, 0);
        match cayley_graph(&s).check_triangle_regular() {
            Regularity::Uniform(p) => {
                prop_assert_eq!(p.r, vec![s.len() as u64]);
                prop_assert_eq!(p.c, vec![count / 2]);
            }
            Regularity::NonUniform { .. } => prop_assert!(false, "Cayley graphs are vertex-transitive"),
        }
    }

    #[test]
    fn closure_is_the_smallest_subgroup(g_index in 0usize..all_groups(24).len(), bits in any::<u32>()) {
        let g = all_groups(24)[g_index].clone();
        let seed: Vec<GroupElement> = g.elements().enumerate().filter(|(k, _)| bits >> (k % 32) & 1 == 1 && k % 3 == 0).map(|(_, x)| x).collect();
        let closure = subgroup_closure(&g, &seed);
        prop_assert!(is_subgroup(&g, &closure));
        prop_assert!(seed.iter().all(|x| closure.contains(x)));
        let subgroups = enumerate_subgroups(&g, 1 << 16).unwrap();
        let containing: Vec<&Vec<GroupElement>> = subgroups.iter().filter(|h| seed.iter().all(|x| h.contains(x))).collect();
        let meet: Vec<GroupElement> = g.elements().filter(|x| containing.iter().all(|h| h.contains(x))).collect();
        let mut sorted = closure.clone();
        sorted.sort();
        prop_assert_eq!(sorted, meet);
    }

    #[test]
    fn subgroups_are_fixed_points(g_index in 0usize..all_groups(40).len(), pick in any::<usize>()) {
        let g = all_groups(40)[g_index].clone();
        let big: Vec<Vec<GroupElement>> = enumerate_subgroups(&g, 1 << 16).unwrap().into_iter().filter(|h| h.len() >= 7).collect();
        prop_assume!(!big.is_empty());
        let h = &big[pick % big.len()];
        let s = SymmetricSet::new(g.clone(), h.iter().filter(|x| !g.is_zero(x)).cloned()).unwrap();
        let a = approx_subgroup(&s);
        let mut got = a.subgroup.clone();
        got.sort();
        let mut want = h.clone();
        want.sort();
        prop_assert_eq!(got, want);
        prop_assert_eq!(a.overlap_ratio, Rational64::from_integer(1));
    }
}

/// Index-two subgroup of a group whose moduli are all even: kernel of `x -> Σ c_j x_j mod 2`.
fn index_two(g: &AbelianGroup, c: &[u32]) -> SymmetricSet {
    let members = g.elements().filter(|x| !g.is_zero(x) && x.0.iter().zip(c).map(|(a, b)| a * b).sum::<u32>() % 2 == 0);
    SymmetricSet::new(g.clone(), members).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn large_subgroup_like_sets_have_a_positive_character(shape in 0usize..3, c_bits in 1u32..(1 << 7)) {
        let moduli = [vec![2; 13], [vec![4], vec![2; 11]].concat(), [vec![4; 6], vec![2]].concat()][shape].clone();
        let g = AbelianGroup::new(moduli).unwrap();
        let c: Vec<u32> = (0..g.rank()).map(|j| c_bits >> (j % 7) & 1).collect();
        let s = index_two(&g, &c);
        let size = s.len() as i64;
        let order = g.order().unwrap() as i64;
        // smallest epsilon for which the triple hypothesis holds
        let count = brute_triples(&s) as i64;
        let eps = (Rational64::from_integer(1) - Rational64::new(count, size * size)) / 10;
        prop_assume!(Rational64::from_integer(size) < (Rational64::from_integer(1) - eps * 20000) * order);
        let chi = max_nontrivial_coefficient(&s).unwrap().character;
        let positive = s
            .members()
            .iter()
            .filter(|x| (2.0 * std::f64::consts::PI * rational_to_f64(phase_turns(&g, &chi, x))).cos() > 0.0)
            .count();
        prop_assert!(positive * 1000 >= 999 * s.len());
    }
}

fn rational_to_f64(q: Rational64) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}
