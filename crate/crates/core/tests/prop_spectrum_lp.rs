mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use trireg::abelian::{cayley_graph, AbelianGroup, SymmetricSet};
use trireg::constructions::{build_clique_product, clique_product_decompose};
use trireg::graph::families::{complete, complete_bipartite, cycle, petersen};
use trireg::graph::{ColoredGraph, Regularity};
use trireg::lp::density::{build_system, graph_density_vector};
use trireg::lp::scalar::q;
use trireg::lp::{solve_feasibility, supersaturation_check, Feasibility, LinearSystem};
use trireg::spectrum::{enumerate_symmetric_sets, spectrum_for_r};

use common::{binom2, refutes, satisfies};

fn check_verdict(sys: &LinearSystem, f: &Feasibility) -> bool {
    match f {
        Feasibility::Feasible { witness } => satisfies(sys, witness),
        Feasibility::Infeasible { certificate } => refutes(sys, certificate),
        Feasibility::Unknown { .. } => true,
    }
}

/// Small graphs with a verified profile, one or two colors.
fn constructed() -> impl Strategy<Value = ColoredGraph> {
    (0usize..6, 2usize..6, 1u64..8, 0.0f64..=1.0).prop_map(|(kind, size, r, frac)| match kind {
        0 => complete(size, 1, 2).cartesian_product(&complete_bipartite(size, 2, 2)).unwrap(),
        1 => cycle(size + 2, 1, 1),
        2 => petersen().cartesian_product(&complete(size, 1, 1)).unwrap(),
        3 => complete(size, 2, 2).cartesian_product(&complete(size + 1, 1, 2)).unwrap(),
        _ => {
            let c = (frac * binom2(r) as f64).round() as u64;
            match clique_product_decompose(r, c).unwrap() {
                Some(plan) => cayley_graph(&build_clique_product(&plan).unwrap()),
                None => complete(r as usize + 1, 1, 1),
            }
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn lp_verdicts_carry_exact_evidence(r1 in 0u64..12, r2 in 0u64..12, c1 in 0u64..80, c2 in 0u64..80, two in any::<bool>()) {
        let (r, c) = if two { (vec![r1, r2], vec![c1, c2]) } else { (vec![r1], vec![c1]) };
        let sys = build_system(&r, &c);
        let f = solve_feasibility(&sys);
        let decided = !matches!(f, Feasibility::Unknown { .. });
        prop_assert!(decided);
        prop_assert!(check_verdict(&sys, &f));
    }

    #[test]
    fn one_color_is_feasible_exactly_up_to_the_pair_budget(r in 0u64..=30, c in 0u64..=480) {
        let f = solve_feasibility(&build_system(&[r], &[c]));
        prop_assert_eq!(f.is_feasible(), c <= binom2(r));
    }

    #[test]
    fn constructed_graphs_satisfy_their_systems(g in constructed()) {
        let Regularity::Uniform(p) = g.check_triangle_regular() else { return Err(TestCaseError::fail("not uniform")) };
        let x = graph_density_vector(&g);
        prop_assert!(satisfies(&build_system(&p.r, &p.c), &x.values));
        for i in 0..p.r.len() {
            if p.r[i] >= 3 {
                let slack = supersaturation_check(&p.r, &x, i + 1).expect("defined for r >= 3");
                prop_assert!(slack >= q(0), "color {}: slack {}", i + 1, slack);
            }
        }
    }

    #[test]
    fn spectrum_records_reverify(r in 1u32..6, max_order in 4u32..16) {
        let records = spectrum_for_r(r, max_order);
        prop_assert!(max_order <= r || !records.is_empty());
        for rec in records {
            let s = rec.set().unwrap();
            prop_assert_eq!(s.len() as u64, rec.r);
            match cayley_graph(&s).check_triangle_regular() {
                Regularity::Uniform(p) => prop_assert_eq!((p.r, p.c), (vec![rec.r], vec![rec.c])),
                Regularity::NonUniform { .. } => prop_assert!(false, "record does not verify"),
            }
        }
    }

    #[test]
    fn spectrum_grows_with_the_order_cap(r in 1u32..6, m1 in 4u32..14, extra in 0u32..6) {
        let small: BTreeSet<u64> = spectrum_for_r(r, m1).iter().map(|x| x.c).collect();
        let large: BTreeSet<u64> = spectrum_for_r(r, m1 + extra).iter().map(|x| x.c).collect();
        prop_assert!(small.is_subset(&large));
    }
}

#[test]
fn symmetric_subset_counts_match_the_powerset() {
    for n in 2u32..=12 {
        let g = AbelianGroup::cyclic(n);
        let got = enumerate_symmetric_sets(&g, 64).unwrap().len();
        let brute = (0u32..1 << (n - 1))
            .filter(|mask| {
                let members: Vec<u32> = (1..n).filter(|x| mask >> (x - 1) & 1 == 1).collect();
                SymmetricSet::cyclic(n, &members).is_ok()
            })
            .count();
        let formula = 1usize << ((n as usize - 1) / 2 + usize::from(n % 2 == 0));
        assert_eq!((got, brute), (formula, formula), "n = {n}");
    }
}
