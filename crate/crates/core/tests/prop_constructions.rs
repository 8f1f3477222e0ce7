use proptest::prelude::*;
use trireg::abelian::{additive_triples, cayley_graph};
use trireg::constructions::thm13::{case_tag, y_range, Mode, OuterFactor};
use trireg::constructions::{
    build_clique_product, clique_product_decompose, theorem13_generating_set, ConstructionError, Theorem13Params,
};
use trireg::graph::Regularity;

fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Every `c` reachable as `Σ C(d_i, 2)` over partitions of `r` into parts `d_i ≥ 1`.
fn reachable(r: u64) -> Vec<bool> {
    fn go(left: u64, max: u64, c: u64, out: &mut [bool]) {
        if left == 0 {
            out[c as usize] = true;
            return;
        }
        for d in (1..=max.min(left)).rev() {
            go(left - d, d, c + binom2(d), out);
        }
    }
    let mut out = vec![false; binom2(r) as usize + 1];
    go(r, r, 0, &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn clique_products_are_sound_and_complete(r in 1u64..18, frac in 0.0f64..=1.0) {
        let c = (frac * binom2(r) as f64).round() as u64;
        let plan = clique_product_decompose(r, c).unwrap();
        prop_assert_eq!(plan.is_some(), reachable(r)[c as usize]);
        if let Some(p) = plan {
            prop_assert_eq!(p.clique_sizes.iter().map(|a| a - 1).sum::<u64>(), r);
            prop_assert_eq!(p.clique_sizes.iter().map(|&a| binom2(a - 1)).sum::<u64>(), c);
        }
    }

    #[test]
    fn clique_product_graphs_verify(r in 1u64..9, frac in 0.0f64..=1.0) {
        let c = (frac * binom2(r) as f64).round() as u64;
        let Some(plan) = clique_product_decompose(r, c).unwrap() else { return Ok(()) };
        let s = build_clique_product(&plan).unwrap();
        match cayley_graph(&s).check_triangle_regular() {
            Regularity::Uniform(p) => prop_assert_eq!((p.r, p.c), (vec![r], vec![c])),
            Regularity::NonUniform { .. } => prop_assert!(false, "not uniform"),
        }
    }

    #[test]
    fn case_three_removed_sets_are_sum_free(r in 10u64..400, x_half in 0u64..100) {
        let x = (2 * x_half + 1).min(r);
        prop_assume!(x % 2 == 1 && matches!(case_tag(r, x), Ok(3)));
        match OuterFactor::new(r, x) {
            Ok(outer) => {
                let m = outer.modulus;
                for &a in &outer.removed {
                    for &b in &outer.removed {
                        prop_assert!(!outer.removed.contains(&((a + b) % m)));
                    }
                }
            }
            Err(ConstructionError::Parameters(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn strict_mode_hits_its_target(x in 1075u64..1101, pick in 0.0f64..=1.0) {
        let (lo, hi) = y_range(x).expect("window is nonempty at this scale");
        let y = lo + ((hi - lo) as f64 * pick) as u64;
        let built = match theorem13_generating_set(Theorem13Params { r: x, x, y }, Mode::Strict) {
            Ok(b) => b,
            Err(ConstructionError::NonIntegralTarget { .. } | ConstructionError::InnerUnreachable { .. }) => {
                return Err(TestCaseError::reject("parameters not accepted"));
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let target = binom2(x) + y - x * x / 2;
        prop_assert_eq!(built.target_c, target);
        prop_assert_eq!(built.achieved_c, target);
        prop_assert_eq!(additive_triples(&built.set).count, 2 * target);
        prop_assert_eq!(built.set.len() as u64, x);
    }
}
