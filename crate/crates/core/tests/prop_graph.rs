use proptest::prelude::*;
use trireg::graph::families::{complete, complete_bipartite, cycle, petersen};
use trireg::graph::{ColoredGraph, Edge, FlipVerdict, Regularity};

const T: usize = 2;

/// Adjacency matrix of colors, 0 for no edge.
fn matrix(g: &ColoredGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut m = vec![vec![0; n]; n];
    for e in g.edges() {
        m[e.u][e.v] = e.color;
        m[e.v][e.u] = e.color;
    }
    m
}

/// `(deg, nbhd)` per vertex by direct triple loops.
fn brute_profiles(g: &ColoredGraph) -> Vec<(Vec<u64>, Vec<u64>)> {
    let m = matrix(g);
    let n = m.len();
    let t = g.colors();
    (0..n)
        .map(|v| {
            let mut deg = vec![0; t];
            let mut nb = vec![0; t];
            for a in 0..n {
                if m[v][a] > 0 {
                    deg[m[v][a] - 1] += 1;
                }
                for b in a + 1..n {
                    if m[v][a] > 0 && m[v][b] > 0 && m[a][b] > 0 {
                        nb[m[a][b] - 1] += 1;
                    }
                }
            }
            (deg, nb)
        })
        .collect()
}

fn brute_uniform(g: &ColoredGraph) -> Option<(Vec<u64>, Vec<u64>)> {
    let p = brute_profiles(g);
    if p.is_empty() || p.iter().all(|x| *x == p[0]) {
        p.first().cloned().or(Some((vec![0; g.colors()], vec![0; g.colors()])))
    } else {
        None
    }
}

fn random_graph() -> impl Strategy<Value = ColoredGraph> {
    (1usize..7).prop_flat_map(|n| {
        proptest::collection::vec(0usize..=T, n * (n - 1) / 2).prop_map(move |cells| {
            let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
            let edges = pairs.zip(cells).filter(|(_, c)| *c > 0).map(|((a, b), c)| Edge::new(a, b, c));
            ColoredGraph::new(T, n, edges).unwrap()
        })
    })
}

fn uniform_graph() -> impl Strategy<Value = ColoredGraph> {
    (0usize..5, 1usize..=T, 2usize..6).prop_map(|(kind, color, size)| match kind {
        0 => complete(size, color, T),
        1 => cycle(size + 2, color, T),
        2 => complete_bipartite(size, color, T),
        3 => petersen().recolor(T, &[color]).unwrap(),
        _ => complete(size, 1, T).cartesian_product(&complete(size, 2, T)).unwrap(),
    })
}

fn any_graph() -> impl Strategy<Value = ColoredGraph> {
    prop_oneof![random_graph(), uniform_graph()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn profiles_match_brute_force(g in any_graph()) {
        let lib = g.triangle_profile();
        let brute = brute_profiles(&g);
        for (p, (deg, nb)) in lib.iter().zip(&brute) {
            prop_assert_eq!(&p.deg, deg);
            prop_assert_eq!(&p.nbhd, nb);
        }
        let uniform = match g.check_triangle_regular() {
            Regularity::Uniform(p) => Some((p.r, p.c)),
            Regularity::NonUniform { .. } => None,
        };
        prop_assert_eq!(uniform, brute_uniform(&g));
    }

    #[test]
    fn product_profiles_add(g in any_graph(), h in any_graph()) {
        let prod = g.cartesian_product(&h).unwrap();
        let got = brute_uniform(&prod);
        match (brute_uniform(&g), brute_uniform(&h)) {
            (Some((r1, c1)), Some((r2, c2))) => {
                let r: Vec<u64> = r1.iter().zip(&r2).map(|(a, b)| a + b).collect();
                let c: Vec<u64> = c1.iter().zip(&c2).map(|(a, b)| a + b).collect();
                prop_assert_eq!(got, Some((r, c)));
            }
            _ => prop_assert!(got.is_none()),
        }
    }

    #[test]
    fn neighborhood_sums_count_triangle_edges(g in any_graph()) {
        let m = matrix(&g);
        let mut per_color = [0u64; T];
        for [a, b, c] in g.triangles() {
            for (x, y) in [(a, b), (b, c), (a, c)] {
                per_color[m[x][y] - 1] += 1;
            }
        }
        let profile = g.triangle_profile();
        for (i, &count) in per_color.iter().enumerate() {
            prop_assert_eq!(profile.iter().map(|p| p.nbhd[i]).sum::<u64>(), count);
        }
    }

    #[test]
    fn flip_is_vacuous_for_one_color(g in random_graph()) {
        let mono = ColoredGraph::monochrome(g.vertex_count(), g.edges().iter().map(|e| (e.u, e.v))).unwrap();
        prop_assert_eq!(mono.check_flip(), FlipVerdict::Valid);
    }
}
