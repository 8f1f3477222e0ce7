//! A triangle-regular graph from a feasible density vector: one small factor per color triple,
//! multiplied together and padded with complete bipartite factors up to the exact degrees.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::graph::families::{complete, complete_bipartite};
use crate::graph::{ColoredGraph, Edge, ProfileTerm};
use crate::lp::density::{graph_density_vector, triples, TriangleDensityVector};
use crate::lp::Q;

use super::clique::binom2;
use super::ConstructionError;

/// Products up to this many vertices are materialized and re-verified as a whole.
pub const MATERIALIZE_CAP: u128 = 20_000;

#[derive(Debug, Clone, Serialize)]
pub struct LpBuild {
    pub t: usize,
    pub factors: Vec<ProfileTerm>,
    pub profile: ProfileTerm,
    pub vertex_count: u128,
    /// Sum of the factor densities, which is the density of the product.
    pub density: TriangleDensityVector,
    /// `c'[i] / c[i]`, absent when `c[i] = 0`.
    pub ratios: Vec<Option<f64>>,
    /// `⌊c[i] / 8t³⌋ ≤ c'[i] ≤ c[i]` for every color.
    pub guarantee_met: bool,
    #[serde(skip)]
    pub graph: Option<ColoredGraph>,
}

fn floor(x: &Q) -> u64 {
    x.floor().to_integer().to_u64().unwrap_or(u64::MAX)
}

/// Four parts of size `p`: `b` on A-B and C-D, `c` on A-C and B-D, and an `e`-regular `a` on A-D and B-C.
fn four_part(p: usize, e: usize, [a, b, c]: [usize; 3], t: usize) -> ColoredGraph {
    let part = |k: usize, v: usize| k * p + v;
    let mut edges = Vec::new();
    for (x, y, col) in [(0, 1, b), (2, 3, b), (0, 2, c), (1, 3, c)] {
        for u in 0..p {
            for v in 0..p {
                edges.push(Edge::new(part(x, u), part(y, v), col));
            }
        }
    }
    for (x, y) in [(0, 3), (1, 2)] {
        for u in 0..p {
            for k in 0..e {
                edges.push(Edge::new(part(x, u), part(y, (u + k) % p), a));
            }
        }
    }
    ColoredGraph::new(t, 4 * p, edges).expect("four-part factor is simple")
}

fn triple_factor(tri: [usize; 3], x: &Q, r: &[u64], t: usize) -> Option<(ColoredGraph, String)> {
    let d = |i: usize| r[i - 1] / (t * t) as u64;
    if tri[0] == tri[2] {
        let i = tri[0];
        // largest y with C(y-1, 2) ≤ 3 x_iii, the clique's share of c[i]
        let budget = x * Q::from_integer(BigInt::from(3));
        let mut y = 2u64;
        while Q::from_integer(BigInt::from(binom2(y))) <= budget {
            y += 1;
        }
        let m = y.min(d(i) + 1) as usize;
        return (m >= 2).then(|| (complete(m, i, t), format!("K_{m} in color {i}")));
    }
    let mut cols = tri;
    cols.sort_by_key(|&i| (r[i - 1], i));
    let [a, b, c] = cols;
    if d(a) == 0 {
        return None;
    }
    let y = floor(&(x / Q::from_integer(BigInt::from(2 * d(a)))));
    let mut p = y.min(d(b));
    if tri[0] == tri[1] || tri[1] == tri[2] {
        p /= 2;
    }
    let e = d(a).min(p);
    if e == 0 {
        return None;
    }
    let name = format!("four-part {}{}{} p={p} e={e}", tri[0], tri[1], tri[2]);
    Some((four_part(p as usize, e as usize, [a, b, c], t), name))
}

pub fn lp_to_graph(r: &[u64], c: &[u64], x: &TriangleDensityVector) -> Result<LpBuild, ConstructionError> {
    let t = r.len();
    if t == 0 || c.len() != t || x.t != t {
        return Err(ConstructionError::Parameters("r, c and x must share the color count".into()));
    }
    let t3 = 8 * (t as u64).pow(3);
    let t2 = (t * t) as u64;
    if let Some(i) = (0..t).find(|&i| r[i] < t2 && c[i] >= t3) {
        return Err(ConstructionError::DegreeTooSmall { color: i + 1, degree: r[i], t_squared: t2 });
    }
    let mut graphs = Vec::new();
    for (tri, v) in triples(t).into_iter().zip(&x.values) {
        if v.is_zero() {
            continue;
        }
        if let Some(g) = triple_factor(tri, v, r, t) {
            graphs.push(g);
        }
    }
    let mut degrees = vec![0u64; t];
    let mut factors = Vec::new();
    let mut density = TriangleDensityVector::zero(t);
    for (g, name) in &graphs {
        let p = ProfileTerm::of_graph(g, name.clone()).ok_or_else(|| ConstructionError::Unverified(name.clone()))?;
        degrees.iter_mut().zip(&p.r).for_each(|(a, b)| *a += b);
        density = density.add(&graph_density_vector(g));
        factors.push(p);
    }
    if let Some(i) = (0..t).find(|&i| degrees[i] > r[i]) {
        return Err(ConstructionError::Unverified(format!("color {} reaches degree {} > {}", i + 1, degrees[i], r[i])));
    }
    let mut padded = graphs;
    for i in 0..t {
        let m = (r[i] - degrees[i]) as usize;
        if m > 0 {
            let g = complete_bipartite(m, i + 1, t);
            factors.push(ProfileTerm::new(
                (0..t).map(|j| if j == i { m as u64 } else { 0 }).collect(),
                vec![0; t],
                format!("K_{{{m},{m}}} in color {}", i + 1),
            ));
            padded.push((g, String::new()));
        }
    }
    let profile = ProfileTerm::sum(t, &factors);
    let vertex_count: u128 = padded.iter().map(|(g, _)| g.vertex_count() as u128).product();
    let graph = if vertex_count <= MATERIALIZE_CAP {
        let mut acc = complete(1, 1, t);
        for (g, _) in &padded {
            acc = acc.cartesian_product(g)?;
        }
        let whole = ProfileTerm::of_graph(&acc, "").ok_or_else(|| ConstructionError::Unverified("product".into()))?;
        if whole.r != profile.r || whole.c != profile.c {
            return Err(ConstructionError::Unverified("product profile differs from the factor sum".into()));
        }
        Some(acc)
    } else {
        None
    };
    let ratios = profile.c.iter().zip(c).map(|(a, b)| (*b > 0).then(|| *a as f64 / *b as f64)).collect();
    let guarantee_met = profile.c.iter().zip(c).all(|(a, b)| b.div_floor(&t3) <= *a && a <= b);
    Ok(LpBuild { t, factors, profile, vertex_count, density, ratios, guarantee_met, graph })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::density::build_system;
    use crate::lp::scalar::q;
    use crate::lp::supersat::supersaturation_check;

    fn x(t: usize, v: Vec<Q>) -> TriangleDensityVector {
        TriangleDensityVector { t, values: v }
    }

    #[test]
    fn full_clique() {
        let b = lp_to_graph(&[4], &[6], &x(1, vec![q(2)])).unwrap();
        assert_eq!((b.profile.r.clone(), b.profile.c.clone()), (vec![4], vec![6]));
        assert_eq!(b.vertex_count, 5);
        assert!(b.guarantee_met);
    }

    #[test]
    fn zero_density_pads_only() {
        let b = lp_to_graph(&[4, 5], &[0, 0], &TriangleDensityVector::zero(2)).unwrap();
        assert_eq!(b.profile.c, vec![0, 0]);
        assert_eq!(b.profile.r, vec![4, 5]);
        assert!(b.graph.is_some());
    }

    #[test]
    fn hand_point_builds_a_valid_graph() {
        let b = lp_to_graph(&[1, 6], &[1, 2], &x(2, vec![q(0), q(0), q(1), q(0)])).unwrap();
        assert_eq!(b.profile.r, vec![1, 6]);
        assert!(b.profile.c[0] <= 1 && b.profile.c[1] <= 2);
        assert!(b.guarantee_met);
    }

    #[test]
    fn mixed_triples_are_regular_and_feasible() {
        let r = [40, 50, 60];
        let mut v = vec![q(0); 10];
        v[triples(3).iter().position(|t| *t == [1, 2, 3]).unwrap()] = q(60);
        v[triples(3).iter().position(|t| *t == [1, 1, 3]).unwrap()] = q(80);
        v[triples(3).iter().position(|t| *t == [2, 2, 2]).unwrap()] = q(20);
        let xs = x(3, v);
        let c: Vec<u64> = xs.neighborhood_counts().iter().map(floor).collect();
        let b = lp_to_graph(&r, &c, &xs).unwrap();
        assert_eq!(b.profile.r, r.to_vec());
        assert!(b.guarantee_met, "{:?} vs {c:?}", b.profile.c);
        assert!(build_system(&r, &b.profile.c).satisfied_by(&b.density.values));
        for i in 1..=3 {
            assert!(supersaturation_check(&r, &b.density, i).unwrap() >= q(0));
        }
    }

    #[test]
    fn collapsed_colors_are_refused() {
        let err = lp_to_graph(&[3, 9], &[64, 0], &TriangleDensityVector::zero(2)).unwrap_err();
        assert!(matches!(err, ConstructionError::DegreeTooSmall { color: 1, .. }));
    }
}
