//! Triangle-type densities `x_{ijk}` and the linear system they must satisfy.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::scalar::{q, Q};
use super::system::{ser_qs, Constraint, LinearSystem, Relation};
use crate::graph::ColoredGraph;

/// Unordered color triples `i ≤ j ≤ k` over `1..=t`, in lexicographic order.
pub fn triples(t: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity((t + 2) * (t + 1) * t / 6);
    for i in 1..=t {
        for j in i..=t {
            for k in j..=t {
                out.push([i, j, k]);
            }
        }
    }
    out
}

pub fn triple_index(t: usize, mut tri: [usize; 3]) -> usize {
    tri.sort_unstable();
    triples(t).iter().position(|x| *x == tri).expect("colors in range")
}

fn multiplicity(tri: &[usize; 3], i: usize) -> i64 {
    tri.iter().filter(|&&c| c == i).count() as i64
}

pub fn triple_name(tri: &[usize; 3]) -> String {
    format!("x{}{}{}", tri[0], tri[1], tri[2])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleDensityVector {
    pub t: usize,
    /// Indexed like [`triples`].
    #[serde(serialize_with = "ser_qs")]
    pub values: Vec<Q>,
}

impl TriangleDensityVector {
    pub fn zero(t: usize) -> Self {
        TriangleDensityVector { t, values: vec![Q::zero(); triples(t).len()] }
    }

    pub fn get(&self, tri: [usize; 3]) -> &Q {
        &self.values[triple_index(self.t, tri)]
    }

    /// Densities add under Cartesian products (every triangle lies in one factor).
    pub fn add(&self, other: &TriangleDensityVector) -> TriangleDensityVector {
        assert_eq!(self.t, other.t);
        TriangleDensityVector { t: self.t, values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    /// `c[i] = Σ_T mult_i(T) x_T`.
    pub fn neighborhood_counts(&self) -> Vec<Q> {
        let ts = triples(self.t);
        (1..=self.t)
            .map(|i| ts.iter().zip(&self.values).map(|(tri, x)| x * q(multiplicity(tri, i))).sum())
            .collect()
    }
}

impl fmt::Display for TriangleDensityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            triples(self.t).iter().zip(&self.values).map(|(tri, x)| format!("{}={x}", triple_name(tri))).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Triangle counts by edge-color multiset, divided by the vertex count.
pub fn graph_density_vector(g: &ColoredGraph) -> TriangleDensityVector {
    let t = g.colors();
    let ts = triples(t);
    let mut counts = vec![0i64; ts.len()];
    for [a, b, c] in g.triangles() {
        let mut cols = [
            g.edge_color(a, b).expect("triangle edge"),
            g.edge_color(b, c).expect("triangle edge"),
            g.edge_color(a, c).expect("triangle edge"),
        ];
        cols.sort_unstable();
        counts[ts.binary_search(&cols).expect("sorted triple")] += 1;
    }
    let n = BigInt::from(g.vertex_count().max(1));
    TriangleDensityVector {
        t,
        values: counts.into_iter().map(|k| Q::new(BigInt::from(k), n.clone())).collect(),
    }
}

/// Density of a monochrome vertex-transitive graph with `c` neighborhood edges: `x_111 = c/3`.
pub fn monochrome_density(c: u64) -> TriangleDensityVector {
    TriangleDensityVector { t: 1, values: vec![Q::new(BigInt::from(c), BigInt::from(3))] }
}

fn binom2(r: u64) -> Q {
    Q::from_integer(BigInt::from(r) * BigInt::from(r.saturating_sub(1)) / 2)
}

/// The pair-budget rows for `i < j` and `i`, shared by the fixed and free-`c` systems.
fn degree_rows(sys: &mut LinearSystem, t: usize, r: &[u64]) {
    let ts = triples(t);
    for i in 1..=t {
        for j in i + 1..=t {
            let coeffs = ts
                .iter()
                .enumerate()
                .filter_map(|(k, tri)| {
                    let (mi, mj) = (multiplicity(tri, i), multiplicity(tri, j));
                    match (mi, mj) {
                        (1, 1) => Some((k, q(1))),
                        (2, 1) | (1, 2) => Some((k, q(2))),
                        _ => None,
                    }
                })
                .collect();
            let rhs = Q::from_integer(BigInt::from(r[i - 1]) * BigInt::from(r[j - 1]));
            sys.push(Constraint::new(coeffs, Relation::Le, rhs, format!("pairs {i},{j}")));
        }
    }
    for i in 1..=t {
        let coeffs = ts
            .iter()
            .enumerate()
            .filter_map(|(k, tri)| match multiplicity(tri, i) {
                2 => Some((k, q(1))),
                3 => Some((k, q(3))),
                _ => None,
            })
            .collect();
        sys.push(Constraint::new(coeffs, Relation::Le, binom2(r[i - 1]), format!("pairs {i},{i}")));
    }
}

fn neighborhood_coeffs(t: usize, i: usize) -> Vec<(usize, Q)> {
    triples(t).iter().enumerate().map(|(k, tri)| (k, q(multiplicity(tri, i)))).collect()
}

/// Variables `x_T` for every triple; pair budgets and the neighborhood equalities for fixed `c`.
pub fn build_system(r: &[u64], c: &[u64]) -> LinearSystem {
    assert_eq!(r.len(), c.len());
    let t = r.len();
    let mut sys = LinearSystem::new(triples(t).iter().map(triple_name).collect());
    degree_rows(&mut sys, t, r);
    for i in 1..=t {
        let rhs = Q::from_integer(BigInt::from(c[i - 1]));
        sys.push(Constraint::new(neighborhood_coeffs(t, i), Relation::Eq, rhs, format!("neighborhood {i}")));
    }
    sys
}

/// Same system with `c[i]` as extra variables `c1..ct` (after the triples).
pub fn build_system_free_c(r: &[u64]) -> LinearSystem {
    let t = r.len();
    let mut sys = LinearSystem::new(triples(t).iter().map(triple_name).collect());
    degree_rows(&mut sys, t, r);
    for i in 1..=t {
        let ci = sys.add_var(format!("c{i}"));
        let mut coeffs = neighborhood_coeffs(t, i);
        coeffs.push((ci, q(-1)));
        sys.push(Constraint::new(coeffs, Relation::Eq, Q::zero(), format!("neighborhood {i}")));
    }
    sys
}

/// Point for [`build_system_free_c`] from a density vector.
pub fn free_c_point(x: &TriangleDensityVector) -> Vec<Q> {
    let mut p = x.values.clone();
    p.extend(x.neighborhood_counts());
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, petersen};
    use crate::graph::Edge;
    use crate::lp::scalar::q_frac;
    use crate::lp::solve_feasibility;
    use crate::lp::Feasibility;

    #[test]
    fn sizes() {
        assert_eq!(triples(1).len(), 1);
        assert_eq!(triples(2).len(), 4);
        assert_eq!(triples(3).len(), 10);
        let s = build_system(&[4, 5], &[1, 2]);
        assert_eq!(s.var_count(), 4);
        let eqs = s.constraints.iter().filter(|c| c.relation == Relation::Eq).count();
        assert_eq!((eqs, s.constraints.len() - eqs), (2, 3));
    }

    #[test]
    fn densities() {
        assert_eq!(graph_density_vector(&complete(4, 1, 1)).values, vec![q(1)]);
        let tri = ColoredGraph::new(2, 3, [Edge::new(0, 1, 1), Edge::new(1, 2, 1), Edge::new(0, 2, 2)]).unwrap();
        let x = graph_density_vector(&tri);
        assert_eq!(x.get([1, 1, 2]), &q_frac(1, 3));
        assert!(graph_density_vector(&petersen()).values.iter().all(Zero::is_zero));
    }

    #[test]
    fn small_systems() {
        match solve_feasibility(&build_system(&[4], &[6])) {
            Feasibility::Feasible { witness } => assert_eq!(witness, vec![q(2)]),
            other => panic!("{other:?}"),
        }
        assert!(solve_feasibility(&build_system(&[4], &[7])).is_infeasible());
        let s = build_system(&[1, 6], &[1, 2]);
        let hand = vec![q(0), q(0), q(1), q(0)];
        assert!(s.satisfied_by(&hand));
        assert!(solve_feasibility(&s).is_feasible());
    }

    #[test]
    fn density_of_a_graph_satisfies_its_system() {
        let x = graph_density_vector(&complete(5, 1, 1));
        assert!(build_system(&[4], &[6]).satisfied_by(&x.values));
        assert!(build_system_free_c(&[4]).satisfied_by(&free_c_point(&x)));
    }
}
