//! The convex supersaturation constraint for one color, its tangent cuts, and a cutting-plane loop.
//!
//! For color `i` with `B = C(r_i, 2)` and `A = C(r_i, 3)`:
//! `r_i · Σ_{T ∌ i} x_T ≥ A · (z/B) · (2z/B - 1)` where `z = Σ_{j ≠ i} x_{iij}`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::density::{triples, TriangleDensityVector};
use super::scalar::{q, Q};
use super::simplex::solve_feasibility;
use super::system::{Constraint, Feasibility, LinearSystem, Relation};

fn binom(n: u64, k: u32) -> Q {
    let mut acc = BigInt::from(1);
    for j in 0..k as u64 {
        if n < j {
            return Q::zero();
        }
        acc *= BigInt::from(n - j);
    }
    let fact: u64 = (1..=k as u64).product();
    Q::from_integer(acc / BigInt::from(fact))
}

struct Terms {
    /// Indices of triples avoiding color `i`.
    free: Vec<usize>,
    /// Indices of triples `{i, i, j}` with `j ≠ i`.
    pair: Vec<usize>,
    r: Q,
    a: Q,
    b: Q,
}

impl Terms {
    fn new(t: usize, r_i: u64, i: usize) -> Self {
        let ts = triples(t);
        let mult = |tri: &[usize; 3]| tri.iter().filter(|&&c| c == i).count();
        Terms {
            free: (0..ts.len()).filter(|&k| mult(&ts[k]) == 0).collect(),
            pair: (0..ts.len()).filter(|&k| mult(&ts[k]) == 2).collect(),
            r: q(r_i as i64),
            a: binom(r_i, 3),
            b: binom(r_i, 2),
        }
    }

    fn lhs(&self, x: &[Q]) -> Q {
        &self.r * self.free.iter().map(|&k| &x[k]).sum::<Q>()
    }

    fn z(&self, x: &[Q]) -> Q {
        self.pair.iter().map(|&k| &x[k]).sum()
    }

    fn f(&self, z: &Q) -> Q {
        &self.a * (z / &self.b) * (q(2) * z / &self.b - q(1))
    }

    fn df(&self, z: &Q) -> Q {
        &self.a * (q(4) * z / (&self.b * &self.b) - q(1) / &self.b)
    }
}

/// `LHS - RHS` for color `i` (1-based), or `None` when `r_i < 3` and the constraint is vacuous.
/// `x` holds the triple densities first; trailing entries are ignored.
pub fn supersaturation_slack(r: &[u64], x: &[Q], i: usize) -> Option<Q> {
    let r_i = r[i - 1];
    if r_i < 3 {
        return None;
    }
    let terms = Terms::new(r.len(), r_i, i);
    let z = terms.z(x);
    Some(terms.lhs(x) - terms.f(&z))
}

pub fn supersaturation_check(r: &[u64], x: &TriangleDensityVector, i: usize) -> Option<Q> {
    supersaturation_slack(r, &x.values, i)
}

/// Tangent of the convex right-hand side at `point`; implied by the constraint, and its value at
/// `point` equals the slack there.
pub fn supersaturation_cut(r: &[u64], point: &[Q], i: usize) -> Option<Constraint> {
    let r_i = r[i - 1];
    if r_i < 3 {
        return None;
    }
    let terms = Terms::new(r.len(), r_i, i);
    let z0 = terms.z(point);
    let slope = terms.df(&z0);
    let mut coeffs: Vec<(usize, Q)> = terms.free.iter().map(|&k| (k, terms.r.clone())).collect();
    coeffs.extend(terms.pair.iter().map(|&k| (k, -slope.clone())));
    let rhs = -(q(2) * &terms.a * &z0 * &z0 / (&terms.b * &terms.b));
    Some(Constraint::new(coeffs, Relation::Ge, rhs, format!("supersaturation {i} at z={z0}")))
}

#[derive(Debug, Clone, Serialize)]
pub struct Refutation {
    pub result: Feasibility,
    pub rounds: usize,
    pub cuts: usize,
}

/// Solve, then add a tangent cut for every violated color until the LP becomes infeasible, the
/// witness satisfies every supersaturation constraint, or `max_rounds` rounds have added cuts.
pub fn refute_with_cuts(sys: &LinearSystem, r: &[u64], cut_colors: &[usize], max_rounds: usize) -> Refutation {
    let mut sys = sys.clone();
    let mut cuts = 0;
    for round in 0..=max_rounds {
        let result = solve_feasibility(&sys);
        let Feasibility::Feasible { witness } = &result else {
            return Refutation { result, rounds: round, cuts };
        };
        let violated: Vec<Constraint> = cut_colors
            .iter()
            .filter(|&&i| supersaturation_slack(r, witness, i).is_some_and(|s| s < Q::zero()))
            .filter_map(|&i| supersaturation_cut(r, witness, i))
            .collect();
        if violated.is_empty() {
            return Refutation { result, rounds: round, cuts };
        }
        if round == max_rounds {
            return Refutation { result: Feasibility::Unknown { best_point: witness.clone() }, rounds: round, cuts };
        }
        cuts += violated.len();
        for c in violated {
            sys.push(c);
        }
    }
    unreachable!("loop returns by the final round")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::complete;
    use crate::lp::density::{build_system, graph_density_vector};
    use crate::lp::scalar::q_frac;

    #[test]
    fn k4_slack_is_zero() {
        let x = graph_density_vector(&complete(4, 1, 1));
        assert_eq!(supersaturation_check(&[3], &x, 1), Some(q(0)));
        assert_eq!(supersaturation_check(&[2], &x, 1), None);
    }

    #[test]
    fn half_density_zeroes_the_rhs() {
        // r = (3, 1): B = 3, z = 3/2 gives 2z/B - 1 = 0
        let ts = triples(2);
        let mut x = vec![Q::zero(); ts.len()];
        x[ts.iter().position(|t| *t == [1, 1, 2]).unwrap()] = q_frac(3, 2);
        x[ts.iter().position(|t| *t == [2, 2, 2]).unwrap()] = q(1);
        assert_eq!(supersaturation_slack(&[3, 1], &x, 1), Some(q(3)));
    }

    #[test]
    fn cut_value_equals_slack_and_is_tangent() {
        let r = [5, 2];
        let ts = triples(2);
        let point: Vec<Q> = (0..ts.len()).map(|k| q_frac(k as i64 + 1, 3)).collect();
        let cut = supersaturation_cut(&r, &point, 1).unwrap();
        let slack = supersaturation_slack(&r, &point, 1).unwrap();
        assert_eq!(cut.lhs(&point) - &cut.rhs, slack);
        // any other point: cut value ≤ true slack (tangent lies below the convex RHS)
        for shift in 0..6 {
            let other: Vec<Q> = (0..ts.len()).map(|k| q_frac((k as i64 * 7 + shift) % 5, 2)).collect();
            let cut_val = cut.lhs(&other) - &cut.rhs;
            assert!(cut_val >= supersaturation_slack(&r, &other, 1).unwrap());
        }
    }

    #[test]
    fn linear_infeasibility_ends_in_round_zero() {
        let sys = build_system(&[4], &[7]);
        let out = refute_with_cuts(&sys, &[4], &[1], 50);
        assert!(out.result.is_infeasible());
        assert_eq!(out.rounds, 0);
    }
}
