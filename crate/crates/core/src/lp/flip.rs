//! Flip-sequence systems at fixed degree vectors and bounded scans over them.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::density::{build_system_free_c, free_c_point, triples, TriangleDensityVector};
use super::scalar::{q, Q};
use super::simplex::solve_feasibility;
use super::supersat::refute_with_cuts;
use super::system::{Constraint, Feasibility, LinearSystem, Relation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("flip constraints need the neighborhood counts c1..c{0} as variables")]
    FixedNeighborhoods(usize),
    #[error("flip scans need 2 <= t <= 6, got {0}")]
    ColorCount(usize),
}

/// Degree order `r[i] + 1 ≤ r[i+1]` as constant rows, and closed counts
/// `r[i] + c[i] ≥ r[i+1] + c[i+1] + 1` over the variables `c1..ct`.
pub fn add_flip_constraints(sys: &mut LinearSystem, r: &[u64]) -> Result<(), LpError> {
    let t = r.len();
    let cols: Option<Vec<usize>> = (1..=t).map(|i| sys.index_of(&format!("c{i}"))).collect();
    let cols = cols.ok_or(LpError::FixedNeighborhoods(t))?;
    for i in 0..t.saturating_sub(1) {
        let (a, b) = (r[i] as i64, r[i + 1] as i64);
        sys.push(Constraint::new(vec![], Relation::Le, q(b - a - 1), format!("degree order {},{}", i + 1, i + 2)));
        sys.push(Constraint::new(
            vec![(cols[i], q(1)), (cols[i + 1], q(-1))],
            Relation::Ge,
            q(b - a + 1),
            format!("closed order {},{}", i + 1, i + 2),
        ));
    }
    Ok(())
}

pub fn flip_system(r: &[u64]) -> LinearSystem {
    let mut sys = build_system_free_c(r);
    add_flip_constraints(&mut sys, r).expect("free-c system has c variables");
    sys
}

/// Decides one fixed degree vector, with tangent cuts on every color when `cuts` is set.
pub fn decide_flip(r: &[u64], cuts: bool, max_rounds: usize) -> Feasibility {
    let sys = flip_system(r);
    if cuts {
        let colors: Vec<usize> = (1..=r.len()).collect();
        refute_with_cuts(&sys, r, &colors, max_rounds).result
    } else {
        solve_feasibility(&sys)
    }
}

/// Strictly increasing vectors with `r[1] ≤ r1_max` and `r[t] ≤ rt_max`.
pub fn increasing_vectors(t: usize, r1_max: u64, rt_max: u64) -> Vec<Vec<u64>> {
    fn rec(t: usize, lo: u64, rt_max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for v in lo..=rt_max {
            cur.push(v);
            rec(t, v + 1, rt_max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for r1 in 0..=r1_max.min(rt_max) {
        rec(t, r1 + 1, rt_max, &mut vec![r1], &mut out);
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub r: Vec<u64>,
    pub result: Feasibility,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct R1Tally {
    pub r1: u64,
    pub feasible: usize,
    pub infeasible: usize,
    pub unknown: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FlipScanReport {
    pub t: usize,
    pub r1_max: u64,
    pub rt_max: u64,
    pub cuts: bool,
    pub total: usize,
    pub infeasible: usize,
    pub by_r1: Vec<R1Tally>,
    /// Every non-infeasible row, with its witness or best point.
    pub exceptions: Vec<ScanRow>,
}

impl FlipScanReport {
    pub fn all_infeasible(&self) -> bool {
        self.infeasible == self.total
    }
}

pub fn flip_bounded_scan(t: usize, r1_max: u64, rt_max: u64, cuts: bool) -> Result<FlipScanReport, LpError> {
    if !(2..=6).contains(&t) {
        return Err(LpError::ColorCount(t));
    }
    let vectors = increasing_vectors(t, r1_max, rt_max);
    let results: Vec<Feasibility> = vectors.par_iter().map(|r| decide_flip(r, cuts, 50)).collect();
    let mut by_r1: Vec<R1Tally> = (0..=r1_max).map(|r1| R1Tally { r1, ..Default::default() }).collect();
    let mut exceptions = Vec::new();
    for (r, result) in vectors.iter().zip(results) {
        let tally = &mut by_r1[r[0] as usize];
        match result {
            Feasibility::Infeasible { .. } => tally.infeasible += 1,
            Feasibility::Feasible { .. } => tally.feasible += 1,
            Feasibility::Unknown { .. } => tally.unknown += 1,
        }
        if !result.is_infeasible() {
            exceptions.push(ScanRow { r: r.clone(), result });
        }
    }
    let infeasible = by_r1.iter().map(|x| x.infeasible).sum();
    Ok(FlipScanReport { t, r1_max, rt_max, cuts, total: vectors.len(), infeasible, by_r1, exceptions })
}

/// A degree vector realized by a construction, with the density vector of the realizing graph.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessRow {
    pub r: Vec<u64>,
    pub c: Vec<u64>,
    pub source: String,
    pub witness: TriangleDensityVector,
    /// The density vector (with its `c`) satisfies the flip system exactly.
    pub witness_checks: bool,
    pub solver: &'static str,
}

pub fn witness_row(r: &[u64], c: &[u64], x: TriangleDensityVector, source: impl Into<String>) -> WitnessRow {
    let sys = flip_system(r);
    let point = free_c_point(&x);
    let c_matches = point[triples(r.len()).len()..].iter().zip(c).all(|(a, b)| *a == Q::from_integer(BigInt::from(*b)));
    WitnessRow {
        r: r.to_vec(),
        c: c.to_vec(),
        source: source.into(),
        witness_checks: c_matches && sys.satisfied_by(&point),
        solver: solve_feasibility(&sys).label(),
        witness: x,
    }
}

/// Whether the bounded data agree with the claim that no flip vector has `r[1] ≤ bound`,
/// for the two candidate bounds `7 - t` and `6 - t`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundTabulation {
    pub t: usize,
    pub bound_7_minus_t: u64,
    pub bound_6_minus_t: u64,
    pub scan_feasible_r1: Vec<u64>,
    pub construction_r1: Vec<u64>,
    pub consistent_with_7_minus_t: bool,
    pub consistent_with_6_minus_t: bool,
}

pub fn tabulate_bounds(scan: &FlipScanReport, constructions: &[WitnessRow]) -> BoundTabulation {
    let t = scan.t;
    let scan_feasible_r1: Vec<u64> = scan.by_r1.iter().filter(|x| x.feasible > 0).map(|x| x.r1).collect();
    let construction_r1: Vec<u64> =
        constructions.iter().filter(|w| w.witness_checks).map(|w| w.r[0]).collect();
    let b7 = (7 - t) as u64;
    let b6 = b7.saturating_sub(1);
    let ok = |b: u64| scan_feasible_r1.iter().chain(&construction_r1).all(|&r1| r1 > b);
    BoundTabulation {
        t,
        bound_7_minus_t: b7,
        bound_6_minus_t: b6,
        consistent_with_7_minus_t: ok(b7),
        consistent_with_6_minus_t: ok(b6),
        scan_feasible_r1,
        construction_r1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::density::build_system;

    #[test]
    fn fixed_c_is_rejected() {
        let mut sys = build_system(&[1, 2], &[0, 0]);
        assert_eq!(add_flip_constraints(&mut sys, &[1, 2]), Err(LpError::FixedNeighborhoods(2)));
    }

    #[test]
    fn r1_one_is_forced_infeasible() {
        for a2 in 2..=12 {
            assert!(decide_flip(&[1, a2], false, 0).is_infeasible(), "a2={a2}");
        }
    }

    #[test]
    fn non_increasing_degrees_are_infeasible() {
        assert!(decide_flip(&[3, 3], false, 0).is_infeasible());
    }

    #[test]
    fn vector_enumeration() {
        let v = increasing_vectors(3, 1, 4);
        // r1 = 0: C(4,2) choices; r1 = 1: C(3,2)
        assert_eq!(v.len(), 6 + 3);
        assert!(v.iter().all(|r| r[0] < r[1] && r[1] < r[2] && r[2] <= 4));
    }

    #[test]
    fn k4_box_k44_is_a_witness() {
        use crate::graph::families::{complete, complete_bipartite};
        use crate::lp::density::graph_density_vector;
        let x = graph_density_vector(&complete(4, 1, 2)).add(&graph_density_vector(&complete_bipartite(4, 2, 2)));
        let row = witness_row(&[3, 4], &[3, 0], x, "K_4 □ K_{4,4}");
        assert!(row.witness_checks);
        assert_eq!(row.solver, "feasible");
    }
}
