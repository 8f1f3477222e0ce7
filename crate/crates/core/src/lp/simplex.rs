//! Phase-one simplex with Bland's rule. Infeasibility comes with the phase-one duals as a Farkas certificate.

use super::scalar::{Scalar, Small, Q};
use super::system::{Feasibility, LinearSystem, Relation};

/// Decides feasibility exactly. Tries 128-bit rationals first and repeats in
/// arbitrary precision if any intermediate value overflows.
pub fn solve_feasibility(sys: &LinearSystem) -> Feasibility {
    let result = run::<Small>(sys).unwrap_or_else(|| run::<Q>(sys).expect("arbitrary precision cannot overflow"));
    match &result {
        Feasibility::Feasible { witness } => assert!(sys.satisfied_by(witness), "simplex witness failed re-check"),
        Feasibility::Infeasible { certificate } => {
            assert!(sys.certificate_refutes(certificate), "Farkas certificate failed re-check")
        }
        Feasibility::Unknown { .. } => {}
    }
    result
}

struct Tableau<S> {
    rows: Vec<Vec<S>>,
    obj: Vec<S>,
    basis: Vec<usize>,
    width: usize,
}

impl<S: Scalar> Tableau<S> {
    fn rhs(&self) -> usize {
        self.width
    }

    fn pivot(&mut self, r: usize, e: usize) -> Option<()> {
        let p = self.rows[r][e].clone();
        if !Scalar::is_zero(&S::one().sub(&p)?) {
            for v in self.rows[r].iter_mut() {
                if !Scalar::is_zero(v) {
                    *v = v.div(&p)?;
                }
            }
        }
        let pivot_row = self.rows[r].clone();
        let nz: Vec<usize> = (0..=self.width).filter(|&j| !Scalar::is_zero(&pivot_row[j])).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || Scalar::is_zero(&row[e]) {
                continue;
            }
            let f = row[e].clone();
            for &j in &nz {
                row[j] = row[j].sub(&f.mul(&pivot_row[j])?)?;
            }
        }
        if !Scalar::is_zero(&self.obj[e]) {
            let f = self.obj[e].clone();
            for &j in &nz {
                self.obj[j] = self.obj[j].sub(&f.mul(&pivot_row[j])?)?;
            }
        }
        self.basis[r] = e;
        Some(())
    }
}

fn run<S: Scalar>(sys: &LinearSystem) -> Option<Feasibility> {
    let n = sys.var_count();
    let m = sys.constraints.len();
    // Normalize so every right-hand side is nonnegative.
    let mut sign = vec![1i8; m];
    let mut rel = Vec::with_capacity(m);
    for (i, c) in sys.constraints.iter().enumerate() {
        let flip = c.rhs < Q::from_integer(0.into());
        sign[i] = if flip { -1 } else { 1 };
        rel.push(match (c.relation, flip) {
            (Relation::Le, true) => Relation::Ge,
            (Relation::Ge, true) => Relation::Le,
            (r, _) => r,
        });
    }
    let slack_count = rel.iter().filter(|r| **r != Relation::Eq).count();
    let art_count = rel.iter().filter(|r| **r != Relation::Le).count();
    let width = n + slack_count + art_count;
    let mut rows = vec![vec![S::zero(); width + 1]; m];
    let mut basis = vec![0usize; m];
    let mut initial = vec![0usize; m];
    let mut is_art = vec![false; width];
    let (mut next_slack, mut next_art) = (n, n + slack_count);
    for (i, c) in sys.constraints.iter().enumerate() {
        let s = if sign[i] < 0 { Q::from_integer((-1).into()) } else { Q::from_integer(1.into()) };
        for (j, a) in &c.coeffs {
            rows[i][*j] = rows[i][*j].add(&S::from_q(&(a * &s))?)?;
        }
        rows[i][width] = S::from_q(&(&c.rhs * &s))?;
        match rel[i] {
            Relation::Le => {
                rows[i][next_slack] = S::one();
                basis[i] = next_slack;
                next_slack += 1;
            }
            Relation::Ge => {
                rows[i][next_slack] = S::zero().sub(&S::one())?;
                next_slack += 1;
                rows[i][next_art] = S::one();
                is_art[next_art] = true;
                basis[i] = next_art;
                next_art += 1;
            }
            Relation::Eq => {
                rows[i][next_art] = S::one();
                is_art[next_art] = true;
                basis[i] = next_art;
                next_art += 1;
            }
        }
        initial[i] = basis[i];
    }
    // Phase-one objective: minimize the sum of artificials. Reduced costs d_j = c_j - Σ_{artificial rows} a_ij.
    let mut obj = vec![S::zero(); width + 1];
    for (j, slot) in obj.iter_mut().enumerate().take(width) {
        if is_art[j] {
            *slot = S::one();
        }
    }
    for i in 0..m {
        if is_art[basis[i]] {
            for (j, v) in rows[i].iter().enumerate() {
                if !Scalar::is_zero(v) {
                    obj[j] = obj[j].sub(v)?;
                }
            }
        }
    }
    let mut tab = Tableau { rows, obj, basis, width };
    loop {
        // obj[rhs] holds minus the current phase-one value.
        if Scalar::is_zero(&tab.obj[tab.rhs()]) {
            break;
        }
        let Some(e) = (0..width).find(|&j| tab.obj[j].is_negative()) else { break };
        let mut best: Option<(usize, S)> = None;
        for i in 0..m {
            let a = &tab.rows[i][e];
            if !a.is_positive() {
                continue;
            }
            let ratio = tab.rows[i][width].div(a)?;
            best = match best {
                None => Some((i, ratio)),
                Some((bi, br)) => {
                    if ratio < br || (ratio == br && tab.basis[i] < tab.basis[bi]) {
                        Some((i, ratio))
                    } else {
                        Some((bi, br))
                    }
                }
            };
        }
        let (r, _) = best.expect("phase one is bounded below");
        tab.pivot(r, e)?;
    }
    let value = S::zero().sub(&tab.obj[width])?;
    if Scalar::is_zero(&value) {
        let mut x = vec![Q::from_integer(0.into()); n];
        for (i, &b) in tab.basis.iter().enumerate() {
            if b < n {
                x[b] = tab.rows[i][width].to_q();
            }
        }
        return Some(Feasibility::Feasible { witness: x });
    }
    // π_i = c_{initial_i} - d_{initial_i}; y = -π / value on the normalized rows, then undo the sign flips.
    let mut y = Vec::with_capacity(m);
    for i in 0..m {
        let c0 = if is_art[initial[i]] { S::one() } else { S::zero() };
        let pi = c0.sub(&tab.obj[initial[i]])?;
        let yi = S::zero().sub(&pi)?.div(&value)?;
        let yi = if sign[i] < 0 { S::zero().sub(&yi)? } else { yi };
        y.push(yi.to_q());
    }
    Some(Feasibility::Infeasible { certificate: y })
}
