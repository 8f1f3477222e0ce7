//! Oracles shared by the integration tests. None of them call into the library's own checkers.

#![allow(dead_code)]

use std::collections::HashSet;

use num_traits::{Signed, Zero};
use trireg::abelian::{GroupElement, SymmetricSet};
use trireg::lp::{LinearSystem, Relation, Q};

pub fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Ordered pairs `(a, b)` of members with `a + b` a member.
pub fn brute_triples(s: &SymmetricSet) -> u64 {
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

/// Exact evaluation of every row at a nonnegative point.
pub fn satisfies(sys: &LinearSystem, x: &[Q]) -> bool {
    x.len() == sys.var_count()
        && x.iter().all(|v| !v.is_negative())
        && sys.constraints.iter().all(|c| {
            let l: Q = c.coeffs.iter().map(|(i, a)| a * &x[*i]).sum();
            match c.relation {
                Relation::Le => l <= c.rhs,
                Relation::Eq => l == c.rhs,
                Relation::Ge => l >= c.rhs,
            }
        })
}

/// Farkas recombination: signs match the relations, `yᵀA ≥ 0` columnwise, `yᵀb < 0`.
pub fn refutes(sys: &LinearSystem, y: &[Q]) -> bool {
    if y.len() != sys.constraints.len() {
        return false;
    }
    let mut col = vec![Q::zero(); sys.var_count()];
    let mut rhs = Q::zero();
    for (c, yi) in sys.constraints.iter().zip(y) {
        let sign_ok = match c.relation {
            Relation::Le => !yi.is_negative(),
            Relation::Ge => !yi.is_positive(),
            Relation::Eq => true,
        };
        if !sign_ok {
            return false;
        }
        for (j, a) in &c.coeffs {
            col[*j] += a * yi;
        }
        rhs += &c.rhs * yi;
    }
    col.iter().all(|v| !v.is_negative()) && rhs.is_negative()
}
