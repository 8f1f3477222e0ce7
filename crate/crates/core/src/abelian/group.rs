use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group needs at least one modulus")]
    NoModuli,
    #[error("modulus {0} is smaller than 2")]
    BadModulus(u32),
    #[error("element {0:?} does not belong to the group")]
    NotAnElement(Vec<u32>),
    #[error("set contains the identity")]
    ContainsZero,
    #[error("set is not symmetric: missing the negation of {0:?}")]
    NotSymmetric(Vec<u32>),
    #[error("group order {order} exceeds the cap {cap}")]
    CapExceeded { order: u128, cap: u128 },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io: {0}")]
    Io(String),
}

/// A residue vector; coordinate `j` lives in `0..moduli[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(pub Vec<u32>);

impl GroupElement {
    pub fn residues(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        if parts.len() == 1 {
            write!(f, "{}", parts[0])
        } else {
            write!(f, "({})", parts.join(","))
        }
    }
}

/// Direct product `Z_{m1} x ... x Z_{mk}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    moduli: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(moduli: Vec<u32>) -> Result<Self, GroupError> {
        if moduli.is_empty() {
            return Err(GroupError::NoModuli);
        }
        if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
            return Err(GroupError::BadModulus(m));
        }
        Ok(AbelianGroup { moduli })
    }

    pub fn cyclic(n: u32) -> Self {
        Self::new(vec![n]).expect("cyclic group needs n >= 2")
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// `None` when the order overflows `u128`.
    pub fn order(&self) -> Option<u128> {
        self.moduli.iter().try_fold(1u128, |acc, &m| acc.checked_mul(m as u128))
    }

    /// Order as a `usize` when it fits in a flat table of at most `cap` entries.
    pub fn small_order(&self, cap: usize) -> Option<usize> {
        self.order().filter(|&o| o <= cap as u128).map(|o| o as usize)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.0.len() == self.rank() && x.0.iter().zip(&self.moduli).all(|(a, m)| a < m)
    }

    pub fn element(&self, residues: Vec<u32>) -> Result<GroupElement, GroupError> {
        let x = GroupElement(residues);
        if self.contains(&x) {
            Ok(x)
        } else {
            Err(GroupError::NotAnElement(x.0))
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.moduli)
                .map(|((x, y), m)| ((*x as u64 + *y as u64) % *m as u64) as u32)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(a.0.iter().zip(&self.moduli).map(|(x, m)| (m - x) % m).collect())
    }

    pub fn is_zero(&self, a: &GroupElement) -> bool {
        a.0.iter().all(|&x| x == 0)
    }

    /// Mixed-radix index, last coordinate fastest.
    pub fn index_of(&self, a: &GroupElement) -> usize {
        a.0.iter().zip(&self.moduli).fold(0usize, |acc, (x, m)| acc * *m as usize + *x as usize)
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut res = vec![0u32; self.rank()];
        for (slot, &m) in res.iter_mut().zip(&self.moduli).rev() {
            *slot = (index % m as usize) as u32;
            index /= m as usize;
        }
        GroupElement(res)
    }

    /// All elements in index order. Callers must keep the order small.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let order = self.order().expect("group order overflows") as usize;
        (0..order).map(move |i| self.element_at(i))
    }

    /// `self x other`, coordinates of `self` first.
    pub fn product(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut moduli = self.moduli.clone();
        moduli.extend_from_slice(&other.moduli);
        AbelianGroup { moduli }
    }

    /// Invariant factors `d1 | d2 | ... | dk` of this group.
    pub fn invariant_factors(&self) -> Vec<u32> {
        invariant_factors(&self.moduli)
    }

    pub fn is_isomorphic(&self, other: &AbelianGroup) -> bool {
        self.invariant_factors() == other.invariant_factors()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z_{m}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

fn factorize(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Canonical invariant-factor form of `Z_{m1} x ... x Z_{mk}` (ascending, each divides the next).
pub fn invariant_factors(moduli: &[u32]) -> Vec<u32> {
    use std::collections::BTreeMap;
    let mut by_prime: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &m in moduli {
        for (p, e) in factorize(m) {
            by_prime.entry(p).or_default().push(p.pow(e));
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u32; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (k, q) in powers.iter().enumerate() {
            factors[len - 1 - k] *= q;
        }
    }
    factors
}

/// One representative (in invariant-factor form) of every abelian group of order `n >= 2`.
pub fn groups_of_order(n: u32) -> Vec<AbelianGroup> {
    fn rec(remaining: u32, prev: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 1 {
            out.push(acc.clone());
            return;
        }
        // Next factor d is a multiple of prev and divides remaining; every later
        // factor is a multiple of d, so d^(#later + 1) must divide remaining.
        for d in (prev.max(2)..=remaining).filter(|d| d % prev == 0 && remaining.is_multiple_of(*d)) {
            let rest = remaining / d;
            if rest == 1 || rest.is_multiple_of(d) {
                acc.push(d);
                rec(rest, d, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|m| AbelianGroup::new(m).expect("factors are >= 2"))
        .collect()
}

/// A subset `S` of a group with `0 ∉ S` and `S = -S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricSet {
    group: AbelianGroup,
    members: Vec<GroupElement>,
}

impl SymmetricSet {
    pub fn new(group: AbelianGroup, members: impl IntoIterator<Item = GroupElement>) -> Result<Self, GroupError> {
        let set: BTreeSet<GroupElement> = members.into_iter().collect();
        for x in &set {
            if !group.contains(x) {
                return Err(GroupError::NotAnElement(x.0.clone()));
            }
            if group.is_zero(x) {
                return Err(GroupError::ContainsZero);
            }
            if !set.contains(&group.neg(x)) {
                return Err(GroupError::NotSymmetric(x.0.clone()));
            }
        }
        Ok(SymmetricSet { group, members: set.into_iter().collect() })
    }

    /// Convenience for cyclic groups.
    pub fn cyclic(n: u32, members: &[u32]) -> Result<Self, GroupError> {
        let g = AbelianGroup::cyclic(n);
        let elems = members.iter().map(|&x| GroupElement(vec![x])).collect::<Vec<_>>();
        Self::new(g, elems)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// Members in sorted order.
    pub fn members(&self) -> &[GroupElement] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.members.binary_search(x).is_ok()
    }

    /// `S x {0} ∪ {0} x T` inside `G x H`: the generating set of the Cartesian product of Cayley graphs.
    pub fn product(&self, other: &SymmetricSet) -> SymmetricSet {
        let group = self.group.product(&other.group);
        let zl = other.group.zero();
        let zr = self.group.zero();
        let left = self.members.iter().map(|x| {
            let mut v = x.0.clone();
            v.extend_from_slice(&zl.0);
            GroupElement(v)
        });
        let right = other.members.iter().map(|y| {
            let mut v = zr.0.clone();
            v.extend_from_slice(&y.0);
            GroupElement(v)
        });
        let mut members: Vec<GroupElement> = left.chain(right).collect();
        members.sort();
        SymmetricSet { group, members }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sets() {
        assert_eq!(SymmetricSet::cyclic(5, &[0, 1, 4]), Err(GroupError::ContainsZero));
        assert_eq!(SymmetricSet::cyclic(5, &[1]), Err(GroupError::NotSymmetric(vec![1])));
        assert!(SymmetricSet::cyclic(4, &[2]).is_ok());
    }

    #[test]
    fn index_round_trip() {
        let g = AbelianGroup::new(vec![2, 3, 4]).unwrap();
        for i in 0..24 {
            assert_eq!(g.index_of(&g.element_at(i)), i);
        }
    }

    #[test]
    fn invariant_factor_forms() {
        assert_eq!(invariant_factors(&[2, 3]), vec![6]);
        assert_eq!(invariant_factors(&[4, 6]), vec![2, 12]);
        assert_eq!(invariant_factors(&[2, 2, 2]), vec![2, 2, 2]);
    }

    #[test]
    fn group_counts_by_order() {
        // number of abelian groups of order n
        let expected = [(2, 1), (4, 2), (8, 3), (12, 2), (16, 5), (24, 3), (27, 3), (36, 4)];
        for (n, k) in expected {
            let gs = groups_of_order(n);
            assert_eq!(gs.len(), k, "order {n}");
            for g in &gs {
                assert_eq!(g.order(), Some(n as u128));
                assert_eq!(g.invariant_factors(), g.moduli());
            }
        }
    }
}
