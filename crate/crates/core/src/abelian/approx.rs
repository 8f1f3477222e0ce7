//! Good elements, subgroup closure, and the subgroup approximation of a near-closed set.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_rational::Rational64;
use serde::Serialize;

use super::group::{AbelianGroup, GroupElement, GroupError, SymmetricSet};
use super::triples::additive_triples;

pub const DEFAULT_SUBGROUP_CAP: u128 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    /// `count > threshold * |S|`
    Strict,
    /// `count >= threshold * |S|`
    NonStrict,
}

/// `#{y ∈ S : x + y ∈ S}` for every `x ∈ S`, in member order.
pub fn sum_counts(s: &SymmetricSet) -> Vec<usize> {
    let g = s.group();
    s.members()
        .iter()
        .map(|x| s.members().iter().filter(|y| s.contains(&g.add(x, y))).count())
        .collect()
}

pub fn good_elements(s: &SymmetricSet, threshold: Rational64, mode: Comparison) -> Vec<GroupElement> {
    let (num, den) = (*threshold.numer() as i128, *threshold.denom() as i128);
    let size = s.len() as i128;
    s.members()
        .iter()
        .zip(sum_counts(s))
        .filter(|(_, k)| {
            let lhs = *k as i128 * den;
            let rhs = num * size;
            match mode {
                Comparison::Strict => lhs > rhs,
                Comparison::NonStrict => lhs >= rhs,
            }
        })
        .map(|(x, _)| x.clone())
        .collect()
}

/// Smallest subgroup containing `seed`, sorted.
pub fn subgroup_closure(g: &AbelianGroup, seed: &[GroupElement]) -> Vec<GroupElement> {
    let zero = g.zero();
    let mut seen: HashSet<GroupElement> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    // In a finite group, closing under `+ seed` already closes under negation.
    while let Some(h) = queue.pop_front() {
        for s in seed {
            let next = g.add(&h, s);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<GroupElement> = seen.into_iter().collect();
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubgroupApproximation {
    pub subgroup: Vec<GroupElement>,
    #[serde(serialize_with = "ser_ratio")]
    pub epsilon: Rational64,
    #[serde(serialize_with = "ser_ratio")]
    pub size_ratio: Rational64,
    #[serde(serialize_with = "ser_ratio")]
    pub overlap_ratio: Rational64,
    pub super_good_count: usize,
    pub triple_count: u64,
}

fn ser_ratio<S: serde::Serializer>(q: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl SubgroupApproximation {
    /// Smallest `K` with `|H ∩ S| ≥ (1 - Kε)|S|` and `|H| ≤ (1 + Kε)|S|`; `None` when ε = 0 and no `K` works.
    pub fn empirical_constant(&self) -> Option<Rational64> {
        let one = Rational64::from_integer(1);
        let need = (one - self.overlap_ratio).max(self.size_ratio - one).max(Rational64::from_integer(0));
        if self.epsilon == Rational64::from_integer(0) {
            (need == Rational64::from_integer(0)).then_some(Rational64::from_integer(0))
        } else {
            Some(need / self.epsilon)
        }
    }
}

pub fn super_good_threshold() -> Rational64 {
    Rational64::new(2, 3)
}

/// Closure of the super-good elements (`Pr ≥ 2/3`). Total: returns a subgroup even when ε is large.
pub fn approx_subgroup(s: &SymmetricSet) -> SubgroupApproximation {
    let triples = additive_triples(s);
    let super_good = good_elements(s, super_good_threshold(), Comparison::NonStrict);
    let subgroup = subgroup_closure(s.group(), &super_good);
    let overlap = s.members().iter().filter(|x| subgroup.binary_search(x).is_ok()).count();
    let size = s.len().max(1) as i64;
    SubgroupApproximation {
        epsilon: triples.epsilon,
        size_ratio: Rational64::new(subgroup.len() as i64, size),
        overlap_ratio: Rational64::new(overlap as i64, size),
        super_good_count: super_good.len(),
        triple_count: triples.count,
        subgroup,
    }
}

/// Every subgroup of `g`, each sorted, ordered by size then lexicographically.
pub fn enumerate_subgroups(g: &AbelianGroup, cap: u128) -> Result<Vec<Vec<GroupElement>>, GroupError> {
    let order = g.order().unwrap_or(u128::MAX);
    if order > cap {
        return Err(GroupError::CapExceeded { order, cap });
    }
    let elements: Vec<GroupElement> = g.elements().collect();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let as_indices = |h: &[GroupElement]| {
        let mut v: Vec<usize> = h.iter().map(|x| g.index_of(x)).collect();
        v.sort_unstable();
        v
    };
    let mut queue = VecDeque::from([vec![g.zero()]]);
    found.insert(vec![0]);
    while let Some(h) = queue.pop_front() {
        let idx: HashSet<usize> = h.iter().map(|x| g.index_of(x)).collect();
        for x in elements.iter().filter(|x| !idx.contains(&g.index_of(x))) {
            let mut seed = h.clone();
            seed.push(x.clone());
            let next = subgroup_closure(g, &seed);
            if found.insert(as_indices(&next)) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Vec<GroupElement>> =
        found.into_iter().map(|v| v.into_iter().map(|i| g.element_at(i)).collect()).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(v: &[u32]) -> Vec<GroupElement> {
        v.iter().map(|&x| GroupElement(vec![x])).collect()
    }

    #[test]
    fn closure_examples() {
        let z12 = AbelianGroup::cyclic(12);
        assert_eq!(subgroup_closure(&z12, &[]), cyc(&[0]));
        assert_eq!(subgroup_closure(&z12, &cyc(&[4])), cyc(&[0, 4, 8]));
        let g = AbelianGroup::new(vec![2, 4]).unwrap();
        let seed = [vec![1, 0], vec![0, 2]].map(|v| GroupElement(v.to_vec()));
        let h = subgroup_closure(&g, &seed);
        let want = [vec![0, 0], vec![0, 2], vec![1, 0], vec![1, 2]].map(|v| GroupElement(v.to_vec()));
        assert_eq!(h, want);
    }

    #[test]
    fn subgroup_counts() {
        let sizes: Vec<usize> =
            enumerate_subgroups(&AbelianGroup::cyclic(6), 256).unwrap().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2, 3, 6]);
        assert_eq!(enumerate_subgroups(&AbelianGroup::new(vec![2, 2]).unwrap(), 256).unwrap().len(), 5);
        assert_eq!(enumerate_subgroups(&AbelianGroup::cyclic(12), 256).unwrap().len(), 6);
        assert!(matches!(
            enumerate_subgroups(&AbelianGroup::cyclic(300), 256),
            Err(GroupError::CapExceeded { .. })
        ));
    }

    #[test]
    fn good_sets() {
        let c7 = SymmetricSet::cyclic(7, &[1, 6]).unwrap();
        assert!(good_elements(&c7, Rational64::new(1, 2), Comparison::Strict).is_empty());
        let s = SymmetricSet::cyclic(12, &[3, 6, 9, 1, 11]).unwrap();
        // counts: 1 -> {}, 3 -> {3,6}, 6 -> {3,9}, 9 -> {6,9}, 11 -> {} ; 2/5 is not > 1/2
        assert_eq!(sum_counts(&s), vec![0, 2, 2, 2, 0]);
        assert!(good_elements(&s, Rational64::new(1, 2), Comparison::Strict).is_empty());
        assert_eq!(good_elements(&s, Rational64::new(2, 5), Comparison::NonStrict), cyc(&[3, 6, 9]));
    }

    #[test]
    fn approx_examples() {
        let a = approx_subgroup(&SymmetricSet::cyclic(8, &[2, 4, 6]).unwrap());
        assert_eq!(a.subgroup, cyc(&[0, 2, 4, 6]));
        assert_eq!(a.size_ratio, Rational64::new(4, 3));
        assert_eq!(a.overlap_ratio, Rational64::from_integer(1));
        assert_eq!(a.epsilon, Rational64::new(1, 3));
        let c7 = approx_subgroup(&SymmetricSet::cyclic(7, &[1, 6]).unwrap());
        assert_eq!(c7.super_good_count, 0);
        assert_eq!(c7.subgroup, cyc(&[0]));
        let k7 = approx_subgroup(&SymmetricSet::cyclic(7, &[1, 2, 3, 4, 5, 6]).unwrap());
        assert_eq!(k7.super_good_count, 6);
        assert_eq!(k7.subgroup.len(), 7);
    }
}
