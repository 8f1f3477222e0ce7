//! Cartesian products of cliques as abelian Cayley graphs.

use serde::Serialize;

use crate::abelian::{AbelianGroup, GroupElement, SymmetricSet};
use crate::bits;

use super::ConstructionError;

pub fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Multiset of clique sizes `a_i ≥ 2`, sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueProductPlan {
    pub clique_sizes: Vec<u64>,
}

impl CliqueProductPlan {
    pub fn new(mut clique_sizes: Vec<u64>) -> Self {
        assert!(clique_sizes.iter().all(|&a| a >= 2), "cliques need at least two vertices");
        clique_sizes.sort_unstable_by(|a, b| b.cmp(a));
        CliqueProductPlan { clique_sizes }
    }

    pub fn degree(&self) -> u64 {
        self.clique_sizes.iter().map(|a| a - 1).sum()
    }

    pub fn triangles(&self) -> u64 {
        self.clique_sizes.iter().map(|a| binom2(a - 1)).sum()
    }
}

/// Reachability table: `rows[d]` has bit `c` set iff some multiset of parts
/// `p_i ≥ 1` has `Σ p_i = d` and `Σ C(p_i, 2) = c` (truncated at `c_max`).
struct Reach {
    rows: Vec<Vec<u64>>,
}

impl Reach {
    fn build(r: u64, c_max: u64) -> Self {
        let words = (c_max as usize + 1).div_ceil(64);
        let mut rows = vec![vec![0u64; words]; r as usize + 1];
        bits::set(&mut rows[0], 0);
        for p in 1..=r as usize {
            let w = binom2(p as u64) as usize;
            if w > c_max as usize {
                continue;
            }
            for d in p..=r as usize {
                let (lo, hi) = rows.split_at_mut(d);
                bits::shl_or(&lo[d - p], w, &mut hi[0]);
            }
        }
        for row in &mut rows {
            bits::truncate(row, c_max as usize + 1);
        }
        Reach { rows }
    }

    fn has(&self, d: u64, c: u64) -> bool {
        bits::get(&self.rows[d as usize], c as usize)
    }
}

/// Clique sizes realizing `(r, c)`, or `None` if no clique product does.
pub fn clique_product_decompose(r: u64, c: u64) -> Result<Option<CliqueProductPlan>, ConstructionError> {
    if c > binom2(r) {
        return Err(ConstructionError::TriangleBudget { r, c });
    }
    let reach = Reach::build(r, c);
    if !reach.has(r, c) {
        return Ok(None);
    }
    // Largest part first keeps the plan short.
    let (mut d, mut rem) = (r, c);
    let mut sizes = Vec::new();
    while d > 0 {
        let p = (1..=d)
            .rev()
            .find(|&p| binom2(p) <= rem && reach.has(d - p, rem - binom2(p)))
            .expect("reachable state has a predecessor");
        sizes.push(p + 1);
        d -= p;
        rem -= binom2(p);
    }
    Ok(Some(CliqueProductPlan::new(sizes)))
}

/// All `c` with a clique-product realization at degree `r`.
pub fn clique_product_spectrum(r: u64) -> Vec<u64> {
    let reach = Reach::build(r, binom2(r));
    (0..=binom2(r)).filter(|&c| reach.has(r, c)).collect()
}

/// `Π Z_{a_i}` with the elements nonzero in exactly one coordinate.
pub fn build_clique_product(plan: &CliqueProductPlan) -> Result<SymmetricSet, ConstructionError> {
    if plan.clique_sizes.is_empty() {
        return Err(ConstructionError::EmptyPlan);
    }
    let moduli: Vec<u32> = plan.clique_sizes.iter().map(|&a| a as u32).collect();
    let group = AbelianGroup::new(moduli.clone())?;
    let mut members = Vec::with_capacity(plan.degree() as usize);
    for (i, &m) in moduli.iter().enumerate() {
        for v in 1..m {
            let mut e = vec![0u32; moduli.len()];
            e[i] = v;
            members.push(GroupElement(e));
        }
    }
    Ok(SymmetricSet::new(group, members)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::additive_triples;

    /// All multisets of parts summing to `r`, by brute force.
    fn partitions(r: u64, max: u64) -> Vec<Vec<u64>> {
        if r == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in (1..=max.min(r)).rev() {
            for mut rest in partitions(r - p, p) {
                rest.insert(0, p);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn examples() {
        assert_eq!(clique_product_decompose(4, 6).unwrap().unwrap().clique_sizes, vec![5]);
        assert_eq!(clique_product_decompose(4, 2).unwrap().unwrap().clique_sizes, vec![3, 3]);
        assert_eq!(clique_product_decompose(4, 5).unwrap(), None);
        assert!(clique_product_decompose(4, 7).is_err());
        assert_eq!(clique_product_spectrum(4), vec![0, 1, 2, 3, 6]);
    }

    #[test]
    fn dp_matches_partition_oracle() {
        for r in 0..=14u64 {
            let mut oracle: Vec<u64> =
                partitions(r, r).iter().map(|ps| ps.iter().map(|&p| binom2(p)).sum()).collect();
            oracle.sort_unstable();
            oracle.dedup();
            assert_eq!(clique_product_spectrum(r), oracle, "r = {r}");
            for c in 0..=binom2(r) {
                if let Some(plan) = clique_product_decompose(r, c).unwrap() {
                    assert_eq!((plan.degree(), plan.triangles()), (r, c));
                }
            }
        }
    }

    #[test]
    fn built_sets() {
        let k5 = build_clique_product(&CliqueProductPlan::new(vec![5])).unwrap();
        assert_eq!(k5, SymmetricSet::cyclic(5, &[1, 2, 3, 4]).unwrap());
        let rook = build_clique_product(&CliqueProductPlan::new(vec![3, 3])).unwrap();
        assert_eq!(rook.len(), 4);
        assert_eq!(additive_triples(&rook).count, 4);
        let cube = build_clique_product(&CliqueProductPlan::new(vec![2, 2, 2])).unwrap();
        assert_eq!((cube.len(), additive_triples(&cube).count), (3, 0));
        assert!(matches!(build_clique_product(&CliqueProductPlan::new(vec![])), Err(ConstructionError::EmptyPlan)));
    }
}
