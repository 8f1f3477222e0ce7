//! Counting ordered pairs `(a, b) ∈ S × S` with `a + b ∈ S`.

use std::collections::HashSet;

use num_rational::Rational64;
use rayon::prelude::*;

use super::group::{AbelianGroup, SymmetricSet};
use crate::bits::{shl_or, shr_or};

/// Largest group order for which flat membership tables are built.
pub const FLAT_TABLE_CAP: usize = 1 << 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleCount {
    pub count: u64,
    /// `1 - count / |S|^2`; zero for the empty set.
    pub epsilon: Rational64,
}

impl TripleCount {
    fn new(count: u64, size: usize) -> Self {
        let epsilon = if size == 0 {
            Rational64::from_integer(0)
        } else {
            Rational64::from_integer(1) - Rational64::new(count as i64, (size * size) as i64)
        };
        TripleCount { count, epsilon }
    }
}

pub fn additive_triples(s: &SymmetricSet) -> TripleCount {
    let count = match BlockedMembership::new(s) {
        Some(b) => b.count_triples(s),
        None => triples_hashed(s),
    };
    TripleCount::new(count, s.len())
}

/// One bit per group element, indexed by the mixed-radix encoding.
#[derive(Debug, Clone)]
pub struct MembershipTable {
    bits: Vec<u64>,
}

impl MembershipTable {
    pub fn new(s: &SymmetricSet) -> Option<Self> {
        let order = s.group().small_order(FLAT_TABLE_CAP)?;
        let mut bits = vec![0u64; order.div_ceil(64)];
        for x in s.members() {
            let i = s.group().index_of(x);
            bits[i / 64] |= 1 << (i % 64);
        }
        Some(MembershipTable { bits })
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }
}

/// Straightforward O(|S|^2) count over hashed residue vectors; works for any group size.
pub fn triples_hashed(s: &SymmetricSet) -> u64 {
    let g = s.group();
    let set: HashSet<&[u32]> = s.members().iter().map(|x| x.residues()).collect();
    s.members()
        .par_iter()
        .map(|a| {
            let mut buf = vec![0u32; g.rank()];
            let mut local = 0u64;
            for b in s.members() {
                for (j, slot) in buf.iter_mut().enumerate() {
                    *slot = ((a.0[j] as u64 + b.0[j] as u64) % g.moduli()[j] as u64) as u32;
                }
                local += set.contains(buf.as_slice()) as u64;
            }
            local
        })
        .sum()
}

/// O(|S|^2) count with O(1) lookups in a flat table.
pub fn triples_indexed(s: &SymmetricSet) -> Option<u64> {
    let table = MembershipTable::new(s)?;
    let g = s.group();
    Some(
        s.members()
            .par_iter()
            .map(|a| {
                s.members()
                    .iter()
                    .filter(|b| table.contains_index(g.index_of(&g.add(a, b))))
                    .count() as u64
            })
            .sum(),
    )
}

/// Rows of the membership table keyed by all coordinates but the last;
/// each row is a bitset over the last cyclic coordinate.
#[derive(Debug, Clone)]
pub struct BlockedMembership {
    prefix: AbelianGroup,
    width: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
    nonempty: Vec<usize>,
}

impl BlockedMembership {
    pub fn new(s: &SymmetricSet) -> Option<Self> {
        let g = s.group();
        g.small_order(FLAT_TABLE_CAP)?;
        let width = *g.moduli().last().unwrap() as usize;
        let prefix_moduli = &g.moduli()[..g.rank() - 1];
        // A rank-one group gets a single dummy prefix Z_2 whose row 1 stays empty.
        let prefix = AbelianGroup::new(if prefix_moduli.is_empty() { vec![2] } else { prefix_moduli.to_vec() })
            .expect("moduli are valid");
        let rows_n = prefix.order().unwrap() as usize;
        let words = width.div_ceil(64);
        let mut rows = vec![vec![0u64; words]; rows_n];
        for x in s.members() {
            let (p, last) = Self::split(&prefix, g.rank(), x.residues());
            rows[p][last / 64] |= 1 << (last % 64);
        }
        let nonempty = (0..rows_n).filter(|&p| rows[p].iter().any(|&w| w != 0)).collect();
        Some(BlockedMembership { prefix, width, words, rows, nonempty })
    }

    fn split(prefix: &AbelianGroup, rank: usize, r: &[u32]) -> (usize, usize) {
        let p = if rank == 1 {
            0
        } else {
            r[..rank - 1].iter().zip(prefix.moduli()).fold(0usize, |acc, (x, m)| acc * *m as usize + *x as usize)
        };
        (p, r[rank - 1] as usize)
    }

    /// `dst = src` rotated up by `k` positions within `width` bits.
    fn rotate(&self, src: &[u64], k: usize, dst: &mut [u64]) {
        dst.iter_mut().for_each(|w| *w = 0);
        if k == 0 {
            dst.copy_from_slice(src);
            return;
        }
        shl_or(src, k, dst);
        shr_or(src, self.width - k, dst);
        crate::bits::truncate(dst, self.width);
    }

    /// `|(S + s) ∩ S|` summed over `s ∈ S`.
    pub fn count_triples(&self, s: &SymmetricSet) -> u64 {
        let rank = s.group().rank();
        s.members()
            .par_iter()
            .map_init(
                || vec![0u64; self.words],
                |buf, shift| {
                    let (sp, sl) = Self::split(&self.prefix, rank, shift.residues());
                    let sp_elem = self.prefix.element_at(sp);
                    let mut total = 0u64;
                    for &p in &self.nonempty {
                        let q = if rank == 1 {
                            0
                        } else {
                            self.prefix.index_of(&self.prefix.add(&self.prefix.element_at(p), &sp_elem))
                        };
                        let target = &self.rows[q];
                        if target.iter().all(|&w| w == 0) {
                            continue;
                        }
                        self.rotate(&self.rows[p], sl, buf);
                        total += buf.iter().zip(target).map(|(a, b)| (a & b).count_ones() as u64).sum::<u64>();
                    }
                    total
                },
            )
            .sum()
    }
}
