//! Which `c` occur for Cayley graphs of degree `r` over small abelian groups.

use std::collections::BTreeMap;
use std::path::Path;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{additive_triples, cayley_graph, groups_of_order, AbelianGroup, GroupElement, GroupError, SymmetricSet};
use crate::graph::Regularity;

pub const DEFAULT_ORDER_CAP: usize = 40;

#[derive(Debug, Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("malformed record: {0}")]
    Record(String),
}

/// `{x}` for involutions, `{x, -x}` otherwise, as bit masks over element indices.
fn orbits(g: &AbelianGroup) -> Vec<u64> {
    let n = g.small_order(64).expect("order checked by caller");
    let mut out = Vec::new();
    for i in 1..n {
        let j = g.index_of(&g.neg(&g.element_at(i)));
        if i <= j {
            out.push((1u64 << i) | (1u64 << j));
        }
    }
    out
}

fn checked_order(g: &AbelianGroup, cap: usize) -> Result<usize, GroupError> {
    g.small_order(cap.min(64)).ok_or(GroupError::CapExceeded { order: g.order().unwrap_or(u128::MAX), cap: cap.min(64) as u128 })
}

fn to_set(g: &AbelianGroup, mask: u64) -> SymmetricSet {
    let members = (0..64).filter(|i| mask >> i & 1 == 1).map(|i| g.element_at(i));
    SymmetricSet::new(g.clone(), members).expect("orbit unions are symmetric")
}

/// Every symmetric subset, each exactly once, as unions of orbits.
pub fn enumerate_symmetric_sets(g: &AbelianGroup, cap: usize) -> Result<Vec<SymmetricSet>, GroupError> {
    checked_order(g, cap)?;
    let orb = orbits(g);
    Ok((0u64..1 << orb.len())
        .map(|pick| to_set(g, orb.iter().enumerate().filter(|(k, _)| pick >> k & 1 == 1).map(|(_, m)| m).fold(0, |a, m| a | m)))
        .collect())
}

/// Masks of the symmetric subsets of size exactly `r`.
fn masks_of_size(orb: &[u64], r: u32) -> Vec<u64> {
    fn rec(orb: &[u64], k: usize, left: u32, mask: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(mask);
            return;
        }
        for (j, &o) in orb.iter().enumerate().skip(k) {
            let size = o.count_ones();
            if size <= left {
                rec(orb, j + 1, left - size, mask | o, out);
            }
        }
    }
    let mut out = Vec::new();
    rec(orb, 0, r, 0, &mut out);
    out
}

/// Addition table over element indices, with membership tested against a one-word mask.
struct Table {
    add: Vec<Vec<u8>>,
}

impl Table {
    fn new(g: &AbelianGroup, n: usize) -> Self {
        let elems: Vec<GroupElement> = (0..n).map(|i| g.element_at(i)).collect();
        let add = elems.iter().map(|a| elems.iter().map(|b| g.index_of(&g.add(a, b)) as u8).collect()).collect();
        Table { add }
    }

    /// `Σ_{s ∈ S} |(S + s) ∩ S|`.
    fn triples(&self, mask: u64) -> u64 {
        let mut total = 0;
        let mut outer = mask;
        while outer != 0 {
            let s = outer.trailing_zeros() as usize;
            outer &= outer - 1;
            let row = &self.add[s];
            let mut shifted = 0u64;
            let mut inner = mask;
            while inner != 0 {
                let a = inner.trailing_zeros() as usize;
                inner &= inner - 1;
                shifted |= 1 << row[a];
            }
            total += (shifted & mask).count_ones() as u64;
        }
        total
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub r: u64,
    pub c: u64,
    pub moduli: Vec<u32>,
    pub members: Vec<Vec<u32>>,
}

fn binom2(r: u64) -> u64 {
    r * r.saturating_sub(1) / 2
}

impl SpectrumRecord {
    /// `x = round(2(C(r,2) - c)/r)`, halves rounded up.
    pub fn x(&self) -> u64 {
        if self.r == 0 {
            return 0;
        }
        (4 * (binom2(self.r) - self.c) + self.r) / (2 * self.r)
    }

    /// `y = c - (C(r,2) - rx/2)`.
    pub fn y(&self) -> Rational64 {
        Rational64::from_integer(self.c as i64 - binom2(self.r) as i64) + Rational64::new((self.r * self.x()) as i64, 2)
    }

    pub fn set(&self) -> Result<SymmetricSet, GroupError> {
        let g = AbelianGroup::new(self.moduli.clone())?;
        let members = self.members.iter().map(|m| g.element(m.clone())).collect::<Result<Vec<_>, _>>()?;
        SymmetricSet::new(g, members)
    }

    /// Counts the triples again and checks the Cayley graph's profile.
    pub fn verify(&self) -> bool {
        let Ok(s) = self.set() else { return false };
        let uniform = match cayley_graph(&s).check_triangle_regular() {
            Regularity::Uniform(p) => p.r == [self.r] && p.c == [self.c],
            Regularity::NonUniform { .. } => false,
        };
        uniform && s.len() as u64 == self.r && additive_triples(&s).count == 2 * self.c
    }
}

/// All groups of order `2..=max_order`, one per isomorphism type, ordered by order.
pub fn groups_up_to(max_order: u32) -> Vec<AbelianGroup> {
    (2..=max_order).flat_map(groups_of_order).collect()
}

/// Achieved `c` values with the first witness found, ordered by `c`.
pub fn spectrum_for_r(r: u32, max_order: u32) -> Vec<SpectrumRecord> {
    let groups: Vec<AbelianGroup> = groups_up_to(max_order.min(64)).into_iter().filter(|g| g.small_order(64).unwrap() > r as usize).collect();
    let per_group: Vec<BTreeMap<u64, u64>> = groups
        .par_iter()
        .map(|g| {
            let n = g.small_order(64).unwrap();
            let table = Table::new(g, n);
            let mut found = BTreeMap::new();
            for mask in masks_of_size(&orbits(g), r) {
                found.entry(table.triples(mask) / 2).or_insert(mask);
            }
            found
        })
        .collect();
    let mut merged: BTreeMap<u64, SpectrumRecord> = BTreeMap::new();
    for (g, found) in groups.iter().zip(per_group) {
        for (c, mask) in found {
            merged.entry(c).or_insert_with(|| {
                let s = to_set(g, mask);
                SpectrumRecord {
                    r: r as u64,
                    c,
                    moduli: g.moduli().to_vec(),
                    members: s.members().iter().map(|e| e.0.clone()).collect(),
                }
            });
        }
    }
    merged.into_values().collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ShapeRow {
    pub c: u64,
    pub x: u64,
    pub y: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BandReport {
    pub r: u64,
    pub max_order: u32,
    /// `[C(r,2) - ⌊(r-2)/2⌋, C(r,2) - 1]`, absent when empty.
    pub band: Option<(u64, u64)>,
    pub achieved: Vec<u64>,
    pub in_band: Vec<SpectrumRecord>,
    /// `C(r,2) - r/2` for even `r`.
    pub tight_value: Option<u64>,
    pub tight_found: bool,
    /// Achieved `c > C(r,2) - r^{3/2}` written as `C(r,2) - rx/2 + y`.
    pub shape: Vec<ShapeRow>,
    pub records_verified: bool,
}

impl BandReport {
    pub fn passes(&self) -> bool {
        self.in_band.is_empty() && (self.tight_value.is_none() || self.tight_found) && self.records_verified
    }
}

pub fn forbidden_band_check(r: u32, max_order: u32) -> BandReport {
    let records = spectrum_for_r(r, max_order);
    let r64 = r as u64;
    let b = binom2(r64);
    let width = r64.saturating_sub(2) / 2;
    let band = (width >= 1).then(|| (b - width, b - 1));
    let in_band =
        records.iter().filter(|x| band.is_some_and(|(lo, hi)| (lo..=hi).contains(&x.c))).cloned().collect();
    let tight_value = r.is_multiple_of(2).then(|| b - r64 / 2);
    let threshold = b as f64 - (r as f64).powf(1.5);
    BandReport {
        r: r64,
        max_order,
        band,
        achieved: records.iter().map(|x| x.c).collect(),
        in_band,
        tight_value,
        tight_found: tight_value.is_some_and(|v| records.iter().any(|x| x.c == v)),
        shape: records
            .iter()
            .filter(|x| x.c as f64 > threshold)
            .map(|x| ShapeRow { c: x.c, x: x.x(), y: x.y().to_string() })
            .collect(),
        records_verified: records.iter().all(SpectrumRecord::verify),
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    r: u64,
    c: u64,
    x: u64,
    y: String,
    #[serde(rename = "groupModuli")]
    group_moduli: String,
    #[serde(rename = "setMembers")]
    set_members: String,
}

fn join(v: &[u32], sep: &str) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
}

fn split(s: &str, sep: char) -> Result<Vec<u32>, SpectrumError> {
    s.split(sep).map(|t| t.parse().map_err(|_| SpectrumError::Record(s.to_string()))).collect()
}

/// Columns `r,c,x,y,groupModuli,setMembers`; moduli joined by `x`, members by `;` with residues joined by `.`.
pub fn write_spectrum_csv<W: std::io::Write>(records: &[SpectrumRecord], out: W) -> Result<(), SpectrumError> {
    let mut sorted = records.to_vec();
    sorted.sort_by_key(|a| (a.r, a.c));
    let mut w = csv::Writer::from_writer(out);
    if sorted.is_empty() {
        w.write_record(["r", "c", "x", "y", "groupModuli", "setMembers"])?;
    }
    for rec in &sorted {
        w.serialize(CsvRow {
            r: rec.r,
            c: rec.c,
            x: rec.x(),
            y: rec.y().to_string(),
            group_moduli: join(&rec.moduli, "x"),
            set_members: rec.members.iter().map(|m| join(m, ".")).collect::<Vec<_>>().join(";"),
        })?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn emit_spectrum_csv(records: &[SpectrumRecord], path: impl AsRef<Path>) -> Result<(), SpectrumError> {
    let file = std::fs::File::create(path).map_err(csv::Error::from)?;
    write_spectrum_csv(records, file)
}

pub fn read_spectrum_csv<R: std::io::Read>(input: R) -> Result<Vec<SpectrumRecord>, SpectrumError> {
    let mut rd = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for row in rd.deserialize::<CsvRow>() {
        let row = row?;
        let members = if row.set_members.is_empty() {
            Vec::new()
        } else {
            row.set_members.split(';').map(|m| split(m, '.')).collect::<Result<_, _>>()?
        };
        out.push(SpectrumRecord { r: row.r, c: row.c, moduli: split(&row.group_moduli, 'x')?, members });
    }
    Ok(out)
}

pub fn load_spectrum_csv(path: impl AsRef<Path>) -> Result<Vec<SpectrumRecord>, SpectrumError> {
    read_spectrum_csv(std::fs::File::open(path).map_err(csv::Error::from)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_set_counts() {
        assert_eq!(enumerate_symmetric_sets(&AbelianGroup::cyclic(3), 40).unwrap().len(), 2);
        assert_eq!(enumerate_symmetric_sets(&AbelianGroup::cyclic(4), 40).unwrap().len(), 4);
        assert_eq!(enumerate_symmetric_sets(&AbelianGroup::cyclic(5), 40).unwrap().len(), 4);
        assert!(enumerate_symmetric_sets(&AbelianGroup::cyclic(41), 40).is_err());
    }

    #[test]
    fn counts_match_powerset_filter() {
        for n in 2..=12u32 {
            let g = AbelianGroup::cyclic(n);
            let brute = (0u32..1 << n)
                .filter(|m| m & 1 == 0 && (0..n).all(|x| m >> x & 1 == m >> ((n - x) % n) & 1))
                .count();
            assert_eq!(enumerate_symmetric_sets(&g, 40).unwrap().len(), brute, "n={n}");
            let exponent = (n - 1) / 2 + u32::from(n % 2 == 0);
            assert_eq!(brute, 1 << exponent);
        }
    }

    #[test]
    fn table_counts_agree_with_triples() {
        let g = AbelianGroup::new(vec![2, 6]).unwrap();
        let table = Table::new(&g, 12);
        for r in 0..=5 {
            for mask in masks_of_size(&orbits(&g), r) {
                assert_eq!(table.triples(mask), additive_triples(&to_set(&g, mask)).count);
            }
        }
    }

    #[test]
    fn small_spectra() {
        let cs = |r, m| spectrum_for_r(r, m).into_iter().map(|x| x.c).collect::<Vec<_>>();
        assert_eq!(cs(2, 12), vec![0, 1]);
        let four = cs(4, 24);
        for c in [0, 1, 2, 3, 4, 6] {
            assert!(four.contains(&c));
        }
        assert!(!four.contains(&5));
        let z6 = SpectrumRecord { r: 4, c: 4, moduli: vec![6], members: vec![vec![1], vec![2], vec![4], vec![5]] };
        assert!(z6.verify());
    }

    #[test]
    fn bands() {
        let r4 = forbidden_band_check(4, 24);
        assert_eq!(r4.band, Some((5, 5)));
        assert!(r4.passes());
        assert_eq!(forbidden_band_check(2, 12).band, None);
    }

    #[test]
    fn csv_round_trip() {
        let mut buf = Vec::new();
        write_spectrum_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap().trim(), "r,c,x,y,groupModuli,setMembers");
        assert!(read_spectrum_csv(buf.as_slice()).unwrap().is_empty());
        let recs = spectrum_for_r(2, 12);
        let mut buf = Vec::new();
        write_spectrum_csv(&recs, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap().lines().count(), 3);
        assert_eq!(read_spectrum_csv(buf.as_slice()).unwrap(), recs);
    }
}
