//! Finite abelian groups, symmetric sets, and their Cayley graphs.

pub mod approx;
pub mod fourier;
pub mod group;
pub mod triples;

use std::fmt::Write as _;
use std::path::Path;

pub use approx::{approx_subgroup, enumerate_subgroups, good_elements, subgroup_closure, Comparison, SubgroupApproximation};
pub use fourier::{character_phase_histogram, dft_indicator, max_nontrivial_coefficient, Coefficient, PhaseHistogram};
pub use group::{groups_of_order, AbelianGroup, GroupElement, GroupError, SymmetricSet};
pub use triples::{additive_triples, TripleCount};

use crate::graph::ColoredGraph;
use crate::io::content_lines;

/// Monochrome Cayley graph; vertex `i` is the element with mixed-radix index `i`.
pub fn cayley_graph(s: &SymmetricSet) -> ColoredGraph {
    let g = s.group();
    let order = g.order().expect("group order overflows") as usize;
    let mut pairs = Vec::with_capacity(order * s.len() / 2);
    for i in 0..order {
        let x = g.element_at(i);
        for d in s.members() {
            let j = g.index_of(&g.add(&x, d));
            if i < j {
                pairs.push((i, j));
            }
        }
    }
    ColoredGraph::monochrome(order, pairs).expect("Cayley graph edges are simple")
}

/// `group <m1> <m2> ...`, `set <k>`, then `k` residue vectors.
pub fn format_set(s: &SymmetricSet) -> String {
    let mut out = String::new();
    let moduli: Vec<String> = s.group().moduli().iter().map(u32::to_string).collect();
    writeln!(out, "group {}", moduli.join(" ")).unwrap();
    writeln!(out, "set {}", s.len()).unwrap();
    for x in s.members() {
        let r: Vec<String> = x.0.iter().map(u32::to_string).collect();
        writeln!(out, "{}", r.join(" ")).unwrap();
    }
    out
}

pub fn parse_set(text: &str) -> Result<SymmetricSet, GroupError> {
    let perr = |line: usize, msg: &str| GroupError::Parse { line, msg: msg.to_string() };
    let nums = |line: usize, toks: &[&str]| -> Result<Vec<u32>, GroupError> {
        toks.iter().map(|t| t.parse::<u32>().map_err(|_| perr(line, &format!("bad integer {t:?}")))).collect()
    };
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| perr(0, "empty input"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.first() != Some(&"group") {
        return Err(perr(ln, "expected `group <m1> ...`"));
    }
    let group = AbelianGroup::new(nums(ln, &toks[1..])?)?;
    let (ln, header) = lines.next().ok_or_else(|| perr(ln, "missing `set <k>` line"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 || toks[0] != "set" {
        return Err(perr(ln, "expected `set <k>`"));
    }
    let k = nums(ln, &toks[1..])?[0] as usize;
    let mut members = Vec::with_capacity(k);
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        members.push(group.element(nums(ln, &toks)?)?);
    }
    if members.len() != k {
        return Err(perr(0, &format!("expected {k} elements, found {}", members.len())));
    }
    SymmetricSet::new(group, members)
}

pub fn load_set(path: impl AsRef<Path>) -> Result<SymmetricSet, GroupError> {
    let text = std::fs::read_to_string(path).map_err(|e| GroupError::Io(e.to_string()))?;
    parse_set(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Regularity;

    fn profile(s: &SymmetricSet) -> (u64, u64) {
        match cayley_graph(s).check_triangle_regular() {
            Regularity::Uniform(p) => (p.r[0], p.c[0]),
            other => panic!("not uniform: {other:?}"),
        }
    }

    #[test]
    fn cayley_examples() {
        assert_eq!(profile(&SymmetricSet::cyclic(5, &[1, 2, 3, 4]).unwrap()), (4, 6));
        assert_eq!(profile(&SymmetricSet::cyclic(6, &[1, 2, 4, 5]).unwrap()), (4, 4));
        assert_eq!(profile(&SymmetricSet::cyclic(7, &[1, 6]).unwrap()), (2, 0));
        assert_eq!(profile(&SymmetricSet::cyclic(4, &[2]).unwrap()), (1, 0));
    }

    #[test]
    fn set_format_round_trip() {
        let g = AbelianGroup::new(vec![2, 4]).unwrap();
        let members = [vec![1, 0], vec![0, 1], vec![0, 3]].map(|v| GroupElement(v.to_vec()));
        let s = SymmetricSet::new(g, members).unwrap();
        assert_eq!(parse_set(&format_set(&s)).unwrap(), s);
        assert!(parse_set("group 4\nset 1\n1\n").is_err());
        assert!(parse_set("group 4\nset 2\n1\n").is_err());
    }
}
