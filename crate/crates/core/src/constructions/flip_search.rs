//! Search for small flip graphs among products of edge-colored abelian Cayley graphs.

use std::collections::{HashMap, HashSet};

use crate::abelian::{groups_of_order, AbelianGroup, GroupElement};
use crate::graph::{ColoredGraph, Edge, FlipVerdict, ProfileTerm};

/// A colored Cayley graph; each generator carries its color, and `x`, `-x` share one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredCayley {
    pub group: AbelianGroup,
    pub generators: Vec<(GroupElement, usize)>,
}

impl ColoredCayley {
    pub fn order(&self) -> usize {
        self.group.order().expect("small group") as usize
    }

    pub fn graph(&self, t: usize) -> ColoredGraph {
        let g = &self.group;
        let n = self.order();
        let mut edges = Vec::new();
        for i in 0..n {
            let x = g.element_at(i);
            for (s, color) in &self.generators {
                let j = g.index_of(&g.add(&x, s));
                if i < j {
                    edges.push(Edge::new(i, j, *color));
                }
            }
        }
        ColoredGraph::new(t, n, edges).expect("colored Cayley graph is simple")
    }

    /// Per-vertex profile, computed at the identity (all vertices look alike).
    pub fn profile(&self, t: usize) -> ProfileTerm {
        let g = &self.group;
        let color_of: HashMap<&GroupElement, usize> = self.generators.iter().map(|(s, c)| (s, *c)).collect();
        let mut r = vec![0u64; t];
        let mut c = vec![0u64; t];
        for (_, col) in &self.generators {
            r[col - 1] += 1;
        }
        let nb: Vec<&GroupElement> = self.generators.iter().map(|(s, _)| s).collect();
        for (a_i, a) in nb.iter().enumerate() {
            for b in &nb[a_i + 1..] {
                let d = g.add(b, &g.neg(a));
                if let Some(col) = color_of.get(&d) {
                    c[col - 1] += 1;
                }
            }
        }
        ProfileTerm::new(r, c, format!("Cayley({})", self.group))
    }
}

/// Colored Cayley blocks on all groups up to `max_order` whose generating pairs
/// number at most `max_classes`; one block per distinct profile (smallest first).
pub fn block_library(t: usize, max_order: u32, max_classes: usize) -> Vec<(ColoredCayley, ProfileTerm)> {
    let mut seen: HashSet<(Vec<u64>, Vec<u64>)> = HashSet::new();
    let mut out = Vec::new();
    for n in 2..=max_order {
        for group in groups_of_order(n) {
            let mut classes: Vec<Vec<GroupElement>> = Vec::new();
            for i in 1..n as usize {
                let x = group.element_at(i);
                let nx = group.neg(&x);
                if group.index_of(&nx) >= i {
                    classes.push(if nx == x { vec![x] } else { vec![x, nx] });
                }
            }
            if classes.len() > max_classes {
                continue;
            }
            let total = (t as u64 + 1).pow(classes.len() as u32);
            for code in 1..total {
                let mut generators = Vec::new();
                let mut rest = code;
                for class in &classes {
                    let col = (rest % (t as u64 + 1)) as usize;
                    rest /= t as u64 + 1;
                    if col > 0 {
                        generators.extend(class.iter().map(|x| (x.clone(), col)));
                    }
                }
                let block = ColoredCayley { group: group.clone(), generators };
                let p = block.profile(t);
                if seen.insert((p.r.clone(), p.c.clone())) {
                    out.push((block, p));
                }
            }
        }
    }
    out
}

fn flip_ok(r: &[u64], c: &[u64]) -> bool {
    (1..r.len()).all(|i| r[i] > r[i - 1] && r[i - 1] + c[i - 1] > r[i] + c[i])
}

/// A flip graph on `t` colors with at most `n_max` vertices, or `None` once `budget` candidate
/// products have been examined. The result is verified before it is returned.
pub fn find_flip_graph(t: usize, n_max: usize, budget: u64) -> Option<ColoredGraph> {
    if t == 0 || n_max < 2 {
        return None;
    }
    if t == 1 {
        return Some(crate::graph::families::complete(2, 1, 1));
    }
    let max_order = (n_max as u32).min(12);
    let library = block_library(t, max_order, 6);
    let mut visited = 0u64;
    let mut chosen = Vec::new();
    let found = search(&library, 0, 1, n_max, &vec![0; t], &vec![0; t], &mut chosen, &mut visited, budget);
    let picks = found?;
    let mut graph = library[picks[0]].0.graph(t);
    for &k in &picks[1..] {
        graph = graph.cartesian_product(&library[k].0.graph(t)).ok()?;
    }
    (graph.check_flip() == FlipVerdict::Valid).then_some(graph)
}

#[allow(clippy::too_many_arguments)]
fn search(
    lib: &[(ColoredCayley, ProfileTerm)],
    start: usize,
    size: usize,
    n_max: usize,
    r: &[u64],
    c: &[u64],
    chosen: &mut Vec<usize>,
    visited: &mut u64,
    budget: u64,
) -> Option<Vec<usize>> {
    for k in start..lib.len() {
        let (block, p) = &lib[k];
        let next = size * block.order();
        if next > n_max {
            continue;
        }
        *visited += 1;
        if *visited > budget {
            return None;
        }
        let r2: Vec<u64> = r.iter().zip(&p.r).map(|(a, b)| a + b).collect();
        let c2: Vec<u64> = c.iter().zip(&p.c).map(|(a, b)| a + b).collect();
        chosen.push(k);
        if flip_ok(&r2, &c2) {
            return Some(chosen.clone());
        }
        if let Some(found) = search(lib, k, next, n_max, &r2, &c2, chosen, visited, budget) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}
