//! Edge-colored simple graphs and their per-vertex triangle profiles.
//!
//! Vertices are `0..n`, colors are `1..=t`. A graph is immutable once built;
//! all constructors validate simplicity and color range.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Graphs with at most this many vertices also carry bit-packed adjacency rows.
pub const DEFAULT_BITSET_THRESHOLD: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("color count must be positive")]
    NoColors,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("color {color} out of range 1..={t}")]
    ColorOutOfRange { color: usize, t: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("color counts differ: {0} vs {1}")]
    ColorCountMismatch(usize, usize),
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("edge count mismatch: header says {expected}, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for GraphError {
    fn from(e: std::io::Error) -> Self {
        GraphError::Io(e.to_string())
    }
}

/// An undirected edge `{u, v}` with `u < v` and a 1-based color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub color: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize, color: usize) -> Self {
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        Edge { u, v, color }
    }
}

#[derive(Clone)]
struct BitRows {
    words: usize,
    /// `all[v]` is the neighbor set of `v`.
    all: Vec<u64>,
    /// `by_color[i][v]` is the color-(i+1) neighbor set of `v`.
    by_color: Vec<Vec<u64>>,
}

impl BitRows {
    fn row<'a>(&self, data: &'a [u64], v: usize) -> &'a [u64] {
        &data[v * self.words..(v + 1) * self.words]
    }
}

/// A simple undirected graph with one color per edge.
#[derive(Clone)]
pub struct ColoredGraph {
    t: usize,
    n: usize,
    edges: Vec<Edge>,
    /// Sorted `(neighbor, color)` lists.
    adj: Vec<Vec<(usize, usize)>>,
    bits: Option<BitRows>,
}

impl PartialEq for ColoredGraph {
    fn eq(&self, other: &Self) -> bool {
        self.t == other.t && self.n == other.n && self.edges == other.edges
    }
}
impl Eq for ColoredGraph {}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ColoredGraph")
            .field("t", &self.t)
            .field("n", &self.n)
            .field("m", &self.edges.len())
            .finish()
    }
}

impl ColoredGraph {
    pub fn new(t: usize, n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        Self::with_threshold(t, n, edges, DEFAULT_BITSET_THRESHOLD)
    }

    /// Like [`ColoredGraph::new`] but with an explicit bitset threshold
    /// (`0` disables the bit-packed rows).
    pub fn with_threshold(
        t: usize,
        n: usize,
        edges: impl IntoIterator<Item = Edge>,
        bitset_threshold: usize,
    ) -> Result<Self, GraphError> {
        if t == 0 {
            return Err(GraphError::NoColors);
        }
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for e in edges {
            let e = Edge::new(e.u, e.v, e.color);
            if e.v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: e.v, n });
            }
            if e.u == e.v {
                return Err(GraphError::SelfLoop(e.u));
            }
            if e.color == 0 || e.color > t {
                return Err(GraphError::ColorOutOfRange { color: e.color, t });
            }
            if !seen.insert((e.u, e.v)) {
                return Err(GraphError::DuplicateEdge(e.u, e.v));
            }
            list.push(e);
        }
        list.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for e in &list {
            adj[e.u].push((e.v, e.color));
            adj[e.v].push((e.u, e.color));
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let bits = (n > 0 && n <= bitset_threshold).then(|| {
            let words = n.div_ceil(64);
            let mut all = vec![0u64; n * words];
            let mut by_color = vec![vec![0u64; n * words]; t];
            for e in &list {
                for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                    all[a * words + b / 64] |= 1 << (b % 64);
                    by_color[e.color - 1][a * words + b / 64] |= 1 << (b % 64);
                }
            }
            BitRows { words, all, by_color }
        });
        Ok(ColoredGraph { t, n, edges: list, adj, bits })
    }

    /// Monochrome graph from plain vertex pairs.
    pub fn monochrome(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        Self::new(1, n, pairs.into_iter().map(|(a, b)| Edge::new(a, b, 1)))
    }

    pub fn colors(&self) -> usize {
        self.t
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted by `(u, v)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_bitsets(&self) -> bool {
        self.bits.is_some()
    }

    /// Color of edge `{a, b}`, if present.
    pub fn edge_color(&self, a: usize, b: usize) -> Option<usize> {
        let list = &self.adj[a];
        list.binary_search_by_key(&b, |&(w, _)| w).ok().map(|i| list[i].1)
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        if let Some(bits) = &self.bits {
            return bits.row(&bits.all, a)[b / 64] >> (b % 64) & 1 == 1;
        }
        self.edge_color(a, b).is_some()
    }

    /// Same edges, declared with `t` colors (`t` must cover every used color).
    pub fn with_color_count(&self, t: usize) -> Result<Self, GraphError> {
        Self::new(t, self.n, self.edges.iter().copied())
    }

    /// Applies `map[c - 1]` to every edge color and declares `t` colors.
    pub fn recolor(&self, t: usize, map: &[usize]) -> Result<Self, GraphError> {
        Self::new(
            t,
            self.n,
            self.edges.iter().map(|e| Edge::new(e.u, e.v, map[e.color - 1])),
        )
    }

    /// Profile of a single vertex.
    pub fn vertex_profile(&self, v: usize) -> VertexProfile {
        let mut deg = vec![0u64; self.t];
        for &(_, c) in &self.adj[v] {
            deg[c - 1] += 1;
        }
        let nbhd = match &self.bits {
            Some(bits) => self.nbhd_counts_bits(bits, v),
            None => self.nbhd_counts_scan(v),
        };
        VertexProfile { deg, nbhd }
    }

    // Each color-i edge inside N(v) is seen from both endpoints.
    fn nbhd_counts_bits(&self, bits: &BitRows, v: usize) -> Vec<u64> {
        let nv = bits.row(&bits.all, v);
        let mut out = vec![0u64; self.t];
        for (i, rows) in bits.by_color.iter().enumerate() {
            let mut twice = 0u64;
            for &(u, _) in &self.adj[v] {
                let ru = bits.row(rows, u);
                twice += ru.iter().zip(nv).map(|(a, b)| (a & b).count_ones() as u64).sum::<u64>();
            }
            out[i] = twice / 2;
        }
        out
    }

    fn nbhd_counts_scan(&self, v: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.t];
        let nv = &self.adj[v];
        for &(u, _) in nv {
            for &(w, c) in &self.adj[u] {
                if w > u && nv.binary_search_by_key(&w, |&(x, _)| x).is_ok() {
                    out[c - 1] += 1;
                }
            }
        }
        out
    }

    /// Per-vertex degrees and neighborhood edge counts, by color.
    pub fn triangle_profile(&self) -> Vec<VertexProfile> {
        (0..self.n).into_par_iter().map(|v| self.vertex_profile(v)).collect()
    }

    /// Uniform `(r, c)` profile, or two vertices whose profiles differ.
    pub fn check_triangle_regular(&self) -> Regularity {
        let profiles = self.triangle_profile();
        let Some(first) = profiles.first() else {
            return Regularity::Uniform(RegularityProfile {
                r: vec![0; self.t],
                c: vec![0; self.t],
            });
        };
        match profiles.iter().position(|p| p != first) {
            None => Regularity::Uniform(RegularityProfile {
                r: first.deg.clone(),
                c: first.nbhd.clone(),
            }),
            Some(w) => Regularity::NonUniform { a: 0, b: w },
        }
    }

    /// Checks the strict flip inequalities at every vertex.
    pub fn check_flip(&self) -> FlipVerdict {
        for v in 0..self.n {
            let p = self.vertex_profile(v);
            if let Some((i, j, reason)) = p.flip_violation() {
                return FlipVerdict::Violation { vertex: v, lower: i, higher: j, reason };
            }
        }
        FlipVerdict::Valid
    }

    /// Cartesian product; vertex `(a, b)` becomes `a * h.n + b`.
    pub fn cartesian_product(&self, h: &ColoredGraph) -> Result<ColoredGraph, GraphError> {
        if self.t != h.t {
            return Err(GraphError::ColorCountMismatch(self.t, h.t));
        }
        let hn = h.n;
        let mut edges = Vec::with_capacity(self.edges.len() * hn + h.edges.len() * self.n);
        for e in &self.edges {
            for b in 0..hn {
                edges.push(Edge::new(e.u * hn + b, e.v * hn + b, e.color));
            }
        }
        for a in 0..self.n {
            for e in &h.edges {
                edges.push(Edge::new(a * hn + e.u, a * hn + e.v, e.color));
            }
        }
        ColoredGraph::new(self.t, self.n * hn, edges)
    }

    /// Vertex-disjoint union; `h`'s vertices are shifted by `self.n`.
    pub fn disjoint_union(&self, h: &ColoredGraph) -> Result<ColoredGraph, GraphError> {
        if self.t != h.t {
            return Err(GraphError::ColorCountMismatch(self.t, h.t));
        }
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(h.edges.iter().map(|e| Edge::new(e.u + shift, e.v + shift, e.color)));
        ColoredGraph::new(self.t, self.n + h.n, edges)
    }

    /// All triangles `(a, b, c)` with `a < b < c`.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for e in &self.edges {
            for &(w, _) in &self.adj[e.v] {
                if w > e.v && self.adjacent(e.u, w) {
                    out.push([e.u, e.v, w]);
                }
            }
        }
        out
    }
}

/// Degrees and neighborhood edge counts of one vertex, by color.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexProfile {
    pub deg: Vec<u64>,
    pub nbhd: Vec<u64>,
}

impl VertexProfile {
    /// Color-i edges in the closed neighborhood: the vertex's own plus those inside N(v).
    pub fn closed(&self, i: usize) -> u64 {
        self.deg[i] + self.nbhd[i]
    }

    /// First pair `i < j` (0-based) breaking the flip inequalities.
    pub fn flip_violation(&self) -> Option<(usize, usize, FlipReason)> {
        let t = self.deg.len();
        for i in 0..t {
            for j in i + 1..t {
                if self.deg[j] <= self.deg[i] {
                    return Some((i, j, FlipReason::Degree));
                }
                if self.closed(i) <= self.closed(j) {
                    return Some((i, j, FlipReason::ClosedNeighborhood));
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityProfile {
    pub r: Vec<u64>,
    pub c: Vec<u64>,
}

impl fmt::Display for RegularityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r={:?}, c={:?})", self.r, self.c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regularity {
    Uniform(RegularityProfile),
    NonUniform { a: usize, b: usize },
}

impl Regularity {
    pub fn uniform(&self) -> Option<&RegularityProfile> {
        match self {
            Regularity::Uniform(p) => Some(p),
            Regularity::NonUniform { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlipReason {
    /// The higher color does not have strictly larger degree.
    Degree,
    /// The lower color does not have strictly more closed-neighborhood edges.
    ClosedNeighborhood,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlipVerdict {
    Valid,
    /// Colors are 0-based indices.
    Violation { vertex: usize, lower: usize, higher: usize, reason: FlipReason },
}

/// The `(r, c)` profile of a verified factor. Profiles add under Cartesian products.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileTerm {
    pub r: Vec<u64>,
    pub c: Vec<u64>,
    pub description: String,
}

impl ProfileTerm {
    pub fn new(r: Vec<u64>, c: Vec<u64>, description: impl Into<String>) -> Self {
        assert_eq!(r.len(), c.len());
        ProfileTerm { r, c, description: description.into() }
    }

    pub fn zero(t: usize) -> Self {
        Self::new(vec![0; t], vec![0; t], "point")
    }

    pub fn colors(&self) -> usize {
        self.r.len()
    }

    /// Componentwise sum. Panics on mismatched color counts.
    pub fn add(&self, other: &ProfileTerm) -> ProfileTerm {
        assert_eq!(self.colors(), other.colors(), "profile color counts differ");
        ProfileTerm {
            r: self.r.iter().zip(&other.r).map(|(a, b)| a + b).collect(),
            c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect(),
            description: format!("{} □ {}", self.description, other.description),
        }
    }

    pub fn sum<'a>(t: usize, terms: impl IntoIterator<Item = &'a ProfileTerm>) -> ProfileTerm {
        terms.into_iter().fold(Self::zero(t), |acc, x| {
            if acc.description == "point" {
                x.clone()
            } else {
                acc.add(x)
            }
        })
    }

    pub fn as_vertex_profile(&self) -> VertexProfile {
        VertexProfile { deg: self.r.clone(), nbhd: self.c.clone() }
    }

    pub fn is_flip(&self) -> bool {
        self.as_vertex_profile().flip_violation().is_none()
    }

    /// Profile of a verified graph, or `None` if not uniform.
    pub fn of_graph(g: &ColoredGraph, description: impl Into<String>) -> Option<ProfileTerm> {
        match g.check_triangle_regular() {
            Regularity::Uniform(p) => Some(ProfileTerm::new(p.r, p.c, description)),
            Regularity::NonUniform { .. } => None,
        }
    }
}

/// Standard small graphs used by constructions and tests.
pub mod families {
    use super::{ColoredGraph, Edge};

    /// `K_n` in one color, declared with `t` colors.
    pub fn complete(n: usize, color: usize, t: usize) -> ColoredGraph {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| Edge::new(a, b, color)));
        ColoredGraph::new(t, n, edges).expect("complete graph is valid")
    }

    pub fn cycle(n: usize, color: usize, t: usize) -> ColoredGraph {
        assert!(n >= 3);
        let edges = (0..n).map(|a| Edge::new(a, (a + 1) % n, color));
        ColoredGraph::new(t, n, edges).expect("cycle is valid")
    }

    /// `K_{m,m}` with sides `0..m` and `m..2m`.
    pub fn complete_bipartite(m: usize, color: usize, t: usize) -> ColoredGraph {
        circulant_bipartite(m, m, color, t)
    }

    /// `d`-regular bipartite graph on `2m` vertices: left `j` joins right `j, j+1, ..., j+d-1 (mod m)`.
    pub fn circulant_bipartite(m: usize, d: usize, color: usize, t: usize) -> ColoredGraph {
        assert!(d <= m);
        let edges = (0..m).flat_map(|j| (0..d).map(move |k| Edge::new(j, m + (j + k) % m, color)));
        ColoredGraph::new(t, 2 * m, edges).expect("circulant bipartite graph is valid")
    }

    pub fn petersen() -> ColoredGraph {
        let mut pairs = Vec::new();
        for i in 0..5 {
            pairs.push((i, (i + 1) % 5));
            pairs.push((i, i + 5));
            pairs.push((5 + i, 5 + (i + 2) % 5));
        }
        ColoredGraph::monochrome(10, pairs).expect("petersen is valid")
    }

    pub fn empty(n: usize, t: usize) -> ColoredGraph {
        ColoredGraph::new(t, n, []).expect("empty graph is valid")
    }

    /// `K_{2m}` minus a perfect matching `{j, j+m}`.
    pub fn cocktail_party(m: usize, color: usize, t: usize) -> ColoredGraph {
        let n = 2 * m;
        let edges = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| b != a + m)
            .map(|(a, b)| Edge::new(a, b, color));
        ColoredGraph::new(t, n, edges).expect("cocktail party graph is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    fn all_same(g: &ColoredGraph, deg: &[u64], nbhd: &[u64]) -> bool {
        g.triangle_profile()
            .iter()
            .all(|p| p.deg == deg && p.nbhd == nbhd)
    }

    #[test]
    fn k5_profile() {
        assert!(all_same(&complete(5, 1, 1), &[4], &[6]));
    }

    #[test]
    fn petersen_is_triangle_free() {
        assert!(all_same(&petersen(), &[3], &[0]));
    }

    #[test]
    fn k6_minus_matching() {
        let g = cocktail_party(3, 1, 1);
        assert!(all_same(&g, &[4], &[4]));
    }

    #[test]
    fn k4_with_one_recolored_edge_is_not_uniform() {
        let edges = (0..4)
            .flat_map(|a| (a + 1..4).map(move |b| (a, b)))
            .map(|(a, b)| Edge::new(a, b, if (a, b) == (0, 1) { 2 } else { 1 }));
        let g = ColoredGraph::new(2, 4, edges).unwrap();
        let profiles = g.triangle_profile();
        // endpoints of the recolored edge see it as their own edge; the others see it in N(v)
        assert_eq!(profiles[0], VertexProfile { deg: vec![2, 1], nbhd: vec![3, 0] });
        assert_eq!(profiles[2], VertexProfile { deg: vec![3, 0], nbhd: vec![2, 1] });
        assert!(matches!(g.check_triangle_regular(), Regularity::NonUniform { .. }));
    }

    #[test]
    fn two_triangles() {
        let g = ColoredGraph::monochrome(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(
            g.check_triangle_regular(),
            Regularity::Uniform(RegularityProfile { r: vec![2], c: vec![1] })
        );
    }

    #[test]
    fn flip_checks() {
        assert_eq!(petersen().check_flip(), FlipVerdict::Valid);
        let k4 = complete(4, 1, 2);
        assert!(matches!(
            k4.check_flip(),
            FlipVerdict::Violation { reason: FlipReason::Degree, .. }
        ));
    }

    #[test]
    fn rook_graph() {
        let k3 = complete(3, 1, 1);
        let g = k3.cartesian_product(&k3).unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(
            g.check_triangle_regular().uniform().unwrap(),
            &RegularityProfile { r: vec![4], c: vec![2] }
        );
    }

    #[test]
    fn k5_times_c5() {
        let g = complete(5, 1, 1).cartesian_product(&cycle(5, 1, 1)).unwrap();
        let p = g.check_triangle_regular();
        assert_eq!(p.uniform().unwrap(), &RegularityProfile { r: vec![6], c: vec![6] });
        let sum = ProfileTerm::of_graph(&complete(5, 1, 1), "K5")
            .unwrap()
            .add(&ProfileTerm::of_graph(&cycle(5, 1, 1), "C5").unwrap());
        assert_eq!(sum.r, vec![6]);
        assert_eq!(sum.c, vec![6]);
    }

    #[test]
    fn product_with_point_is_identity() {
        let g = petersen();
        assert_eq!(g.cartesian_product(&empty(1, 1)).unwrap(), g);
    }

    #[test]
    fn product_rejects_mismatched_colors() {
        assert_eq!(
            complete(3, 1, 1).cartesian_product(&complete(3, 1, 2)),
            Err(GraphError::ColorCountMismatch(1, 2))
        );
    }

    #[test]
    fn add_profiles() {
        let a = ProfileTerm::new(vec![4], vec![6], "a");
        let b = ProfileTerm::new(vec![2], vec![0], "b");
        let s = a.add(&b);
        assert_eq!((s.r, s.c), (vec![6], vec![6]));
        let a = ProfileTerm::new(vec![8, 0], vec![28, 0], "a");
        let b = ProfileTerm::new(vec![0, 9], vec![0, 36], "b");
        let s = a.add(&b);
        assert_eq!((s.r, s.c), (vec![8, 9], vec![28, 36]));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            ColoredGraph::new(1, 3, [Edge::new(0, 1, 1), Edge::new(1, 0, 1)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            ColoredGraph::new(2, 3, [Edge::new(0, 1, 3)]),
            Err(GraphError::ColorOutOfRange { color: 3, t: 2 })
        );
        assert_eq!(ColoredGraph::new(1, 3, [Edge::new(2, 2, 1)]), Err(GraphError::SelfLoop(2)));
    }

    #[test]
    fn bitset_and_scan_paths_agree() {
        let g = complete(6, 1, 2).cartesian_product(&cocktail_party(2, 2, 2)).unwrap();
        let plain = ColoredGraph::with_threshold(2, g.vertex_count(), g.edges().iter().copied(), 0).unwrap();
        assert!(g.has_bitsets() && !plain.has_bitsets());
        assert_eq!(g.triangle_profile(), plain.triangle_profile());
    }
}
