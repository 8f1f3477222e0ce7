//! Gadget templates: a small graph with dangling half-edges, the vertices whose local
//! constraints apply, and the exact set of admissible colorings.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use super::coloring::{enumerate, Mode, Problem, BLUE, RED};
use crate::graph::{ColoredGraph, Edge, GraphError};
use crate::io::{format_graph, parse_graph_prefix};

#[derive(Debug, Error)]
pub enum GadgetError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("line {line}: {msg}")]
    Section { line: usize, msg: String },
    #[error("enumeration of {0} exceeded its node budget")]
    Budget(String),
    #[error("template {name} is not rigid: found {found} admissible colorings, expected {expected}")]
    NotRigid { name: String, found: usize, expected: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Boundary {
    /// Dangling edges are colored freely.
    Free,
    /// Dangling edges are blue.
    Blue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetTemplate {
    pub name: String,
    pub n: usize,
    /// Vertices whose local constraints are enforced.
    pub internal: Vec<usize>,
    pub attachments: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    /// Anchor vertex of each dangling half-edge.
    pub dangling: Vec<usize>,
    /// Edges to attachments that the boundary assumption also colors blue.
    pub pinned: Vec<usize>,
    pub boundary: Boundary,
    pub mode: Mode,
    /// Admissible colorings over `edges` followed by `dangling`.
    pub required: Vec<Vec<usize>>,
    /// Vertex permutation under which `required` is closed.
    pub rotation: Option<Vec<usize>>,
}

/// Incremental construction of templates.
#[derive(Debug, Default)]
pub(crate) struct Sketch {
    pub n: usize,
    pub internal: Vec<usize>,
    pub attachments: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub colors: Vec<usize>,
    pub dangling: Vec<usize>,
    pub pinned: Vec<usize>,
}

impl Sketch {
    pub fn vertex(&mut self, internal: bool) -> usize {
        self.n += 1;
        if internal {
            self.internal.push(self.n - 1);
        } else {
            self.attachments.push(self.n - 1);
        }
        self.n - 1
    }

    pub fn edge(&mut self, a: usize, b: usize, color: usize) {
        self.edges.push((a, b));
        self.colors.push(color);
    }

    /// A blue edge fixed by the boundary assumption.
    pub fn pin(&mut self, a: usize, b: usize) {
        self.pinned.push(self.edges.len());
        self.edge(a, b, BLUE);
    }

    pub fn dangle(&mut self, v: usize, k: usize) {
        self.dangling.extend(std::iter::repeat_n(v, k));
    }

    /// A red clique on `vs`.
    pub fn clique(&mut self, vs: &[usize]) {
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                self.edge(a, b, RED);
            }
        }
    }

    /// The template whose only admissible coloring is the sketch's colors with blue danglers.
    pub fn unique(self, name: &str, boundary: Boundary) -> GadgetTemplate {
        let mut c = self.colors.clone();
        c.extend(std::iter::repeat_n(BLUE, self.dangling.len()));
        self.finish(name, boundary, vec![c], None)
    }

    pub fn finish(self, name: &str, boundary: Boundary, required: Vec<Vec<usize>>, rotation: Option<Vec<usize>>) -> GadgetTemplate {
        GadgetTemplate {
            name: name.into(),
            n: self.n,
            internal: self.internal,
            attachments: self.attachments,
            edges: self.edges,
            dangling: self.dangling,
            pinned: self.pinned,
            boundary,
            mode: Mode::Flip,
            required,
            rotation,
        }
        .normalized()
    }
}

impl GadgetTemplate {
    /// Orients edges `u < v` and sorts them, permuting the admissible colorings to match.
    /// This is the order the graph format stores.
    pub fn normalized(mut self) -> Self {
        let m = self.edges.len();
        let mut idx: Vec<usize> = (0..m).collect();
        self.edges.iter_mut().for_each(|e| *e = (e.0.min(e.1), e.0.max(e.1)));
        idx.sort_by_key(|&k| self.edges[k]);
        self.edges = idx.iter().map(|&k| self.edges[k]).collect();
        let mut pos = vec![0; m];
        idx.iter().enumerate().for_each(|(new, &old)| pos[old] = new);
        self.pinned.iter_mut().for_each(|k| *k = pos[*k]);
        self.pinned.sort_unstable();
        for c in &mut self.required {
            let tail = c.split_off(m);
            *c = idx.iter().map(|&k| c[k]).chain(tail).collect();
        }
        self
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len() + self.dangling.len()
    }

    /// Dangling edges become edges to fresh free vertices `n, n+1, ...`.
    pub fn problem(&self) -> Problem {
        let mut edges = self.edges.clone();
        edges.extend(self.dangling.iter().enumerate().map(|(k, &v)| (v, self.n + k)));
        let mut constrained = vec![false; self.n + self.dangling.len()];
        self.internal.iter().for_each(|&v| constrained[v] = true);
        let mut fixed = vec![None; edges.len()];
        if self.boundary == Boundary::Blue {
            fixed[self.edges.len()..].iter_mut().for_each(|f| *f = Some(BLUE));
            self.pinned.iter().for_each(|&k| fixed[k] = Some(BLUE));
        }
        Problem { n: constrained.len(), edges, constrained, fixed }
    }

    /// The edge permutation induced by `rotation`; danglers keep their order at each anchor.
    pub fn edge_rotation(&self) -> Option<Vec<usize>> {
        let pi = self.rotation.as_ref()?;
        let ids: HashMap<(usize, usize), usize> =
            self.edges.iter().enumerate().map(|(k, &(a, b))| ((a.min(b), a.max(b)), k)).collect();
        let mut out = Vec::with_capacity(self.edge_count());
        for &(a, b) in &self.edges {
            let (x, y) = (pi[a], pi[b]);
            out.push(*ids.get(&(x.min(y), x.max(y)))?);
        }
        let mut at: HashMap<usize, Vec<usize>> = HashMap::new();
        for (k, &v) in self.dangling.iter().enumerate() {
            at.entry(v).or_default().push(self.edges.len() + k);
        }
        let mut seen: HashMap<usize, usize> = HashMap::new();
        for &v in &self.dangling {
            let j = seen.entry(v).or_insert(0);
            out.push(*at.get(&pi[v])?.get(*j)?);
            *j += 1;
        }
        Some(out)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RigidityReport {
    pub name: String,
    pub edges: usize,
    pub found: usize,
    pub required: usize,
    pub matches: bool,
    /// Orbits of the found set under the template rotation.
    pub rotation_classes: Option<usize>,
    pub rotation_closed: Option<bool>,
    pub nodes: u64,
}

/// Enumeration budget for gadget colorings, in branch nodes.
pub const GADGET_BUDGET: u64 = 1 << 26;

pub fn enumerate_gadget_colorings(t: &GadgetTemplate, mode: Mode) -> Result<(Vec<Vec<usize>>, u64), GadgetError> {
    let e = enumerate(&t.problem(), mode, GADGET_BUDGET).ok_or_else(|| GadgetError::Budget(t.name.clone()))?;
    let mut c = e.colorings;
    c.sort();
    Ok((c, e.nodes))
}

fn rotate(c: &[usize], perm: &[usize]) -> Vec<usize> {
    let mut out = vec![0; c.len()];
    for (k, &p) in perm.iter().enumerate() {
        out[p] = c[k];
    }
    out
}

/// Number of orbits of `set` under the cyclic group of `perm`, and whether the set is closed.
pub fn rotation_classes(set: &[Vec<usize>], perm: &[usize]) -> (usize, bool) {
    let all: BTreeSet<&Vec<usize>> = set.iter().collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let (mut classes, mut closed) = (0, true);
    for c in set {
        if seen.contains(c) {
            continue;
        }
        classes += 1;
        let mut x = c.clone();
        while seen.insert(x.clone()) {
            closed &= all.contains(&x);
            x = rotate(&x, perm);
        }
    }
    (classes, closed)
}

pub fn verify_template(t: &GadgetTemplate) -> Result<RigidityReport, GadgetError> {
    let (found, nodes) = enumerate_gadget_colorings(t, t.mode)?;
    let mut req = t.required.clone();
    req.sort();
    let rot = t.edge_rotation();
    let classes = rot.as_ref().map(|p| rotation_classes(&found, p));
    Ok(RigidityReport {
        name: t.name.clone(),
        edges: t.edge_count(),
        found: found.len(),
        required: req.len(),
        matches: found == req,
        rotation_classes: classes.map(|c| c.0),
        rotation_closed: classes.map(|c| c.1),
        nodes,
    })
}

/// Errors unless the enumerated set equals `required`.
pub fn ensure_rigid(t: &GadgetTemplate) -> Result<RigidityReport, GadgetError> {
    let r = verify_template(t)?;
    if !r.matches {
        return Err(GadgetError::NotRigid { name: t.name.clone(), found: r.found, expected: r.required });
    }
    Ok(r)
}

fn join(xs: impl IntoIterator<Item = usize>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Graph format with extra `internal`, `attach`, `dangling`, `boundary`, `mode`,
/// `required` and `rotation` lines. Edge colors are the first admissible coloring.
pub fn format_template(t: &GadgetTemplate) -> String {
    let first = t.required.first().cloned().unwrap_or_else(|| vec![RED; t.edge_count()]);
    let edges = t.edges.iter().zip(&first).map(|(&(a, b), &c)| Edge::new(a, b, c));
    let g = ColoredGraph::new(2, t.n, edges).expect("template edges are simple");
    let mut s = format!("# gadget {}\n", t.name);
    s.push_str(&format_graph(&g));
    writeln!(s, "internal {}", join(t.internal.iter().copied())).unwrap();
    writeln!(s, "attach {}", join(t.attachments.iter().copied())).unwrap();
    writeln!(s, "dangling {}", join(t.dangling.iter().copied())).unwrap();
    if !t.pinned.is_empty() {
        writeln!(s, "pinned {}", join(t.pinned.iter().copied())).unwrap();
    }
    let b = match t.boundary {
        Boundary::Free => "free",
        Boundary::Blue => "blue",
    };
    writeln!(s, "boundary {b}").unwrap();
    match t.mode {
        Mode::Flip => writeln!(s, "mode flip").unwrap(),
        Mode::Rc { r, c } => writeln!(s, "mode rc {} {} {} {}", r[0], r[1], c[0], c[1]).unwrap(),
    }
    if let Some(p) = &t.rotation {
        writeln!(s, "rotation {}", join(p.iter().copied())).unwrap();
    }
    for c in &t.required {
        writeln!(s, "required {}", join(c.iter().copied())).unwrap();
    }
    s
}

pub fn parse_template(name: &str, text: &str) -> Result<GadgetTemplate, GadgetError> {
    let (g, rest) = parse_graph_prefix(text)?;
    let mut t = GadgetTemplate {
        name: name.into(),
        n: g.vertex_count(),
        internal: vec![],
        attachments: vec![],
        edges: g.edges().iter().map(|e| (e.u, e.v)).collect(),
        dangling: vec![],
        pinned: vec![],
        boundary: Boundary::Free,
        mode: Mode::Flip,
        required: vec![],
        rotation: None,
    };
    for (line, content) in rest {
        let mut toks = content.split_whitespace();
        let key = toks.next().unwrap_or("");
        let words: Vec<&str> = toks.collect();
        let nums = || -> Result<Vec<usize>, GadgetError> {
            words
                .iter()
                .map(|w| w.parse().map_err(|_| GadgetError::Section { line, msg: format!("bad number {w:?}") }))
                .collect()
        };
        match key {
            "internal" => t.internal = nums()?,
            "attach" => t.attachments = nums()?,
            "dangling" => t.dangling = nums()?,
            "pinned" => t.pinned = nums()?,
            "rotation" => t.rotation = Some(nums()?),
            "required" => t.required.push(nums()?),
            "boundary" => {
                t.boundary = match words.first() {
                    Some(&"free") => Boundary::Free,
                    Some(&"blue") => Boundary::Blue,
                    _ => return Err(GadgetError::Section { line, msg: "boundary is free or blue".into() }),
                }
            }
            "mode" => {
                t.mode = match words.first() {
                    Some(&"flip") => Mode::Flip,
                    Some(&"rc") => {
                        let v: Result<Vec<u64>, _> = words[1..].iter().map(|w| w.parse()).collect();
                        let v = v.ok().filter(|v| v.len() == 4);
                        let Some(v) = v else {
                            return Err(GadgetError::Section { line, msg: "expected `mode rc r1 r2 c1 c2`".into() });
                        };
                        Mode::Rc { r: [v[0], v[1]], c: [v[2], v[3]] }
                    }
                    _ => return Err(GadgetError::Section { line, msg: "mode is flip or rc".into() }),
                }
            }
            _ => return Err(GadgetError::Section { line, msg: format!("unknown section {key:?}") }),
        }
    }
    let m = t.edge_count();
    if let Some(bad) = t.required.iter().find(|c| c.len() != m || c.iter().any(|&x| x != RED && x != BLUE)) {
        return Err(GadgetError::Section { line: 0, msg: format!("required coloring of length {} (expected {m})", bad.len()) });
    }
    Ok(t)
}

pub fn save_template(t: &GadgetTemplate, path: impl AsRef<Path>) -> Result<(), GadgetError> {
    std::fs::write(path, format_template(t)).map_err(GraphError::from)?;
    Ok(())
}

pub fn load_template(name: &str, path: impl AsRef<Path>) -> Result<GadgetTemplate, GadgetError> {
    let text = std::fs::read_to_string(path).map_err(GraphError::from)?;
    parse_template(name, &text)
}
