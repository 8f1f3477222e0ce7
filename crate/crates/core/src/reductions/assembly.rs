//! Gluing template instances into one graph: shared vertices, dangling ports paired into
//! edges, a conformance check against the templates, and coloring by template states.

use std::collections::HashMap;

use serde::Serialize;

use super::coloring::{local_edges, Problem, BLUE};
use super::gadgets::GadgetTemplate;
use crate::graph::{ColoredGraph, Edge};

#[derive(Debug, Clone, Serialize)]
pub struct Instance {
    /// Index into the assembly's template list.
    pub template: usize,
    pub copy: usize,
    /// Template vertex to global vertex.
    pub vertices: Vec<usize>,
    /// Template edge (then dangling edge) to global edge id, once paired.
    pub edges: Vec<Option<usize>>,
}

/// A dangling half-edge waiting for its partner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Port {
    pub instance: usize,
    /// Index among the template's dangling edges.
    pub slot: usize,
    pub anchor: usize,
}

#[derive(Debug, Clone, Default)]
pub struct Assembly {
    pub templates: Vec<GadgetTemplate>,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    pub instances: Vec<Instance>,
    /// Pairing edges, as global edge ids.
    pub ledger: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ConformanceIssue {
    /// A template-internal vertex whose degree or neighborhood edge count differs from the template.
    LocalMismatch { instance: usize, vertex: usize },
    Unpaired { instance: usize, slot: usize },
    /// A vertex internal to no instance, or to several.
    Coverage { vertex: usize, count: usize },
    LedgerTriangle { edge: usize },
}

impl Assembly {
    pub fn new(templates: Vec<GadgetTemplate>) -> Self {
        Assembly { templates, ..Default::default() }
    }

    pub fn fresh(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn edge_id(&mut self, a: usize, b: usize) -> usize {
        let key = (a.min(b), a.max(b));
        if let Some(&k) = self.index.get(&key) {
            return k;
        }
        self.edges.push(key);
        self.index.insert(key, self.edges.len() - 1);
        self.edges.len() - 1
    }

    /// Places a template copy. `fixed` maps some template vertices to existing vertices;
    /// the rest are new. Edges already present are shared. Returns the instance id and its ports.
    pub fn place(&mut self, template: usize, copy: usize, fixed: &[(usize, usize)]) -> (usize, Vec<Port>) {
        let t = &self.templates[template];
        let (tn, tedges, tdangling) = (t.n, t.edges.clone(), t.dangling.clone());
        let mut vertices = vec![usize::MAX; tn];
        fixed.iter().for_each(|&(tv, g)| vertices[tv] = g);
        for v in vertices.iter_mut().filter(|v| **v == usize::MAX) {
            self.n += 1;
            *v = self.n - 1;
        }
        let mut edges: Vec<Option<usize>> = tedges.iter().map(|&(a, b)| Some(self.edge_id(vertices[a], vertices[b]))).collect();
        edges.extend(std::iter::repeat_n(None, tdangling.len()));
        let id = self.instances.len();
        let ports = tdangling.iter().enumerate().map(|(slot, &a)| Port { instance: id, slot, anchor: vertices[a] }).collect();
        self.instances.push(Instance { template, copy, vertices, edges });
        (id, ports)
    }

    pub fn pair(&mut self, x: Port, y: Port) {
        let e = self.edge_id(x.anchor, y.anchor);
        let tx = self.templates[self.instances[x.instance].template].edges.len();
        let ty = self.templates[self.instances[y.instance].template].edges.len();
        self.instances[x.instance].edges[tx + x.slot] = Some(e);
        self.instances[y.instance].edges[ty + y.slot] = Some(e);
        self.ledger.push(e);
    }

    /// A pairing edge between two vertices that are not template ports.
    pub fn join(&mut self, a: usize, b: usize) {
        let e = self.edge_id(a, b);
        self.ledger.push(e);
    }

    /// Turns an unpaired port into an edge to a new free vertex.
    pub fn stub(&mut self, x: Port) -> usize {
        let s = self.fresh();
        let e = self.edge_id(x.anchor, s);
        let tx = self.templates[self.instances[x.instance].template].edges.len();
        self.instances[x.instance].edges[tx + x.slot] = Some(e);
        s
    }

    pub fn graph(&self, t: usize, colors: Option<&[usize]>) -> ColoredGraph {
        let edges = self.edges.iter().enumerate().map(|(k, &(a, b))| Edge::new(a, b, colors.map_or(1, |c| c[k])));
        ColoredGraph::new(t, self.n, edges).expect("assembly edges are simple and deduplicated")
    }

    /// Every template-internal vertex sees exactly its template neighborhood, every port is
    /// paired or stubbed, and no ledger edge lies in a triangle.
    pub fn conformance(&self, require_cover: bool) -> Vec<ConformanceIssue> {
        let mut issues = Vec::new();
        let (inc, nb) = local_edges(self.n, &self.edges);
        let mut cover = vec![0usize; self.n];
        for (i, inst) in self.instances.iter().enumerate() {
            let t = &self.templates[inst.template];
            let p = t.problem();
            let (tinc, tnb) = local_edges(p.n, &p.edges);
            for &v in &t.internal {
                let g = inst.vertices[v];
                cover[g] += 1;
                if tinc[v].len() != inc[g].len() || tnb[v].len() != nb[g].len() {
                    issues.push(ConformanceIssue::LocalMismatch { instance: i, vertex: g });
                }
            }
            for (slot, e) in inst.edges[t.edges.len()..].iter().enumerate() {
                if e.is_none() {
                    issues.push(ConformanceIssue::Unpaired { instance: i, slot });
                }
            }
        }
        if require_cover {
            for (v, &count) in cover.iter().enumerate() {
                if count != 1 {
                    issues.push(ConformanceIssue::Coverage { vertex: v, count });
                }
            }
        }
        issues.extend(self.ledger_triangles().into_iter().map(|edge| ConformanceIssue::LedgerTriangle { edge }));
        issues
    }

    /// Ledger edges lying in some triangle.
    pub fn ledger_triangles(&self) -> Vec<usize> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj.iter_mut().for_each(|l| l.sort_unstable());
        self.ledger
            .iter()
            .copied()
            .filter(|&e| {
                let (a, b) = self.edges[e];
                adj[a].iter().any(|x| adj[b].binary_search(x).is_ok())
            })
            .collect()
    }

    /// Colors instances in order. `choice(i)` may name a required coloring of instance `i`;
    /// otherwise the first one consistent with colors already placed is used.
    pub fn color_by_states(
        &self,
        order: &[usize],
        choice: &dyn Fn(usize) -> Option<usize>,
    ) -> Result<Vec<usize>, usize> {
        let mut color = vec![0usize; self.edges.len()];
        for &i in order {
            let inst = &self.instances[i];
            let t = &self.templates[inst.template];
            let consistent = |c: &Vec<usize>| {
                inst.edges.iter().zip(c).all(|(e, &x)| e.is_none_or(|e| color[e] == 0 || color[e] == x))
            };
            let pick = match choice(i) {
                Some(k) => t.required.get(k).filter(|c| consistent(c)),
                None => t.required.iter().find(|c| consistent(c)),
            };
            let c = pick.ok_or(i)?;
            for (e, &x) in inst.edges.iter().zip(c) {
                if let Some(e) = e {
                    color[*e] = x;
                }
            }
        }
        Ok(color)
    }

    /// Solver input: stub vertices free, stub edges blue, every other vertex constrained.
    pub fn problem(&self, stubs: &[usize]) -> Problem {
        let mut constrained = vec![true; self.n];
        stubs.iter().for_each(|&s| constrained[s] = false);
        let fixed = self.edges.iter().map(|&(a, b)| (!constrained[a] || !constrained[b]).then_some(BLUE)).collect();
        Problem { n: self.n, edges: self.edges.clone(), constrained, fixed }
    }
}
