//! Backtracking search for gadget wirings meeting local count targets.

use std::collections::BTreeSet;

use super::coloring::Mode;
use super::gadgets::{enumerate_gadget_colorings, rotation_classes, Boundary, GadgetTemplate};

#[derive(Debug, Clone)]
pub enum DanglingRule {
    /// Exactly this many dangling edges at each vertex.
    Exact(Vec<usize>),
    /// Internal vertices take as many dangling edges as their degree target leaves.
    Fill,
}

#[derive(Debug, Clone)]
pub struct GadgetSpec {
    pub name: String,
    pub n: usize,
    pub internal: Vec<usize>,
    pub attachments: Vec<usize>,
    pub fixed_edges: Vec<(usize, usize)>,
    /// Vertex permutation; candidate edges are added a whole orbit at a time.
    pub symmetry: Vec<usize>,
    /// Total degree target per vertex, dangling edges included; read at internal vertices.
    pub degree: Vec<usize>,
    pub dangling: DanglingRule,
    /// Triangles through every internal vertex in the uncolored gadget.
    pub triangles: Option<usize>,
    pub mode: Mode,
    pub boundary: Boundary,
    pub colorings: Option<usize>,
    /// Admissible colorings up to the symmetry.
    pub classes: Option<usize>,
}

fn orbits(spec: &GadgetSpec) -> Vec<Vec<(usize, usize)>> {
    let fixed: BTreeSet<(usize, usize)> = spec.fixed_edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (i, &a) in spec.internal.iter().enumerate() {
        for &b in &spec.internal[i + 1..] {
            let e = (a.min(b), a.max(b));
            if fixed.contains(&e) || seen.contains(&e) {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = e;
            while seen.insert(x) {
                orbit.push(x);
                let (p, q) = (spec.symmetry[x.0], spec.symmetry[x.1]);
                x = (p.min(q), p.max(q));
            }
            out.push(orbit);
        }
    }
    out
}

fn triangles_at(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![BTreeSet::new(); n];
    for &(a, b) in edges {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let mut t = vec![0; n];
    for &(a, b) in edges {
        for c in adj[a].intersection(&adj[b]) {
            t[*c] += 1;
        }
    }
    // a triangle through c is seen once, from the edge opposite c
    t
}

/// Triangles through internal vertices come from attachment triangles (fixed here) and
/// internal triangles, which add 3 incidences each. When the attachment part is fully
/// determined by fixed edges, the remainder must be a multiple of 3.
fn incidence_obstruction(spec: &GadgetSpec) -> bool {
    let Some(k) = spec.triangles else { return false };
    let fixed: BTreeSet<(usize, usize)> = spec.fixed_edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let is_internal = |v: usize| spec.internal.contains(&v);
    let mut attached_incidences = 0;
    for &a in &spec.attachments {
        let nb: Vec<usize> =
            fixed.iter().filter_map(|&(x, y)| (x == a).then_some(y).or((y == a).then_some(x))).collect();
        for (i, &x) in nb.iter().enumerate() {
            for &y in &nb[i + 1..] {
                let adjacent = fixed.contains(&(x.min(y), x.max(y)));
                if !adjacent && is_internal(x) && is_internal(y) {
                    return false;
                }
                if adjacent {
                    // the triangle a-x-y, counted once per attachment it contains
                    let atts = 1 + usize::from(!is_internal(x)) + usize::from(!is_internal(y));
                    let inc = usize::from(is_internal(x)) + usize::from(is_internal(y));
                    attached_incidences += inc * 6 / atts;
                }
            }
        }
    }
    // incidences were scaled by 6 so shared triangles divide evenly
    let need = 6 * k * spec.internal.len();
    need < attached_incidences || !(need - attached_incidences).is_multiple_of(18)
}

struct Walk<'a> {
    spec: &'a GadgetSpec,
    orbits: Vec<Vec<(usize, usize)>>,
    /// Edge degree budget per vertex.
    cap: Vec<usize>,
    deg: Vec<usize>,
    chosen: Vec<(usize, usize)>,
    tried: usize,
}

impl Walk<'_> {
    fn leaf(&mut self) -> Option<GadgetTemplate> {
        let spec = self.spec;
        let dangling: Vec<usize> = match &spec.dangling {
            DanglingRule::Exact(d) => {
                if spec.internal.iter().any(|&v| self.deg[v] != self.cap[v]) {
                    return None;
                }
                spec.internal.iter().flat_map(|&v| std::iter::repeat_n(v, d[v])).collect()
            }
            DanglingRule::Fill => {
                spec.internal.iter().flat_map(|&v| std::iter::repeat_n(v, self.cap[v] - self.deg[v])).collect()
            }
        };
        let mut edges = spec.fixed_edges.clone();
        edges.extend(&self.chosen);
        if let Some(k) = spec.triangles {
            let t = triangles_at(spec.n, &edges);
            if spec.internal.iter().any(|&v| t[v] != k) {
                return None;
            }
        }
        self.tried += 1;
        let mut tmpl = GadgetTemplate {
            name: spec.name.clone(),
            n: spec.n,
            internal: spec.internal.clone(),
            attachments: spec.attachments.clone(),
            edges,
            dangling,
            pinned: vec![],
            boundary: spec.boundary,
            mode: spec.mode,
            required: vec![],
            rotation: Some(spec.symmetry.clone()),
        }
        .normalized();
        let (found, _) = enumerate_gadget_colorings(&tmpl, spec.mode).ok()?;
        if spec.colorings.is_some_and(|c| c != found.len()) {
            return None;
        }
        if let Some(k) = spec.classes {
            let (classes, closed) = rotation_classes(&found, &tmpl.edge_rotation()?);
            if !closed || classes != k {
                return None;
            }
        }
        tmpl.required = found;
        Some(tmpl)
    }

    fn go(&mut self, i: usize) -> Option<GadgetTemplate> {
        if i == self.orbits.len() {
            return self.leaf();
        }
        let orbit = self.orbits[i].clone();
        let fits = orbit.iter().all(|&(a, b)| self.deg[a] < self.cap[a] && self.deg[b] < self.cap[b]);
        // A vertex may occur twice in an orbit, so re-check after adding.
        if fits {
            orbit.iter().for_each(|&(a, b)| {
                self.deg[a] += 1;
                self.deg[b] += 1;
            });
            if orbit.iter().all(|&(a, b)| self.deg[a] <= self.cap[a] && self.deg[b] <= self.cap[b]) {
                self.chosen.extend(&orbit);
                if let Some(t) = self.go(i + 1) {
                    return Some(t);
                }
                self.chosen.truncate(self.chosen.len() - orbit.len());
            }
            orbit.iter().for_each(|&(a, b)| {
                self.deg[a] -= 1;
                self.deg[b] -= 1;
            });
        }
        self.go(i + 1)
    }
}

/// First wiring, in orbit order with inclusion tried first, whose admissible colorings
/// meet the spec's counts. `None` when the search is exhausted or the degree targets
/// cannot be met by any simple graph.
pub fn search_gadget(spec: &GadgetSpec) -> Option<GadgetTemplate> {
    search_gadget_counted(spec).0
}

/// As `search_gadget`, also returning how many wirings reached the coloring check.
pub fn search_gadget_counted(spec: &GadgetSpec) -> (Option<GadgetTemplate>, usize) {
    let mut deg = vec![0; spec.n];
    for &(a, b) in &spec.fixed_edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let cap: Vec<usize> = (0..spec.n)
        .map(|v| match &spec.dangling {
            DanglingRule::Exact(d) => spec.degree[v].saturating_sub(d[v]),
            DanglingRule::Fill => spec.degree[v],
        })
        .collect();
    if spec.internal.iter().any(|&v| deg[v] > cap[v]) {
        return (None, 0);
    }
    if matches!(spec.dangling, DanglingRule::Exact(_)) {
        let missing: usize = spec.internal.iter().map(|&v| cap[v] - deg[v]).sum();
        if missing % 2 == 1 {
            return (None, 0);
        }
    }
    if incidence_obstruction(spec) {
        return (None, 0);
    }
    let mut walk = Walk { spec, orbits: orbits(spec), cap, deg, chosen: vec![], tried: 0 };
    let found = walk.go(0);
    (found, walk.tried)
}
