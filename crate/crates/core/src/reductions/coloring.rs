//! Two-colorings of a fixed graph under per-vertex constraints, by backtracking with
//! count propagation. Color 1 is red and color 2 is blue.
//!
//! A vertex constrains its incident edges and the edges inside its neighborhood. Only
//! vertices marked `constrained` are checked; the rest (attachment vertices, far ends of
//! dangling edges) are free.

use serde::{Deserialize, Serialize};

use crate::graph::{ColoredGraph, Edge, GraphError};

pub const RED: usize = 1;
pub const BLUE: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Exact red/blue degrees `r` and neighborhood counts `c`.
    Rc { r: [u64; 2], c: [u64; 2] },
    /// Red degree below blue degree, red closed count above blue closed count.
    Flip,
}

impl Mode {
    /// The two-color hardness setting: one red neighbor and one red edge among the neighbors.
    pub const RC_HARD: Mode = Mode::Rc { r: [1, 6], c: [1, 2] };
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub constrained: Vec<bool>,
    /// Pre-assigned colors, e.g. dangling edges under a boundary assumption.
    pub fixed: Vec<Option<usize>>,
}

impl Problem {
    /// Every vertex constrained, nothing fixed; edge colors of `g` are ignored.
    pub fn from_graph(g: &ColoredGraph) -> Self {
        Problem {
            n: g.vertex_count(),
            edges: g.edges().iter().map(|e| (e.u, e.v)).collect(),
            constrained: vec![true; g.vertex_count()],
            fixed: vec![None; g.edge_count()],
        }
    }

    pub fn colored(&self, t: usize, colors: &[usize]) -> Result<ColoredGraph, GraphError> {
        ColoredGraph::new(t, self.n, self.edges.iter().zip(colors).map(|(&(a, b), &c)| Edge::new(a, b, c)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Edge colors in the order of `Problem::edges`.
    Coloring(Vec<usize>),
    Unsat,
    Timeout,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub verdict: Verdict,
    pub nodes: u64,
}

struct Watch {
    inc: Vec<usize>,
    closed: Vec<usize>,
    deg: u64,
    /// Counts by color index 1 and 2; slot 0 unused.
    inc_n: [u64; 3],
    nb_n: [u64; 3],
}

struct Engine {
    mode: Mode,
    color: Vec<usize>,
    watch: Vec<Watch>,
    /// Constrained vertices whose counts involve each edge, with `true` for incident.
    watchers: Vec<Vec<(usize, bool)>>,
    trail: Vec<usize>,
    order: Vec<usize>,
    nodes: u64,
    budget: u64,
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj.iter_mut().for_each(|l| l.sort_unstable());
    adj
}

fn common(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Incident and in-neighborhood edge ids for every vertex.
pub(crate) fn local_edges(n: usize, edges: &[(usize, usize)]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let adj = adjacency(n, edges);
    let mut inc = vec![Vec::new(); n];
    let mut nb = vec![Vec::new(); n];
    for (k, &(a, b)) in edges.iter().enumerate() {
        inc[a].push(k);
        inc[b].push(k);
        for v in common(&adj[a], &adj[b]) {
            nb[v].push(k);
        }
    }
    (inc, nb)
}

/// Per-vertex edge lists for checking complete colorings repeatedly.
pub struct LocalCheck {
    vertices: Vec<(Vec<usize>, Vec<usize>)>,
}

impl LocalCheck {
    pub fn new(p: &Problem) -> Self {
        let (inc, nb) = local_edges(p.n, &p.edges);
        let vertices = inc.into_iter().zip(nb).enumerate().filter(|(v, _)| p.constrained[*v]).map(|(_, x)| x).collect();
        LocalCheck { vertices }
    }

    pub fn ok(&self, mode: Mode, colors: &[usize]) -> bool {
        let count = |ids: &[usize], c: usize| ids.iter().filter(|&&k| colors[k] == c).count() as u64;
        self.vertices.iter().all(|(inc, nb)| {
            let (ir, ib) = (count(inc, RED), count(inc, BLUE));
            let (nr, nbl) = (count(nb, RED), count(nb, BLUE));
            match mode {
                Mode::Rc { r, c } => [ir, ib] == r && [nr, nbl] == c,
                Mode::Flip => ir < ib && ir + nr > ib + nbl,
            }
        })
    }
}

/// Checks a complete coloring at the constrained vertices.
pub fn satisfies_locally(p: &Problem, mode: Mode, colors: &[usize]) -> bool {
    LocalCheck::new(p).ok(mode, colors)
}

impl Engine {
    fn new(p: &Problem, mode: Mode, budget: u64) -> Self {
        let (inc, nb) = local_edges(p.n, &p.edges);
        let mut watchers = vec![Vec::new(); p.edges.len()];
        let mut watch = Vec::with_capacity(p.n);
        for v in 0..p.n {
            if p.constrained[v] {
                inc[v].iter().for_each(|&k| watchers[k].push((v, true)));
                nb[v].iter().for_each(|&k| watchers[k].push((v, false)));
            }
            let mut closed = inc[v].clone();
            closed.extend(&nb[v]);
            watch.push(Watch { deg: inc[v].len() as u64, inc: inc[v].clone(), closed, inc_n: [0; 3], nb_n: [0; 3] });
        }
        // Branch on edges grouped by their lowest constrained endpoint, so search stays local.
        let mut order: Vec<usize> = (0..p.edges.len()).collect();
        let key = |k: usize| {
            let (a, b) = p.edges[k];
            let lo = if p.constrained[a] { a } else { usize::MAX };
            let hi = if p.constrained[b] { b } else { usize::MAX };
            (lo.min(hi), a.max(b))
        };
        order.sort_by_key(|&k| key(k));
        Engine { mode, color: vec![0; p.edges.len()], watch, watchers, trail: Vec::new(), order, nodes: 0, budget }
    }

    fn assign(&mut self, k: usize, c: usize) {
        self.color[k] = c;
        self.trail.push(k);
        for &(v, incident) in &self.watchers[k] {
            let w = &mut self.watch[v];
            if incident {
                w.inc_n[c] += 1;
            } else {
                w.nb_n[c] += 1;
            }
        }
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let k = self.trail.pop().expect("trail is non-empty");
            let c = self.color[k];
            for &(v, incident) in &self.watchers[k] {
                let w = &mut self.watch[v];
                if incident {
                    w.inc_n[c] -= 1;
                } else {
                    w.nb_n[c] -= 1;
                }
            }
            self.color[k] = 0;
        }
    }

    /// Checks vertex `v` and returns the forced (edge, color) pairs, or `None` on a conflict.
    fn examine(&self, v: usize, forced: &mut Vec<(usize, usize)>) -> bool {
        let w = &self.watch[v];
        let nb_len = (w.closed.len() - w.inc.len()) as u64;
        let inc_un = w.deg - w.inc_n[RED] - w.inc_n[BLUE];
        let nb_un = nb_len - w.nb_n[RED] - w.nb_n[BLUE];
        let unassigned = |ids: &[usize], c: usize, out: &mut Vec<(usize, usize)>| {
            out.extend(ids.iter().filter(|&&k| self.color[k] == 0).map(|&k| (k, c)));
        };
        match self.mode {
            Mode::Rc { r, c } => {
                if w.deg != r[0] + r[1] || nb_len != c[0] + c[1] {
                    return false;
                }
                if w.inc_n[RED] > r[0] || w.inc_n[BLUE] > r[1] || w.nb_n[RED] > c[0] || w.nb_n[BLUE] > c[1] {
                    return false;
                }
                let nb = &w.closed[w.inc.len()..];
                if inc_un > 0 && w.inc_n[RED] == r[0] {
                    unassigned(&w.inc, BLUE, forced);
                } else if inc_un > 0 && w.inc_n[BLUE] == r[1] {
                    unassigned(&w.inc, RED, forced);
                }
                if nb_un > 0 && w.nb_n[RED] == c[0] {
                    unassigned(nb, BLUE, forced);
                } else if nb_un > 0 && w.nb_n[BLUE] == c[1] {
                    unassigned(nb, RED, forced);
                }
            }
            Mode::Flip => {
                let red = w.inc_n[RED] + w.nb_n[RED];
                let blue = w.inc_n[BLUE] + w.nb_n[BLUE];
                let un = inc_un + nb_un;
                if 2 * w.inc_n[RED] >= w.deg || red + un <= blue {
                    return false;
                }
                if inc_un > 0 && 2 * (w.inc_n[RED] + 1) >= w.deg {
                    unassigned(&w.inc, BLUE, forced);
                }
                if un > 0 && red + un <= blue + 1 {
                    unassigned(&w.closed, RED, forced);
                }
                // final red counts: incident at most `cap`, closed at least `need`
                let need = w.closed.len() as u64 / 2 + 1;
                let cap = (w.deg - 1) / 2;
                let inc_max = cap.min(w.inc_n[RED] + inc_un);
                let nb_max = w.nb_n[RED] + nb_un;
                if inc_max + nb_max < need {
                    return false;
                }
                if nb_un > 0 && inc_max + nb_max == need {
                    unassigned(&w.closed[w.inc.len()..], RED, forced);
                }
                if inc_un > 0 && w.inc_n[RED] + inc_un + nb_max == need {
                    unassigned(&w.inc, RED, forced);
                }
            }
        }
        true
    }

    /// Assigns `k` and propagates to a fixpoint; false on conflict.
    fn propagate(&mut self, start: &[(usize, usize)]) -> bool {
        let mut pending: Vec<(usize, usize)> = start.to_vec();
        let mut forced = Vec::new();
        while let Some((k, c)) = pending.pop() {
            match self.color[k] {
                0 => self.assign(k, c),
                x if x == c => continue,
                _ => return false,
            }
            for i in 0..self.watchers[k].len() {
                let v = self.watchers[k][i].0;
                forced.clear();
                if !self.examine(v, &mut forced) {
                    return false;
                }
                pending.extend_from_slice(&forced);
            }
        }
        true
    }

    fn initial(&mut self, p: &Problem) -> bool {
        let fixed: Vec<(usize, usize)> = p.fixed.iter().enumerate().filter_map(|(k, c)| c.map(|c| (k, c))).collect();
        if !self.propagate(&fixed) {
            return false;
        }
        let mut forced = Vec::new();
        for v in (0..p.n).filter(|&v| p.constrained[v]) {
            forced.clear();
            if !self.examine(v, &mut forced) || !self.propagate(&forced.clone()) {
                return false;
            }
        }
        true
    }

    /// Depth-first search; `visit` returns false to stop. Returns false when the budget ran out.
    fn search(&mut self, pos: usize, visit: &mut dyn FnMut(&[usize]) -> bool, stop: &mut bool) -> bool {
        let Some(next) = (pos..self.order.len()).find(|&i| self.color[self.order[i]] == 0) else {
            *stop = !visit(&self.color);
            return true;
        };
        let k = self.order[next];
        for c in [BLUE, RED] {
            if self.nodes >= self.budget {
                return false;
            }
            self.nodes += 1;
            let mark = self.trail.len();
            if self.propagate(&[(k, c)]) && !self.search(next + 1, visit, stop) {
                return false;
            }
            self.undo_to(mark);
            if *stop {
                return true;
            }
        }
        true
    }
}

fn run(p: &Problem, mode: Mode, budget: u64, visit: &mut dyn FnMut(&[usize]) -> bool) -> (bool, u64) {
    let mut e = Engine::new(p, mode, budget);
    if !e.initial(p) {
        return (true, 0);
    }
    let mut stop = false;
    let complete = e.search(0, visit, &mut stop);
    (complete, e.nodes)
}

/// First coloring satisfying every constrained vertex, `Unsat` after a complete search,
/// or `Timeout` once `budget` branch nodes are spent.
pub fn solve(p: &Problem, mode: Mode, budget: u64) -> SolveReport {
    let mut found = None;
    let (complete, nodes) = run(p, mode, budget, &mut |c| {
        found = Some(c.to_vec());
        false
    });
    let verdict = match (found, complete) {
        (Some(c), _) => Verdict::Coloring(c),
        (None, true) => Verdict::Unsat,
        (None, false) => Verdict::Timeout,
    };
    SolveReport { verdict, nodes }
}

#[derive(Debug, Clone, Serialize)]
pub struct Enumeration {
    pub colorings: Vec<Vec<usize>>,
    pub nodes: u64,
}

/// Every satisfying coloring, or `None` when the budget ran out first.
pub fn enumerate(p: &Problem, mode: Mode, budget: u64) -> Option<Enumeration> {
    let mut colorings = Vec::new();
    let (complete, nodes) = run(p, mode, budget, &mut |c| {
        colorings.push(c.to_vec());
        true
    });
    complete.then_some(Enumeration { colorings, nodes })
}

/// Solves an uncolored graph with every vertex constrained; the coloring comes back as a graph.
pub fn solve_coloring(g: &ColoredGraph, mode: Mode, budget: u64) -> (SolveReport, Option<ColoredGraph>) {
    let p = Problem::from_graph(g);
    let report = solve(&p, mode, budget);
    let graph = match &report.verdict {
        Verdict::Coloring(c) => Some(p.colored(2, c).expect("same edge set")),
        _ => None,
    };
    (report, graph)
}
