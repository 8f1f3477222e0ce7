//! Formula to graph: the flip reduction from positive NAE-3-SAT-E4 and the exact-count
//! reduction from positive 1-in-3-SAT-E4, with forward colorings and state decoding.

use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use super::assembly::{Assembly, ConformanceIssue, Port};
use super::cnf::{validate_formula, PositiveCnf, Variant, Violation};
use super::coloring::{Mode, Problem, BLUE, RED};
use super::flip_gadgets::{clause_hub, dangler_generator, variable_gadget, CYCLE, DG_DANGLERS};
use super::rc_gadget;
use super::gadgets::{ensure_rigid, GadgetError, GadgetTemplate, RigidityReport};
use crate::graph::{ColoredGraph, FlipVerdict};

/// Copies of the flip core; each dangler generator sends one edge to each.
pub const FLIP_COPIES: usize = 4 * DG_DANGLERS;
/// Copies of the exact-count construction, in two groups.
pub const RC_COPIES: usize = 32;

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("formula violates the E4 rules: {0:?}")]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error("gadget {0} has no admissible coloring")]
    EmptyGadget(String),
    #[error("gadget {name} has {count} dangling edges; the pairing needs at most {max}")]
    TooManyDanglers { name: String, count: usize, max: usize },
    #[error("assembly does not conform to its templates: {0:?}")]
    Conformance(Vec<ConformanceIssue>),
    #[error("assignment does not satisfy the formula")]
    NotSatisfying,
    #[error("no admissible state of gadget instance {0} fits the colors already placed")]
    NoConsistentState(usize),
    #[error("the forward coloring fails the verifier at vertex {0}")]
    Rejected(usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct VariableSite {
    /// Variable gadget instance in each copy.
    pub instances: Vec<usize>,
    /// Edge read by the decoder, in copy 0.
    pub decode_edge: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionOutput {
    pub variant: Variant,
    pub copy_count: usize,
    pub generators: usize,
    #[serde(skip)]
    pub assembly: Assembly,
    pub variable_map: Vec<VariableSite>,
    /// Clause gadget instances in copy 0.
    pub clause_map: Vec<Vec<usize>>,
    /// Free far ends of unpaired dangling edges (cluster builds only).
    pub stubs: Vec<usize>,
}

impl ReductionOutput {
    /// The uncolored graph, as a monochrome graph.
    pub fn graph(&self) -> ColoredGraph {
        self.assembly.graph(1, None)
    }

    pub fn mode(&self) -> Mode {
        match self.variant {
            Variant::Nae => Mode::Flip,
            Variant::OneInThree => Mode::RC_HARD,
        }
    }

    /// Solver input: every vertex constrained except stubs, whose edges are blue.
    pub fn problem(&self) -> Problem {
        self.assembly.problem(&self.stubs)
    }

    pub fn pairing_ledger(&self) -> Vec<(usize, usize)> {
        self.assembly.ledger.iter().map(|&e| self.assembly.edges[e]).collect()
    }

    /// Reads each variable from its copy-0 gadget: blue decode edge is TRUE.
    pub fn decode(&self, colors: &[usize]) -> Vec<bool> {
        self.variable_map.iter().map(|s| colors[s.decode_edge] == self.true_color()).collect()
    }

    fn true_color(&self) -> usize {
        match self.variant {
            Variant::Nae => BLUE,
            Variant::OneInThree => RED,
        }
    }
}

fn flip_templates() -> &'static Result<Vec<(GadgetTemplate, RigidityReport)>, String> {
    static CELL: OnceLock<Result<Vec<(GadgetTemplate, RigidityReport)>, String>> = OnceLock::new();
    CELL.get_or_init(|| {
        [dangler_generator(), variable_gadget(), clause_hub(), super::flip_gadgets::auxiliary(), super::flip_gadgets::red_pendant()]
            .into_iter()
            .map(|t| ensure_rigid(&t).map(|r| (t, r)).map_err(|e| e.to_string()))
            .collect()
    })
}

/// Rigidity reports of the five flip templates, computed once.
pub fn flip_template_reports() -> Result<Vec<RigidityReport>, ReductionError> {
    match flip_templates() {
        Ok(v) => Ok(v.iter().map(|(_, r)| r.clone()).collect()),
        Err(e) => Err(ReductionError::Gadget(GadgetError::Budget(e.clone()))),
    }
}

/// Occurrence index of each clause position: `occ[m][j]` counts earlier uses of the same variable.
fn occurrences(f: &PositiveCnf) -> (Vec<[usize; 3]>, Vec<Vec<(usize, usize)>>) {
    let mut seen = vec![0; f.var_count];
    let mut by_var = vec![Vec::new(); f.var_count];
    let occ = f
        .clauses
        .iter()
        .enumerate()
        .map(|(m, c)| {
            let mut o = [0; 3];
            for (j, &x) in c.iter().enumerate() {
                o[j] = seen[x - 1];
                by_var[x - 1].push((m, j));
                seen[x - 1] += 1;
            }
            o
        })
        .collect();
    (occ, by_var)
}

fn decode_edge_index(t: &GadgetTemplate, a: usize, b: usize) -> usize {
    t.edges.iter().position(|&e| e == (a.min(b), a.max(b))).expect("decode edge is a template edge")
}

/// Copies of the core; with `generators` the dangling edges go to dangler generators,
/// otherwise each ends at a free blue stub (a single-copy cluster).
fn flip_core(f: &PositiveCnf, copies: usize, generators: bool) -> Result<ReductionOutput, ReductionError> {
    let violations = validate_formula(f, Variant::Nae);
    if !violations.is_empty() {
        return Err(ReductionError::Invalid(violations));
    }
    let templates: Vec<GadgetTemplate> = match flip_templates() {
        Ok(v) => v.iter().take(3).map(|(t, _)| t.clone()).collect(),
        Err(e) => return Err(ReductionError::Gadget(GadgetError::Budget(e.clone()))),
    };
    let (dg, var, hub) = (0, 1, 2);
    let decode = decode_edge_index(&templates[var], 0, 1);
    let mut asm = Assembly::new(templates);
    let (occ, by_var) = occurrences(f);
    let mut sites: Vec<VariableSite> = (0..f.var_count).map(|_| VariableSite { instances: vec![], decode_edge: 0 }).collect();
    let mut clause_map = vec![Vec::new(); f.clauses.len()];
    let mut ports: Vec<Vec<Port>> = Vec::with_capacity(copies);
    for c in 0..copies {
        let mut copy_ports = Vec::new();
        let cycle: Vec<Vec<usize>> = (0..f.var_count).map(|_| (0..CYCLE).map(|_| asm.fresh()).collect()).collect();
        let hubs: Vec<[usize; 2]> = f.clauses.iter().map(|_| [asm.fresh(), asm.fresh()]).collect();
        for x in 0..f.var_count {
            let mut fixed: Vec<(usize, usize)> = (0..CYCLE).map(|i| (i, cycle[x][i])).collect();
            for i in 0..CYCLE {
                let (m, _) = by_var[x][i / 2];
                fixed.push((CYCLE + i, hubs[m][i % 2]));
            }
            let (id, p) = asm.place(var, c, &fixed);
            copy_ports.extend(p);
            sites[x].instances.push(id);
            if c == 0 {
                sites[x].decode_edge = asm.instances[id].edges[decode].expect("template edge");
            }
        }
        for (m, clause) in f.clauses.iter().enumerate() {
            for side in 0..2 {
                let mut fixed = vec![(0, hubs[m][side])];
                for (j, &x) in clause.iter().enumerate() {
                    let i = 2 * occ[m][j] + side;
                    fixed.push((1 + 2 * j, cycle[x - 1][i]));
                    fixed.push((2 + 2 * j, cycle[x - 1][(i + 1) % CYCLE]));
                }
                let (id, p) = asm.place(hub, c, &fixed);
                copy_ports.extend(p);
                if c == 0 {
                    clause_map[m].push(id);
                }
            }
        }
        ports.push(copy_ports);
    }
    let per_copy = ports.first().map_or(0, Vec::len);
    let mut stubs = Vec::new();
    if generators {
        for g in 0..per_copy {
            let (_, dg_ports) = asm.place(dg, usize::MAX, &[]);
            for (c, copy_ports) in ports.iter().enumerate() {
                asm.pair(copy_ports[g], dg_ports[c]);
            }
        }
    } else {
        for p in ports.into_iter().flatten() {
            stubs.push(asm.stub(p));
        }
    }
    let issues = asm.conformance(stubs.is_empty());
    let issues: Vec<ConformanceIssue> = if stubs.is_empty() {
        issues
    } else {
        issues.into_iter().filter(|i| !matches!(i, ConformanceIssue::Coverage { .. })).collect()
    };
    if !issues.is_empty() {
        return Err(ReductionError::Conformance(issues));
    }
    let generators = if generators { per_copy } else { 0 };
    Ok(ReductionOutput { variant: Variant::Nae, copy_count: copies, generators, assembly: asm, variable_map: sites, clause_map, stubs })
}

/// Sixteen copies of the variable and clause gadgets; every dangling edge goes to a dangler
/// generator, which sends one edge to each copy.
pub fn build_flip_reduction(f: &PositiveCnf) -> Result<ReductionOutput, ReductionError> {
    flip_core(f, FLIP_COPIES, true)
}

/// One copy with dangling edges ending at blue stubs, the scale at which the solver runs.
pub fn build_flip_cluster(f: &PositiveCnf) -> Result<ReductionOutput, ReductionError> {
    flip_core(f, 1, false)
}

/// The exact-count reduction around a variable gadget template: each clause vertex merges
/// three attachments and carries one dangling edge. Variable dangling edges cross between
/// two groups of 16 copies, clause dangling edges pair copy `i` with copy `i + 16`.
/// With `require_rigid`, a template without admissible colorings is refused.
pub fn build_rc_reduction(f: &PositiveCnf, gadget: &GadgetTemplate, require_rigid: bool) -> Result<ReductionOutput, ReductionError> {
    let violations = validate_formula(f, Variant::OneInThree);
    if !violations.is_empty() {
        return Err(ReductionError::Invalid(violations));
    }
    if require_rigid {
        ensure_rigid(gadget)?;
        if gadget.required.is_empty() {
            return Err(ReductionError::EmptyGadget(gadget.name.clone()));
        }
    }
    let half = RC_COPIES / 2;
    if gadget.dangling.len() > half {
        return Err(ReductionError::TooManyDanglers { name: gadget.name.clone(), count: gadget.dangling.len(), max: half });
    }
    // the pair edge under attachment 0: red when the variable is TRUE
    let decode = decode_edge_index(gadget, 0, rc_gadget::INTERNAL / 2);
    let mut asm = Assembly::new(vec![gadget.clone()]);
    let (_, by_var) = occurrences(f);
    let mut sites: Vec<VariableSite> = (0..f.var_count).map(|_| VariableSite { instances: vec![], decode_edge: 0 }).collect();
    let mut var_ports: Vec<Vec<Vec<Port>>> = Vec::new();
    let mut clause_vertices: Vec<Vec<usize>> = Vec::new();
    for c in 0..RC_COPIES {
        let clauses: Vec<usize> = f.clauses.iter().map(|_| asm.fresh()).collect();
        let mut per_var = Vec::new();
        for x in 0..f.var_count {
            let fixed: Vec<(usize, usize)> =
                gadget.attachments.iter().enumerate().map(|(k, &a)| (a, clauses[by_var[x][k].0])).collect();
            let (id, p) = asm.place(0, c, &fixed);
            sites[x].instances.push(id);
            if c == 0 {
                sites[x].decode_edge = asm.instances[id].edges[decode].expect("template edge");
            }
            per_var.push(p);
        }
        var_ports.push(per_var);
        clause_vertices.push(clauses);
    }
    for a in 0..half {
        for x in 0..f.var_count {
            for (d, &p) in var_ports[a][x].iter().enumerate() {
                let partner = var_ports[half + (a + d) % half][x][d];
                asm.pair(p, partner);
            }
        }
    }
    for a in 0..half {
        for m in 0..f.clauses.len() {
            asm.join(clause_vertices[a][m], clause_vertices[half + a][m]);
        }
    }
    let issues = asm.conformance(false);
    if !issues.is_empty() && require_rigid {
        return Err(ReductionError::Conformance(issues));
    }
    Ok(ReductionOutput {
        variant: Variant::OneInThree,
        copy_count: RC_COPIES,
        generators: 0,
        assembly: asm,
        variable_map: sites,
        clause_map: clause_vertices[0].iter().map(|&v| vec![v]).collect(),
        stubs: vec![],
    })
}

/// Sets every variable gadget to its assignment's state and fills the rest by consistency,
/// then runs the mode's verifier on the whole graph.
pub fn assignment_to_coloring(f: &PositiveCnf, out: &ReductionOutput, assignment: &[bool]) -> Result<ColoredGraph, ReductionError> {
    if !f.satisfies(assignment, out.variant) {
        return Err(ReductionError::NotSatisfying);
    }
    let asm = &out.assembly;
    let tc = out.true_color();
    let mut state_of = vec![None; asm.instances.len()];
    // every copy's gadget is the same template, so reuse copy 0's slot
    for (x, site) in out.variable_map.iter().enumerate() {
        let i0 = site.instances[0];
        let slot = asm.instances[i0].edges.iter().position(|&e| e == Some(site.decode_edge)).expect("decode edge");
        for &i in &site.instances {
            let t = &asm.templates[asm.instances[i].template];
            state_of[i] = t.required.iter().position(|c| (c[slot] == tc) == assignment[x]);
        }
    }
    let vars: Vec<usize> = out.variable_map.iter().flat_map(|s| s.instances.iter().copied()).collect();
    let mut var_flag = vec![false; asm.instances.len()];
    vars.iter().for_each(|&i| var_flag[i] = true);
    let is_var = |i: usize| var_flag[i];
    let mut order: Vec<usize> = (0..asm.instances.len()).filter(|&i| asm.instances[i].copy == usize::MAX).collect();
    order.extend(&vars);
    order.extend((0..asm.instances.len()).filter(|&i| asm.instances[i].copy != usize::MAX && !is_var(i)));
    let mut colors = asm.color_by_states(&order, &|i| state_of[i]).map_err(ReductionError::NoConsistentState)?;
    // what no template covers is a clause dangling edge, red in the exact-count setting
    colors.iter_mut().filter(|c| **c == 0).for_each(|c| *c = RED);
    let g = asm.graph(2, Some(&colors));
    match out.variant {
        Variant::Nae => match g.check_flip() {
            FlipVerdict::Valid => Ok(g),
            FlipVerdict::Violation { vertex, .. } => Err(ReductionError::Rejected(vertex)),
        },
        Variant::OneInThree => {
            let bad = (0..g.vertex_count()).find(|&v| {
                let p = g.vertex_profile(v);
                p.deg != [1, 6] || p.nbhd != [1, 2]
            });
            let Some(v) = bad else { return Ok(g) };
            Err(ReductionError::Rejected(v))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::cnf::brute_force_sat;
    use crate::reductions::coloring::{solve, Verdict};
    use crate::reductions::rc_gadget::structural_candidate;

    fn triple4() -> PositiveCnf {
        PositiveCnf::new(3, vec![[1, 2, 3]; 4])
    }

    #[test]
    fn flip_reduction_forward_colorings_pass() {
        let f = triple4();
        let out = build_flip_reduction(&f).unwrap();
        assert_eq!(out.copy_count, 16);
        assert!(out.assembly.ledger_triangles().is_empty());
        for a in brute_force_sat(&f, Variant::Nae).unwrap() {
            let g = assignment_to_coloring(&f, &out, &a).unwrap();
            assert_eq!(g.check_flip(), FlipVerdict::Valid);
            let colors: Vec<usize> = out.assembly.edges.iter().map(|&(u, v)| g.edge_color(u, v).unwrap()).collect();
            assert_eq!(out.decode(&colors), a);
        }
        assert!(matches!(assignment_to_coloring(&f, &out, &[true; 3]), Err(ReductionError::NotSatisfying)));
    }

    #[test]
    fn empty_formula_gives_an_empty_graph() {
        let out = build_flip_reduction(&PositiveCnf::new(0, vec![])).unwrap();
        assert_eq!((out.graph().vertex_count(), out.generators), (0, 0));
    }

    #[test]
    fn cluster_solutions_decode_to_nae_assignments() {
        let f = triple4();
        let out = build_flip_cluster(&f).unwrap();
        let rep = solve(&out.problem(), Mode::Flip, 10_000_000);
        let Verdict::Coloring(c) = rep.verdict else { panic!("{:?}", rep.verdict) };
        assert!(f.satisfies(&out.decode(&c), Variant::Nae));
    }

    #[test]
    fn rc_plumbing_with_the_structural_candidate() {
        let f = triple4();
        let out = build_rc_reduction(&f, &structural_candidate(), false).unwrap();
        assert_eq!(out.copy_count, 32);
        assert_eq!(out.assembly.instances.len(), 32 * 3);
        assert!(out.assembly.ledger_triangles().is_empty());
        assert!(out.graph().vertex_profile(0).deg == vec![7]);
        assert!(build_rc_reduction(&f, &structural_candidate(), true).is_err());
    }
}
