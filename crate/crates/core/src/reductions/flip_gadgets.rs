//! Gadgets for the flip reduction. Red is color 1, blue color 2; every dangling edge ends
//! at a dangler generator and is blue.
//!
//! Counts at a vertex are `red deg < blue deg` and `red closed > blue closed`.

use super::coloring::{BLUE, RED};
use super::gadgets::{Boundary, GadgetTemplate, Sketch};

/// Dangling edges on each vertex of a dangler generator.
pub const DG_DANGLERS: usize = 4;
/// Dangling edges on each non-anchor vertex of the auxiliary octahedron.
pub const AUX_DANGLERS: usize = 7;
/// Dangling edges on a cycle vertex of the variable gadget.
pub const CYCLE_DANGLERS: usize = 3;
/// Dangling edges on the pendant vertex of a red pendant, and on clique mates.
pub const PENDANT_DANGLERS: usize = 5;
pub const MATE_DANGLERS: usize = 4;

/// A red `K_4` whose vertices each carry four dangling edges; the only valid coloring
/// makes the clique red and every dangling edge blue, whatever their far ends do.
pub fn dangler_generator() -> GadgetTemplate {
    let mut s = Sketch::default();
    let vs: Vec<usize> = (0..4).map(|_| s.vertex(true)).collect();
    s.clique(&vs);
    vs.iter().for_each(|&v| s.dangle(v, DG_DANGLERS));
    s.unique("dangler generator", Boundary::Free)
}

/// Octahedron on the anchor `A` (vertex 0, free) and five constrained vertices; forces all
/// twelve edges red, adding red degree 4 and red closed count 8 at `A`.
pub(crate) fn add_octahedron(s: &mut Sketch, anchor: usize) -> Vec<usize> {
    let opposite = s.vertex(true);
    let ring: Vec<usize> = (0..4).map(|_| s.vertex(true)).collect();
    for k in 0..4 {
        s.edge(anchor, ring[k], RED);
        s.edge(opposite, ring[k], RED);
        s.edge(ring[k], ring[(k + 1) % 4], RED);
    }
    s.dangle(opposite, AUX_DANGLERS);
    ring.iter().for_each(|&v| s.dangle(v, AUX_DANGLERS));
    let mut out = vec![opposite];
    out.extend(ring);
    out
}

pub fn auxiliary() -> GadgetTemplate {
    let mut s = Sketch::default();
    let a = s.vertex(false);
    add_octahedron(&mut s, a);
    s.unique("auxiliary octahedron", Boundary::Blue)
}

/// A red `K_4` with one vertex joined to `target`; that vertex's counts force the joining
/// edge red.
pub(crate) fn add_red_pendant(s: &mut Sketch, target: usize) {
    let p = s.vertex(true);
    let mates: Vec<usize> = (0..3).map(|_| s.vertex(true)).collect();
    let mut clique = vec![p];
    clique.extend(&mates);
    s.clique(&clique);
    s.edge(p, target, RED);
    s.dangle(p, PENDANT_DANGLERS);
    mates.iter().for_each(|&v| s.dangle(v, MATE_DANGLERS));
}

pub fn red_pendant() -> GadgetTemplate {
    let mut s = Sketch::default();
    let q = s.vertex(false);
    add_red_pendant(&mut s, q);
    s.unique("red pendant", Boundary::Blue)
}

/// Vertex layout of the variable gadget: cycle vertex `i` is `i`, hub attachment `i`
/// (apex over cycle edge `i, i+1`) is `8 + i`.
pub const CYCLE: usize = 8;

/// An 8-cycle whose vertices each carry an auxiliary octahedron, three dangling edges,
/// and blue edges to the hubs over their two cycle edges. Exactly one of the two cycle
/// edges at each vertex is red, so the cycle alternates. Even edges blue is TRUE.
pub fn variable_gadget() -> GadgetTemplate {
    let mut s = Sketch::default();
    let v: Vec<usize> = (0..CYCLE).map(|_| s.vertex(true)).collect();
    let h: Vec<usize> = (0..CYCLE).map(|_| s.vertex(false)).collect();
    let mut cycle_edges = Vec::new();
    for i in 0..CYCLE {
        cycle_edges.push(s.edges.len());
        s.edge(v[i], v[(i + 1) % CYCLE], if i % 2 == 0 { BLUE } else { RED });
        s.pin(h[i], v[i]);
        s.pin(h[i], v[(i + 1) % CYCLE]);
    }
    for &x in &v {
        add_octahedron(&mut s, x);
        s.dangle(x, CYCLE_DANGLERS);
    }
    let mut t = s.colors.clone();
    t.extend(std::iter::repeat_n(BLUE, s.dangling.len()));
    let mut f = t.clone();
    cycle_edges.iter().for_each(|&k| f[k] = if t[k] == RED { BLUE } else { RED });
    let n = s.n;
    // one step around the cycle, octahedra included
    let octa = |x: usize| 2 * CYCLE + 5 * x;
    let mut rot = vec![0; n];
    for i in 0..CYCLE {
        rot[v[i]] = v[(i + 1) % CYCLE];
        rot[h[i]] = h[(i + 1) % CYCLE];
        for j in 0..5 {
            rot[octa(i) + j] = octa((i + 1) % CYCLE) + j;
        }
    }
    s.finish("flip variable", Boundary::Blue, vec![t, f], Some(rot))
}

/// Vertex layout of the clause hub: the hub is 0; literal `j` joins attachments
/// `1 + 2j` and `2 + 2j`.
pub const HUB: usize = 0;

/// A hub joined by blue edges to both ends of three literal edges. A red `K_4` through
/// the hub and two red pendants make the hub's degrees tight, which forces those six
/// edges blue; the closed counts then hold exactly when a literal edge is red.
pub fn clause_hub() -> GadgetTemplate {
    let mut s = Sketch::default();
    let q = s.vertex(true);
    let ends: Vec<usize> = (0..6).map(|_| s.vertex(false)).collect();
    let mut literal = Vec::new();
    for j in 0..3 {
        s.edge(q, ends[2 * j], BLUE);
        s.edge(q, ends[2 * j + 1], BLUE);
        literal.push(s.edges.len());
        s.edge(ends[2 * j], ends[2 * j + 1], RED);
    }
    let mates: Vec<usize> = (0..3).map(|_| s.vertex(true)).collect();
    let mut clique = vec![q];
    clique.extend(&mates);
    s.clique(&clique);
    mates.iter().for_each(|&v| s.dangle(v, MATE_DANGLERS));
    add_red_pendant(&mut s, q);
    add_red_pendant(&mut s, q);
    let mut base = s.colors.clone();
    base.extend(std::iter::repeat_n(BLUE, s.dangling.len()));
    let required = (1..8u32)
        .map(|mask| {
            let mut c = base.clone();
            for (j, &k) in literal.iter().enumerate() {
                c[k] = if mask >> j & 1 == 1 { RED } else { BLUE };
            }
            c
        })
        .collect();
    s.finish("clause hub", Boundary::Blue, required, None)
}

pub fn all_templates() -> Vec<GadgetTemplate> {
    vec![dangler_generator(), auxiliary(), red_pendant(), variable_gadget(), clause_hub()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::coloring::{LocalCheck, Mode};
    use crate::reductions::gadgets::verify_template;

    #[test]
    fn every_template_is_rigid() {
        for t in all_templates() {
            let r = verify_template(&t).unwrap();
            assert!(r.matches, "{}: found {} expected {}", r.name, r.found, r.required);
        }
    }

    #[test]
    fn dangler_generator_by_brute_force() {
        let t = dangler_generator();
        let p = t.problem();
        let m = p.edges.len();
        assert_eq!(m, 22);
        let check = LocalCheck::new(&p);
        let valid: Vec<u32> = (0..1u32 << m)
            .filter(|&mask| {
                let c: Vec<usize> = (0..m).map(|k| if mask >> k & 1 == 1 { RED } else { BLUE }).collect();
                check.ok(Mode::Flip, &c)
            })
            .collect();
        assert_eq!(valid.len(), 1);
        let c: Vec<usize> = (0..m).map(|k| if valid[0] >> k & 1 == 1 { RED } else { BLUE }).collect();
        assert_eq!(vec![c], t.required);
    }

    #[test]
    fn variable_states_are_one_rotation_class() {
        let r = verify_template(&variable_gadget()).unwrap();
        assert_eq!((r.found, r.rotation_classes, r.rotation_closed), (2, Some(1), Some(true)));
    }
}
