//! The variable gadget for the exact-count reduction with `r = (1, 6)`, `c = (1, 2)`:
//! eight internal vertices `u_k = k`, `w_k = 4 + k` of degree 7 and four attachments
//! `a_k = 8 + k` joined to the adjacent pair `u_k, w_k`, symmetric under `k -> k + 1`.

use super::coloring::Mode;
use super::gadgets::{Boundary, GadgetTemplate};
use super::search::{DanglingRule, GadgetSpec};

pub const INTERNAL: usize = 8;
pub const ATTACHMENTS: usize = 4;

fn rotation() -> Vec<usize> {
    (0..12).map(|v| (v / 4) * 4 + (v % 4 + 1) % 4).collect()
}

fn attachment_edges() -> Vec<(usize, usize)> {
    (0..4).flat_map(|k| [(k, 4 + k), (k, 8 + k), (4 + k, 8 + k)]).collect()
}

/// Degree 7 and three triangles at each internal vertex, with four admissible colorings
/// up to rotation.
pub fn variable_spec() -> GadgetSpec {
    GadgetSpec {
        name: "rc variable".into(),
        n: INTERNAL + ATTACHMENTS,
        internal: (0..INTERNAL).collect(),
        attachments: (INTERNAL..INTERNAL + ATTACHMENTS).collect(),
        fixed_edges: attachment_edges(),
        symmetry: rotation(),
        degree: vec![7; INTERNAL + ATTACHMENTS],
        dangling: DanglingRule::Fill,
        triangles: Some(3),
        mode: Mode::RC_HARD,
        boundary: Boundary::Blue,
        colorings: None,
        classes: Some(4),
    }
}

/// A symmetric wiring with the right degrees but not the right triangle counts: the cycles
/// `u_k u_{k+1}`, `w_k w_{k+1}` and the chords `u_k w_{k±1}`. Used only to exercise the
/// reduction plumbing; its admissible set is whatever enumeration finds.
pub fn structural_candidate() -> GadgetTemplate {
    let mut edges = attachment_edges();
    for k in 0..4 {
        let next = (k + 1) % 4;
        edges.extend([(k, next), (4 + k, 4 + next), (k, 4 + next), (next, 4 + k)]);
    }
    let dangling = (0..INTERNAL).collect();
    GadgetTemplate {
        name: "rc structural candidate".into(),
        n: INTERNAL + ATTACHMENTS,
        internal: (0..INTERNAL).collect(),
        attachments: (INTERNAL..INTERNAL + ATTACHMENTS).collect(),
        edges,
        dangling,
        pinned: vec![],
        boundary: Boundary::Blue,
        mode: Mode::RC_HARD,
        required: vec![],
        rotation: Some(rotation()),
    }
    .normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::search::search_gadget_counted;

    #[test]
    fn the_spec_is_refuted_before_any_wiring_is_tried() {
        let (found, tried) = search_gadget_counted(&variable_spec());
        assert!(found.is_none());
        assert_eq!(tried, 0);
    }

    #[test]
    fn no_symmetric_wiring_has_an_admissible_coloring() {
        let mut spec = variable_spec();
        // same targets, but the incidence check cannot fire when triangles are unconstrained
        spec.triangles = None;
        spec.classes = None;
        for k in 1..=256 {
            spec.colorings = Some(k);
            let (found, tried) = search_gadget_counted(&spec);
            assert!(found.is_none(), "{k} admissible colorings");
            assert!(tried > 0);
        }
    }

    #[test]
    fn candidate_has_degree_seven() {
        let t = structural_candidate();
        let p = t.problem();
        let (inc, _) = crate::reductions::coloring::local_edges(p.n, &p.edges);
        assert!((0..INTERNAL).all(|v| inc[v].len() == 7));
    }
}
