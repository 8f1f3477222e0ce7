use std::path::{Path, PathBuf};

use trireg::reductions::flip_gadgets::{auxiliary, clause_hub, dangler_generator, red_pendant, variable_gadget};
use trireg::reductions::gadgets::{load_template, verify_template, GadgetTemplate};
use trireg::reductions::rc_gadget::structural_candidate;

fn path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.trg"))
}

fn built() -> Vec<(&'static str, GadgetTemplate)> {
    vec![
        ("dangler_generator", dangler_generator()),
        ("auxiliary", auxiliary()),
        ("red_pendant", red_pendant()),
        ("flip_variable", variable_gadget()),
        ("clause_hub", clause_hub()),
        ("rc_structural_candidate", structural_candidate()),
    ]
}

#[test]
fn stored_fixtures_match_the_builders() {
    for (file, t) in built() {
        let loaded = load_template(&t.name, path(file)).unwrap();
        assert_eq!(loaded, t, "{file}");
    }
}

#[test]
fn stored_flip_fixtures_are_rigid() {
    for (file, t) in built().into_iter().take(5) {
        let loaded = load_template(&t.name, path(file)).unwrap();
        let r = verify_template(&loaded).unwrap();
        assert!(r.matches, "{file}: {} found, {} required", r.found, r.required);
    }
}

#[test]
fn the_structural_candidate_admits_no_coloring() {
    let t = load_template("rc structural candidate", path("rc_structural_candidate")).unwrap();
    let r = verify_template(&t).unwrap();
    assert_eq!(r.found, 0);
}
