use std::path::Path;

use serde_json::{json, Value};

use super::{CliError, Command, Construct, Lp, Outcome, Report, SetArgs, VariantArg};
use crate::abelian::fourier::spectrum_summary;
use crate::abelian::{approx_subgroup, cayley_graph, dft_indicator, load_set, SymmetricSet};
use crate::constructions::lp_build::MATERIALIZE_CAP;
use crate::constructions::thm13::{self, case_shape};
use crate::constructions::{
    build_clique_product, clique_product_decompose, flip3_construction, lp_to_graph, theorem13_generating_set,
    unbounded_flip_construction, FlipConstructionReport, Theorem13Params,
};
use crate::graph::{ColoredGraph, FlipVerdict, Regularity};
use crate::io::{load_graph, save_graph};
use crate::lp::density::{build_system, TriangleDensityVector};
use crate::lp::flip::flip_system;
use crate::lp::{flip_bounded_scan, refute_with_cuts, solve_feasibility, Feasibility};
use crate::reductions::cnf::parse_pcnf;
use crate::reductions::coloring::{solve, Mode, Problem, Verdict};
use crate::reductions::gadgets::load_template;
use crate::reductions::rc_gadget::variable_spec;
use crate::reductions::reduction::{build_flip_reduction, build_rc_reduction, ReductionOutput};
use crate::reductions::search::search_gadget;
use crate::spectrum::{spectrum_for_r, write_spectrum_csv};

pub(super) fn dispatch(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Verify { file, flip } => verify(&file, flip),
        Command::Product { a, b, out } => product(&a, &b, out.as_deref()),
        Command::Construct(c) => construct(c),
        Command::Spectrum { r, max_order, out } => spectrum(r, max_order, out.as_deref()),
        Command::Lp(l) => lp(l),
        Command::Reduce { variant, input, out, gadget } => reduce(variant, &input, &out, gadget.as_deref()),
        Command::Solve { mode, input, budget, out } => solve_file(mode, &input, budget, out.as_deref()),
        Command::Subgroup(args) => subgroup(&args),
        Command::Dft(args) => dft(&args),
    }
}

fn feasibility_outcome(f: &Feasibility) -> Outcome {
    match f {
        Feasibility::Feasible { .. } => Outcome::Positive,
        Feasibility::Infeasible { .. } => Outcome::Negative,
        Feasibility::Unknown { .. } => Outcome::Unknown,
    }
}

fn regularity(g: &ColoredGraph) -> (Outcome, String, Value) {
    match g.check_triangle_regular() {
        Regularity::Uniform(p) => (Outcome::Positive, format!("{p} uniform"), json!({ "uniform": true, "r": p.r, "c": p.c })),
        Regularity::NonUniform { a, b } => (
            Outcome::Negative,
            format!("not uniform: vertices {a} and {b} differ"),
            json!({ "uniform": false, "witness": [a, b] }),
        ),
    }
}

fn verify(file: &Path, flip: bool) -> Result<Report, CliError> {
    let g = load_graph(file)?;
    let (mut outcome, mut text, mut value) = regularity(&g);
    if flip {
        let verdict = g.check_flip();
        let valid = verdict == FlipVerdict::Valid;
        value["flip_valid"] = json!(valid);
        if let FlipVerdict::Violation { vertex, lower, higher, reason } = verdict {
            value["flip_violation"] = json!({ "vertex": vertex, "lower": lower, "higher": higher, "reason": reason });
            text.push_str(&format!("\nflip violated at vertex {vertex} (colors {lower}, {higher}: {reason:?})"));
            outcome = Outcome::Negative;
        } else {
            text.push_str("\nflip valid");
        }
    }
    value["vertices"] = json!(g.vertex_count());
    value["edges"] = json!(g.edge_count());
    Ok(Report::new("verify", outcome, text, value))
}

fn product(a: &Path, b: &Path, out: Option<&Path>) -> Result<Report, CliError> {
    let g = load_graph(a)?.cartesian_product(&load_graph(b)?)?;
    if let Some(path) = out {
        save_graph(&g, path)?;
    }
    let (outcome, text, mut value) = regularity(&g);
    value["vertices"] = json!(g.vertex_count());
    Ok(Report::new("product", outcome, text, value))
}

/// Writes the Cayley graph when it is small enough to list.
fn write_cayley(s: &SymmetricSet, out: Option<&Path>) -> Result<Option<usize>, CliError> {
    let Some(path) = out else { return Ok(None) };
    let order = s.group().order().unwrap_or(u128::MAX);
    if order > MATERIALIZE_CAP {
        return Err(CliError::Usage(format!("group order {order} is above the {MATERIALIZE_CAP} vertex cap for graph output")));
    }
    save_graph(&cayley_graph(s), path)?;
    Ok(Some(order as usize))
}

fn flip_report(command: &str, report: &FlipConstructionReport) -> Result<Report, CliError> {
    let ok = report.flip_valid && report.checks_pass();
    let outcome = if ok { Outcome::Positive } else { Outcome::Negative };
    let text = format!(
        "(r={:?}, c={:?}) flip {}; {} materialized check(s) {}",
        report.total.r,
        report.total.c,
        if report.flip_valid { "valid" } else { "invalid" },
        report.checks.len(),
        if report.checks_pass() { "match" } else { "differ" }
    );
    Ok(Report::new(command, outcome, text, serde_json::to_value(report)?))
}

fn construct(c: Construct) -> Result<Report, CliError> {
    match c {
        Construct::CliqueProduct { r, c, out } => {
            let Some(plan) = clique_product_decompose(r, c)? else {
                let text = format!("no clique product has r = {r}, c = {c}");
                return Ok(Report::new("construct clique-product", Outcome::Negative, text, json!({ "r": r, "c": c })));
            };
            let s = build_clique_product(&plan)?;
            let written = write_cayley(&s, out.as_deref())?;
            let text = format!("cliques {:?}: r = {r}, c = {c}", plan.clique_sizes);
            let value = json!({ "r": r, "c": c, "clique_sizes": plan.clique_sizes, "vertices": written });
            Ok(Report::new("construct clique-product", Outcome::Positive, text, value))
        }
        Construct::Thm13 { r, x, y, diagnostic, out } => {
            let params = Theorem13Params { r, x, y };
            let mode = if diagnostic { thm13::Mode::Diagnostic } else { thm13::Mode::Strict };
            let built = theorem13_generating_set(params, mode)?;
            let written = write_cayley(&built.set, out.as_deref())?;
            let hit = built.achieved_c == built.target_c;
            let mut value = serde_json::to_value(&built)?;
            value["vertices"] = json!(written);
            if diagnostic {
                value["case_shape"] = serde_json::to_value(case_shape(r, x, built.inner.as_ref())?)?;
            }
            let text = format!("target c = {}, achieved c = {}", built.target_c, built.achieved_c);
            let outcome = if hit { Outcome::Positive } else { Outcome::Negative };
            Ok(Report::new("construct thm13", outcome, text, value))
        }
        Construct::Flip3 { a1 } => flip_report("construct flip3", &flip3_construction(a1)?),
        Construct::UnboundedFlip { t, scale, n_max, budget } => {
            flip_report("construct unbounded-flip", &unbounded_flip_construction(t, scale, n_max, budget)?)
        }
        Construct::LpBuild { r, c, out } => lp_build(&r, &c, out.as_deref()),
    }
}

fn check_lengths(r: &[u64], c: &[u64]) -> Result<(), CliError> {
    if r.is_empty() || r.len() != c.len() {
        return Err(CliError::Usage("--r and --c need the same nonzero number of entries".into()));
    }
    Ok(())
}

fn lp_build(r: &[u64], c: &[u64], out: Option<&Path>) -> Result<Report, CliError> {
    check_lengths(r, c)?;
    let result = solve_feasibility(&build_system(r, c));
    let Feasibility::Feasible { witness } = &result else {
        let text = format!("density system is {}", result.label());
        return Ok(Report::new("construct lp-build", feasibility_outcome(&result), text, serde_json::to_value(&result)?));
    };
    let x = TriangleDensityVector { t: r.len(), values: witness.clone() };
    let built = lp_to_graph(r, c, &x)?;
    if let (Some(path), Some(g)) = (out, &built.graph) {
        save_graph(g, path)?;
    }
    let text = format!(
        "(r={:?}, c={:?}) on {} vertices, guarantee {}",
        built.profile.r,
        built.profile.c,
        built.vertex_count,
        if built.guarantee_met { "met" } else { "missed" }
    );
    let outcome = if built.guarantee_met { Outcome::Positive } else { Outcome::Negative };
    Ok(Report::new("construct lp-build", outcome, text, serde_json::to_value(&built)?))
}

fn spectrum(r: u32, max_order: u32, out: Option<&Path>) -> Result<Report, CliError> {
    let records = spectrum_for_r(r, max_order);
    let mut csv = Vec::new();
    write_spectrum_csv(&records, &mut csv)?;
    if let Some(path) = out {
        std::fs::write(path, &csv)?;
    }
    let cs: Vec<u64> = records.iter().map(|x| x.c).collect();
    let text = String::from_utf8(csv).expect("csv output is utf-8");
    let value = json!({ "r": r, "max_order": max_order, "c_values": cs, "records": records });
    Ok(Report::new("spectrum", Outcome::Positive, text.trim_end().to_string(), value))
}

fn lp(l: Lp) -> Result<Report, CliError> {
    match l {
        Lp::Feasible { r, c } => {
            check_lengths(&r, &c)?;
            let result = solve_feasibility(&build_system(&r, &c));
            let mut text = format!("(r={r:?}, c={c:?}) {}", result.label());
            if let Feasibility::Infeasible { certificate } = &result {
                let y: Vec<String> = certificate.iter().map(|q| q.to_string()).collect();
                text.push_str(&format!("\nFarkas certificate: [{}]", y.join(", ")));
            }
            Ok(Report::new("lp feasible", feasibility_outcome(&result), text, serde_json::to_value(&result)?))
        }
        Lp::FlipScan { t, r1_max, rt_max, cuts } => {
            let scan = flip_bounded_scan(t, r1_max, rt_max, cuts)?;
            let outcome = if scan.all_infeasible() {
                Outcome::Negative
            } else if scan.exceptions.iter().any(|row| row.result.is_feasible()) {
                Outcome::Positive
            } else {
                Outcome::Unknown
            };
            let text = format!("{} of {} degree vectors infeasible", scan.infeasible, scan.total);
            Ok(Report::new("lp flip-scan", outcome, text, serde_json::to_value(&scan)?))
        }
        Lp::Cuts { r, rounds } => {
            if r.is_empty() {
                return Err(CliError::Usage("--r needs at least one entry".into()));
            }
            let colors: Vec<usize> = (1..=r.len()).collect();
            let refutation = refute_with_cuts(&flip_system(&r), &r, &colors, rounds);
            let text = format!(
                "r={r:?}: {} after {} round(s), {} cut(s)",
                refutation.result.label(),
                refutation.rounds,
                refutation.cuts
            );
            Ok(Report::new("lp cuts", feasibility_outcome(&refutation.result), text, serde_json::to_value(&refutation)?))
        }
    }
}

fn summary(out: &ReductionOutput) -> Value {
    let g = out.graph();
    json!({
        "variant": out.variant,
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "copies": out.copy_count,
        "generators": out.generators,
        "ledger_edges": out.assembly.ledger.len(),
    })
}

fn reduce(variant: VariantArg, input: &Path, out: &Path, gadget: Option<&Path>) -> Result<Report, CliError> {
    let f = parse_pcnf(&std::fs::read_to_string(input)?)?;
    let built = match (variant, gadget) {
        (VariantArg::Flip, _) => build_flip_reduction(&f)?,
        (VariantArg::Rc, Some(path)) => build_rc_reduction(&f, &load_template("rc variable", path)?, true)?,
        (VariantArg::Rc, None) => match search_gadget(&variable_spec()) {
            Some(t) => build_rc_reduction(&f, &t, true)?,
            None => {
                let text = "no exact-count variable gadget meets the targets; nothing written".to_string();
                return Ok(Report::new("reduce", Outcome::Negative, text, json!({ "variant": "rc", "gadget": null })));
            }
        },
    };
    save_graph(&built.graph(), out)?;
    let value = summary(&built);
    let text = format!("{} vertices, {} edges written to {}", value["vertices"], value["edges"], out.display());
    Ok(Report::new("reduce", Outcome::Positive, text, value))
}

fn solve_file(mode: VariantArg, input: &Path, budget: u64, out: Option<&Path>) -> Result<Report, CliError> {
    let g = load_graph(input)?;
    let p = Problem::from_graph(&g);
    let mode = match mode {
        VariantArg::Rc => Mode::RC_HARD,
        VariantArg::Flip => Mode::Flip,
    };
    let report = solve(&p, mode, budget);
    let (outcome, label) = match &report.verdict {
        Verdict::Coloring(c) => {
            if let Some(path) = out {
                save_graph(&p.colored(2, c)?, path)?;
            }
            (Outcome::Positive, "coloring found")
        }
        Verdict::Unsat => (Outcome::Negative, "unsat"),
        Verdict::Timeout => (Outcome::Unknown, "timeout"),
    };
    let text = format!("{label} after {} node(s)", report.nodes);
    let value = json!({ "verdict": label, "nodes": report.nodes, "budget": budget });
    Ok(Report::new("solve", outcome, text, value))
}

fn read_set(args: &SetArgs) -> Result<SymmetricSet, CliError> {
    let s = load_set(&args.set)?;
    if let Some(moduli) = &args.group {
        if s.group().moduli() != moduli.as_slice() {
            return Err(CliError::Usage(format!("set file declares group {:?}, not {moduli:?}", s.group().moduli())));
        }
    }
    Ok(s)
}

fn subgroup(args: &SetArgs) -> Result<Report, CliError> {
    let s = read_set(args)?;
    let a = approx_subgroup(&s);
    let overlap = s.members().iter().filter(|x| a.subgroup.binary_search(x).is_ok()).count();
    let k = a.empirical_constant().map(|k| k.to_string());
    let text = format!(
        "epsilon = {}\n|H| = {}\n|H ∩ S| = {overlap}\n|H|/|S| = {}\n|H ∩ S|/|S| = {}\nK = {}",
        a.epsilon,
        a.subgroup.len(),
        a.size_ratio,
        a.overlap_ratio,
        k.as_deref().unwrap_or("none")
    );
    let mut value = serde_json::to_value(&a)?;
    value["subgroup_size"] = json!(a.subgroup.len());
    value["overlap"] = json!(overlap);
    value["empirical_constant"] = json!(k);
    Ok(Report::new("subgroup", Outcome::Positive, text, value))
}

fn dft(args: &SetArgs) -> Result<Report, CliError> {
    let s = read_set(args)?;
    let coeffs = dft_indicator(&s);
    let summary = spectrum_summary(&coeffs);
    let mut text: Vec<String> = coeffs.iter().map(|c| format!("{} {:.9}", c.character, c.re)).collect();
    text.push(format!("max |im| = {:.3e}, mean square = {:.9}", summary.max_imaginary, summary.plancherel_mean));
    let rows: Vec<Value> = coeffs.iter().map(|c| json!({ "character": c.character, "re": c.re, "im": c.im })).collect();
    let value = json!({
        "size": s.len(),
        "coefficients": rows,
        "max_imaginary": summary.max_imaginary,
        "plancherel_mean": summary.plancherel_mean,
    });
    Ok(Report::new("dft", Outcome::Positive, text.join("\n"), value))
}
