//! Hardness reductions for two colors: formulas, gadgets with exhaustive rigidity checks,
//! reduction builders, and a propagation-based coloring solver.

pub mod assembly;
pub mod cnf;
pub mod coloring;
pub mod flip_gadgets;
pub mod gadgets;
pub mod rc_gadget;
pub mod reduction;
pub mod search;

pub use cnf::{brute_force_sat, validate_formula, PositiveCnf, Variant, Violation};
pub use coloring::{solve_coloring, Mode, Problem, SolveReport, Verdict};
