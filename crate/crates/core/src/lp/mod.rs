//! Exact feasibility for the linear necessary conditions on colored triangle-regular graphs.

pub mod density;
pub mod flip;
pub mod scalar;
pub mod simplex;
pub mod supersat;
pub mod system;

pub use flip::{add_flip_constraints, flip_bounded_scan, FlipScanReport, LpError};
pub use scalar::Q;
pub use simplex::solve_feasibility;
pub use supersat::{refute_with_cuts, supersaturation_check, supersaturation_cut, Refutation};
pub use system::{Constraint, Feasibility, LinearSystem, Relation};
