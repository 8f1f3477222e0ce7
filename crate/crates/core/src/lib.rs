//! Triangle-regular colored graphs: construction, verification, and refutation.

pub mod abelian;
pub mod bits;
pub mod cli;
pub mod constructions;
pub mod graph;
pub mod io;
pub mod lp;
pub mod reductions;
pub mod spectrum;
