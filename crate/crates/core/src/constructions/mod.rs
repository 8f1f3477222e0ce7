//! Explicit constructions of triangle-regular graphs and flip graphs.

pub mod clique;
pub mod flip;
pub mod flip_search;
pub mod lp_build;
pub mod thm13;

use thiserror::Error;

use crate::abelian::GroupError;
use crate::graph::GraphError;

pub use clique::{build_clique_product, clique_product_decompose, CliqueProductPlan};
pub use flip::{flip3_construction, unbounded_flip_construction, FlipConstructionReport};
pub use flip_search::find_flip_graph;
pub use lp_build::{lp_to_graph, LpBuild};
pub use thm13::{theorem13_generating_set, Theorem13Params};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("c = {c} exceeds C(r,2) for r = {r}")]
    TriangleBudget { r: u64, c: u64 },
    #[error("a clique product needs at least one factor")]
    EmptyPlan,
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("y = {y} is outside the window for x = {x} (window: {range:?})")]
    OutsideYRange { x: u64, y: u64, range: Option<(u64, u64)> },
    #[error("C(r,2) - rx/2 + y is not an integer for r = {r}, x = {x}, y = {y}")]
    NonIntegralTarget { r: u64, x: u64, y: u64 },
    #[error("no clique product of degree {degree} has {k} neighborhood edges")]
    InnerUnreachable { degree: u64, k: i64 },
    #[error("removed set {0:?} is not sum-free")]
    NotSumFree(Vec<u64>),
    #[error("size underflow: {0}")]
    SizeUnderflow(String),
    #[error("color {color} has degree {degree} < t² = {t_squared}")]
    DegreeTooSmall { color: usize, degree: u64, t_squared: u64 },
    #[error("no flip graph on {t} colors found")]
    NoFlipGraph { t: usize },
    #[error("construction failed verification: {0}")]
    Unverified(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
