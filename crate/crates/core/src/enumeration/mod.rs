//! Counting pedigrees: Stirling numbers, automorphism quotients of parent
//! graphs, bounds on the number of discrete generation and general
//! pedigrees, exact brute-force counts for small cases, and the
//! segregating-site bounds they imply.

mod bounds;
mod census;
mod graphs;
mod numbers;
mod sites;

pub use bounds::{
    bounded_gap_lower_m, bounds_m, bounds_n, depth1_class_sum, depth1_count_from_graph,
    depth1_total, lower_bound_class_sum, tree_base, CountBounds,
};
pub use census::{brute_count_n, CensusOptions, ASSIGNMENT_BUDGET};
pub use graphs::{
    automorphism_count, edge_automorphism_count, graph_classes, line_graph_automorphism_count,
    SimpleGraph, AUTOMORPHISM_BUDGET, MAX_CLASS_ORDER,
};
pub use numbers::{binomial, factorial, stirling2};
pub use sites::{
    discrete_estimate, gap_estimate, general_estimate, log2, pairwise_distance_baseline,
    site_bound, site_bound_uint, SiteBound,
};

use thiserror::Error;

use crate::isomorphism::IsoError;

#[derive(Debug, Error)]
pub enum EnumError {
    #[error("bad arguments: {0}")]
    BadArgs(String),
    #[error("bad graph: {0}")]
    BadGraph(String),
    #[error("count {0} is below 1")]
    BadCount(String),
    #[error("search exceeded {nodes} steps")]
    ResourceLimit { nodes: u64 },
    #[error(transparent)]
    Iso(#[from] IsoError),
}
