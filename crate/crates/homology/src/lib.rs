//! Intersection numbers and symplectic areas of invariant curves on graphs
//! with two fixed surfaces.
//!
//! The invariant curves are the surfaces `B_min` and `B_max`, a generic
//! fiber `F`, and the spheres `E_1, ..., E_l` of each chain between the
//! surfaces. A class is described by its intersection numbers with these
//! curves. The curves `B_max`, `F` and `E_i` with `i >= 2` form a basis.

mod blowup;
mod curves;
mod decompose;

use graph_core::GraphError;
use thiserror::Error;

pub use blowup::{blowup_class_transform, positivity_equiv};
pub use curves::{class_values, intersection_matrix, ClassValues, Curve, End, IntersectionData, Sphere};
pub use decompose::{decompose_positive, intersections_of, Decomposition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("the graph does not have two fixed surfaces")]
    NotTwoSurface,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("inconsistent graph: {0}")]
    Inconsistent(String),
    #[error("no incidence data for the site: {0}")]
    Incidence(String),
    #[error("expected {expected} intersection numbers, got {got}")]
    Length { expected: usize, got: usize },
    #[error("intersection with {0} is negative")]
    Negative(String),
    #[error("the intersection numbers are not those of any class")]
    NoSolution,
    #[error("inequality fails: {0}")]
    Inequality(String),
}
