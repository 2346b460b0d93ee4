//! Delzant polygons, smooth fans and their decorated graphs.
//!
//! A Delzant polygon is the moment image of a toric four-manifold. Restricting
//! the torus to the circle acting on the second coordinate turns it into a
//! circle space whose decorated graph is read off the boundary. In the other
//! direction a genus-zero graph with a two-branch extension is drawn as a
//! polygon, unique up to `(x, y) -> (a ± x + m y, y)`.

mod convert;
mod fan;
mod polygon;

use graph_core::{GraphError, VertexId};
use thiserror::Error;

pub use convert::{
    graph_to_polygon, graph_to_polygon_default, polygon_extension, polygon_pushforward, polygon_to_graph,
};
pub use fan::{fan_blowdown, fan_blowdown_sites, minimal_fan_type, polygon_to_fan, Fan, MinimalFanType};
pub use polygon::{
    affine_normal_form, lattice_length, polygon_affine_equivalent, polygon_chop, primitive, validate_delzant,
    DelzantPolygon, Point, PolygonReport, PolygonViolation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToricError {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("no vertex {0}")]
    BadVertex(usize),
    #[error("chop too large: {0}")]
    ChopSize(String),
    #[error("invalid fan: {0}")]
    Fan(String),
    #[error("extension has {0} branches, expected 2")]
    BranchCount(usize),
    #[error("surface {0} has positive genus")]
    Genus(VertexId),
    #[error("closure fails: {0}")]
    Closure(String),
    #[error("construction fails: {0}")]
    Construction(String),
    #[error("json: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Density(#[from] dh_measure::DhError),
}
