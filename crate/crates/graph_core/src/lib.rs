//! Decorated graphs of compact four-dimensional Hamiltonian circle spaces.
//!
//! A vertex is a fixed component: an isolated point, or a surface carrying an
//! area and a genus. An edge of weight `k >= 2` is an invariant sphere with
//! stabilizer of order `k`. Moment labels and areas are exact rationals.
//!
//! ```
//! use graph_core::{rational::int, DecoratedGraph, Edge, Vertex, validate_graph};
//!
//! let g = DecoratedGraph::new(
//!     vec![
//!         Vertex::point("a", int(-3)),
//!         Vertex::point("b", int(-1)),
//!         Vertex::point("c", int(1)),
//!         Vertex::point("d", int(3)),
//!     ],
//!     vec![Edge::new("a", "c", 2), Edge::new("b", "d", 2)],
//! )
//! .unwrap();
//! assert!(validate_graph(&g).is_valid());
//! ```

mod canonical;
mod error;
mod extend;
mod graph;
mod json;
mod order;
pub mod rational;
mod validate;
mod weights;

pub use canonical::{
    canonical_form, canonical_form_unchecked, canonical_order, is_isomorphic, CanonicalForm, ShiftMode,
};
pub use error::GraphError;
pub use extend::{extend_graph, extend_graph_to_extrema, Branch, ExtendedGraph};
pub use graph::{DecoratedGraph, Edge, Vertex, VertexId, VertexKind};
pub use json::{graph_from_json, graph_to_json, EdgeDoc, GraphDoc, VertexDoc};
pub use order::{compare, order_pairs, reaches_up, Comparison};
pub use rational::Rational;
pub use validate::{validate_graph, Rule, ValidationReport, Violation};
pub use weights::{down_weight, extremal_weights, isotropy_weights, up_weight, WeightPair};
