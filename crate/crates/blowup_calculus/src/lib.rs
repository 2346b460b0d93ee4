//! Equivariant blow-ups and blow-downs as exact rewrites of decorated graphs.
//!
//! Blowing up by `λ` at a fixed point replaces it according to its kind:
//!
//! - an interior point with weights `{m, -n}` splits into points at
//!   `α - nλ` and `α + mλ` joined by an edge of weight `m + n`;
//! - a point on a minimal surface lowers the area by `λ` and adds an
//!   edgeless interior point at `α + λ`;
//! - an isolated minimum with weights `n < m` moves to `α + nλ` and gains an
//!   interior neighbour at `α + mλ`, joined by weight `m - n`;
//! - an isolated minimum with weights `{1, 1}` becomes a sphere of area `λ`
//!   at level `α + λ`.
//!
//! Maxima are handled by flipping. Labels are kept affine in `λ` so that the
//! admissible sizes can be read off exactly.

mod blowdown;
mod blowup;

use graph_core::{GraphError, Rational};
use thiserror::Error;

pub use blowdown::{
    blowdown, blowdown_sites, is_consistent, reduce_to_minimal, BlowdownSite, Pattern, Reduction, Side,
};
pub use blowup::{
    blowup, blowup_sites, blowup_symbolic, instantiate, max_size, monotone_check, Affine, BlowupCase, BlowupSite,
    MaxSize, SymbolicBlowup, SymbolicKind, SymbolicVertex,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlowupError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("site {site} is tagged wrongly, the vertex is {actual:?}")]
    TagMismatch { site: BlowupSite, actual: BlowupCase },
    #[error("blow-up size {0} is not positive")]
    NonPositiveSize(Rational),
    #[error("blow-up of size {0} is not monotone")]
    NotMonotone(Rational),
    #[error("not a blow-down site: {0}")]
    NotASite(String),
    #[error("internal failure: {0}")]
    Internal(String),
}
