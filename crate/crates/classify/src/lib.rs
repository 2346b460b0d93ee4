//! Minimal models, toric classification and enumeration of graphs.
//!
//! Every compact four-dimensional Hamiltonian circle space is obtained from a
//! minimal one by equivariant blow-ups. The minimal graphs come in four
//! families, each possibly turned upside down: the projective plane with
//! isolated fixed points or with a fixed sphere, Hirzebruch surfaces, and
//! ruled manifolds with two fixed surfaces.

mod enumerate;
mod families;
mod labels;
mod toric;

use blowup_calculus::BlowupError;
use graph_core::GraphError;
use thiserror::Error;
use toric_geometry::ToricError;

pub use enumerate::{enumerate, EnumeratedGraph, EnumerationConfig, LambdaRule};
pub use families::{minimal_graph, recognize_minimal, Family, HirzebruchVariant, MinimalFamily, Orientation};
pub use labels::{assign_labels, label_offset, Moments, Skeleton};
pub use toric::{classify_isolated, is_toric_extendable, level_counts};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("bad parameters: {0}")]
    Parameter(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Blowup(#[from] BlowupError),
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error("vertex {0} is a fixed surface")]
    NotIsolated(String),
    #[error("the graph has {0} branches")]
    Branches(usize),
    #[error("polygon condition fails: {0}")]
    Condition(String),
    #[error("label constraint fails: {0}")]
    Labels(String),
}
