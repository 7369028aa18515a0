//! Bijections between secondary structures, plane trees and forests.

mod chen;
mod forest;
mod sw;

use thiserror::Error;

pub use chen::{chen_forward, chen_inverse};
pub use forest::{
    enumerate_labelled_trees, forest_decode, forest_encode, ForestParams, Label, LabelClass, LabelledTree, SmallForest,
    SmallTree,
};
pub use sw::{sw_forward, sw_inverse};

use crate::structure::StructureError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BijectionError {
    #[error("a single-node tree has no corresponding secondary structure")]
    SingleNode,
    #[error("structure has no isolated base to root the tree")]
    NoIsolatedBase,
    #[error("tree does not encode a secondary structure: {0}")]
    Malformed(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("invalid labelled tree: {0}")]
    InvalidLabels(String),
    #[error("invalid forest: {0}")]
    InvalidForest(String),
}
