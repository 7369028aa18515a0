//! Exact enumeration of RNA secondary structures and plane trees.
//!
//! The crate is organised around a small number of layers:
//!
//! * [`structure`] models secondary structures (non-crossing arc diagrams),
//!   parses dot-bracket text, enumerates every structure of a given shape and
//!   extracts partial stack, helix and loop statistics.
//! * [`tree`] models plane trees and their level/E-block statistics.
//! * [`bijection`] maps structures to trees (two classical bijections) and
//!   labelled set-alternating trees to forests of small trees.
//! * [`series`] is a truncated bivariate power series type with exact integer
//!   coefficients, used to solve tree-counting systems by fixed-point
//!   iteration and by bivariate Lagrange inversion.
//! * [`counting`] holds the closed-form counting formulas.
//! * [`verify`] cross-checks every formula against exhaustive enumeration.
//!
//! Throughout, `b` is the number of real base pairs (the auxiliary arc
//! `(0, n+1)` is *not* included) and `k` the number of isolated bases, so a
//! structure has length `n = 2b + k` and `b + 1` arcs once the auxiliary arc
//! is adjoined.

pub mod bijection;
pub mod cli;
pub mod counting;
mod lex;
pub mod series;
pub mod structure;
pub mod tree;
pub mod verify;

pub use bijection::{
    chen_forward, chen_inverse, forest_decode, forest_encode, sw_forward, sw_inverse, BijectionError, Label,
    LabelClass, LabelledTree, SmallForest, SmallTree,
};
pub use counting::{CountError, CountingResult, SizeDistribution};
pub use series::{BivariateSeries, SeriesError, TreeSystem};
pub use structure::{
    classify_loops, compute_stats, enumerate_structures, parse_dot_bracket, Loop, LoopKind, SecondaryStructure,
    StructureError, StructureStats,
};
pub use tree::{enumerate_plane_trees, PlaneTree, TreeError, TreeStats};
