//! Toolkit for finding cycles as pivot-minors and pure pairs in graphs.
//!
//! The crate is organized around machine-checkable certificates: every
//! structural claim it makes about a graph is backed by either a replayable
//! pivot/delete [`pivot::Witness`], a [`graph::PurePair`], or an induced hole,
//! each with its own verifier.

pub mod canon;
pub mod constructions;
pub mod decomposition;
pub mod driver;
pub mod graph;
pub mod pivot;
pub mod sweep;

mod error;

pub use error::Error;
pub type Result<T> = std::result::Result<T, Error>;

/// Exact rational weight used by the tree-splitting routines by default.
pub type RationalWeight = num_rational::Ratio<i64>;

/// Floating-point weight alternative for callers that do not need exactness.
pub type FloatWeight = f64;
