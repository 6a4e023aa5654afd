//! Exact computation of Kollár components of two-dimensional Du Val and
//! cyclic quotient singularities.
//!
//! Everything in this crate is computed in exact arithmetic: integer
//! lattice determinants, rational linear solves, rational α-invariants.
//! There are no tolerances anywhere.
//!
//! The main pipeline is:
//!
//! 1. [`dual_graph`] — weighted dual graphs of exceptional curves, their
//!    intersection matrices, contractibility (negative definiteness),
//!    local group orders, and blow-up surgery.
//! 2. [`hirzebruch_jung`] — translation between cyclic quotient data
//!    `(n, q)` and the self-intersection chain of its minimal resolution.
//! 3. [`discrepancy`] — exact rational linear algebra on the lattice:
//!    discrepancies, plt tests, Mumford pullbacks, the log Fano degree δ.
//! 4. [`component`] — Kollár components: different, δ, α.
//! 5. [`alpha`] — α-invariants of log Fano structures on a rational
//!    curve, including an independent brute-force lct oracle.
//! 6. [`catalog`] — per-singularity component enumeration, the pairwise
//!    α-sum verification, weak exceptionality, semistable uniqueness.
//!
//! All values are immutable after construction and all operations are
//! pure functions, so everything here can be used concurrently without
//! restriction.

pub mod alpha;
pub mod catalog;
pub mod component;
pub mod discrepancy;
pub mod dual_graph;
pub mod error;
pub mod hirzebruch_jung;
pub mod rational;

pub(crate) mod linalg;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
