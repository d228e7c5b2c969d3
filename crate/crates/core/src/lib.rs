//! Signed Roman and signed total Roman domination on convex polytope graphs.
//!
//! The crate builds six cyclic polytope families, checks labelings
//! `f: V -> {-1, 1, 2}` against the SRD and STRD conditions, constructs the
//! explicit upper-bound labelings for each family, computes exact minimum
//! weights with two independent solvers, and evaluates the known general
//! and per-family bounds.

pub mod bounds;
pub mod certificate;
pub mod error;
pub mod family;
pub mod labeling;
pub mod report;
pub mod solver;

pub use error::{Error, Result};
pub use family::{generate, FamilyKind, PolytopeGraph, VertexClass, VertexId};
pub use labeling::{Label, LabelFunction, Variant, Violation};
