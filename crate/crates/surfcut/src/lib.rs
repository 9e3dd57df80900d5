//! Combinatorial invariants of surface cut algebras.
//!
//! The crate works with ideal triangulations of marked surfaces and the
//! graded quivers attached to them. It covers:
//!
//! - [`surface`]: marked surfaces, triangulations, validation and flips;
//! - [`quiver`]: graded quivers, graded left mutation, grading equivalence;
//! - [`complexes`]: the chain complexes of a triangulation, the comparison
//!   maps between them and integer homology;
//! - [`curves`]: closed curves, their chains and transport of gradings along
//!   flip sequences;
//! - [`cuts`]: admissible cuts and the matching graph that detects them;
//! - [`gldim`]: projective shapes and the global dimension test for cut
//!   algebras, plus a constructor of good (triangulation, cut) pairs;
//! - [`compare`]: the certificate-checking comparator for graded
//!   triangulations.
//!
//! Supporting modules: [`build`] assembles standard triangulations,
//! [`document`] reads and writes the JSON exchange format and [`linalg`]
//! provides Smith normal form over arbitrary-precision integers.

pub mod build;
pub mod compare;
pub mod complexes;
pub mod curves;
pub mod cuts;
pub mod document;
pub mod gldim;
pub mod linalg;
pub mod quiver;
pub mod surface;

pub use complexes::SurfaceQuiver;
pub use surface::{MarkedSurface, Triangulation};
