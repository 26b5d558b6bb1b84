//! Fixed-point machinery for mapping class group actions on CAT(0) spaces.
//!
//! The crate is organised in four layers:
//!
//! * [`model`]: concrete CAT(0) model spaces (Euclidean space, finite metric
//!   trees, the Siegel upper half space and products) with distances,
//!   geodesics and the symplectic action.
//! * [`analysis`]: circumcenters, displacement, exact classification of
//!   symplectic matrices and Helly verifiers.
//! * [`surface`]: a ribbon-graph model of the Lickorish curves on a closed
//!   surface, regular neighborhoods, enveloping subsurfaces, disjoint copy
//!   witnesses and Dehn twists on homology.
//! * [`engine`]: a rule-based derivation of a global fixed point for the
//!   Lickorish generators, emitted as a checkable certificate.

pub mod analysis;
pub mod cli;
pub mod combinatorics;
pub mod engine;
pub mod error;
pub mod model;
pub mod surface;
pub mod tolerance;

pub use error::{AnalysisError, EngineError, GeometryError, SurfaceError};
