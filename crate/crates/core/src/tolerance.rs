//! Global numerical tolerances.

/// Validity checks on inputs (symmetry, positive definiteness).
pub const VALIDITY: f64 = 1e-12;
/// Geometric equalities (geodesic additivity, enclosing balls).
pub const GEOMETRY: f64 = 1e-9;
/// Invariance under composed numerics (group actions, comparison triangles).
pub const INVARIANCE: f64 = 1e-8;
/// Relative tolerance for a real matrix to count as symplectic.
pub const SYMPLECTIC: f64 = 1e-10;
/// Feasibility slack for linear programs.
pub const LP_FEASIBILITY: f64 = 1e-9;
