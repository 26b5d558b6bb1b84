//! CAT(0) analysis primitives.

pub mod circumcenter;
pub mod classify;
pub mod helly_euclid;
pub mod helly_tree;
pub mod isometry;
pub mod minball;
pub mod poly;
pub mod translation;

pub use circumcenter::{circumcenter, EnclosingBall};
pub use classify::{classify_rational, classify_symplectic, Classification, IsometryClass, IsometryKind};
pub use helly_euclid::{helly_check_euclidean, HalfSpace, HellyEuclidReport, Polytope};
pub use helly_tree::{helly_check_tree, EdgeInterval, HellyTreeReport, Subtree};
pub use isometry::{displacement, Isometry};
pub use translation::{translation_length_estimate, Budget, TranslationEstimate};
