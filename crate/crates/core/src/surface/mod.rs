//! Lickorish curves on a closed surface, neighborhoods of curve unions,
//! enveloping subsurfaces, disjoint copies and Dehn twists on homology.

pub mod copies;
pub mod curveset;
pub mod envelope;
pub mod lickorish;
pub mod neighborhood;
pub mod twist;

pub use copies::{check_copies_witness, disjoint_copies_witness, max_copies_witness, CopiesWitness, CopyPiece};
pub use curveset::CurveSet;
pub use envelope::{
    alternative_for, check_subset_bound, enveloping_subsurface, verify_prop52, Alternative, BoundReport, Envelope,
    EnvelopeCandidate, SubsetStatus, SubsurfaceType, Violation,
};
pub use lickorish::{lickorish_system, CurveFamily, CurveLabel, LickorishSystem, SystemSummary};
pub use neighborhood::{neighborhood, ComplementSummary, RibbonNeighborhood};
pub use twist::{check_relations, twist_matrix, Relation, RelationCheck, RelationsReport};
