use serde::{Deserialize, Serialize};

use super::lickorish::{CurveLabel, LickorishSystem};
use crate::model::SymplecticMatrix;

/// Action of the Dehn twist about `curve` on first homology: the
/// transvection `x -> x + <x, c> c`.
pub fn twist_matrix(sys: &LickorishSystem, curve: usize) -> SymplecticMatrix {
    SymplecticMatrix::transvection(sys.homology(curve), 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Commute,
    Braid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub pair: (CurveLabel, CurveLabel),
    pub relation: Relation,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationsReport {
    pub genus: usize,
    pub pairs: usize,
    pub commuting: usize,
    pub braid: usize,
    pub all_hold: bool,
    pub failures: Vec<RelationCheck>,
}

/// Checks commutation for disjoint pairs and the braid relation for pairs
/// meeting once, exactly in integer arithmetic.
pub fn check_relations(sys: &LickorishSystem) -> RelationsReport {
    let n = sys.curve_count();
    let twists: Vec<SymplecticMatrix> = (0..n).map(|c| twist_matrix(sys, c)).collect();
    let mut report = RelationsReport { genus: sys.genus(), pairs: 0, commuting: 0, braid: 0, all_hold: true, failures: Vec::new() };
    for x in 0..n {
        for y in x + 1..n {
            let (a, b) = (&twists[x], &twists[y]);
            let (relation, holds) = if sys.intersects(x, y) {
                report.braid += 1;
                (Relation::Braid, a.mul(b).mul(a) == b.mul(a).mul(b))
            } else {
                report.commuting += 1;
                (Relation::Commute, a.mul(b) == b.mul(a))
            };
            report.pairs += 1;
            if !holds {
                report.all_hold = false;
                report.failures.push(RelationCheck { pair: (sys.label(x), sys.label(y)), relation, holds });
            }
        }
    }
    report
}
