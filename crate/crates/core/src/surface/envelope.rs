use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::curveset::CurveSet;
use super::lickorish::{CurveLabel, LickorishSystem};
use super::neighborhood::{cut, neighborhood, RibbonNeighborhood};
use crate::error::SurfaceError;

/// Topological type of a compact subsurface: genus, number of boundary
/// curves, and whether its complement is connected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubsurfaceType {
    pub genus: usize,
    pub boundary: usize,
    pub nonseparating: bool,
}

impl SubsurfaceType {
    pub fn new(genus: usize, boundary: usize) -> Self {
        SubsurfaceType { genus, boundary, nonseparating: true }
    }

    pub fn chi(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary as i64
    }

    /// Size of a chain-like Lickorish subset whose neighborhood has this type.
    pub fn chain_length(&self) -> usize {
        (2 * self.genus + self.boundary).saturating_sub(1)
    }
}

/// Subsurface obtained by filling in every complement component of the
/// neighborhood except `excluded`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopeCandidate {
    pub subsurface: SubsurfaceType,
    pub excluded: usize,
    pub absorbed: Vec<usize>,
    /// The excluded component is a disk, so the candidate is the whole
    /// surface minus a disk.
    pub whole_surface: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope {
    pub curves: Vec<CurveLabel>,
    pub neighborhood: RibbonNeighborhood,
    /// Sorted by (genus, boundary, excluded component).
    pub candidates: Vec<EnvelopeCandidate>,
}

impl Envelope {
    pub fn best(&self) -> &EnvelopeCandidate {
        &self.candidates[0]
    }

    /// Smallest candidate that is not the whole surface.
    pub fn best_proper(&self) -> Option<&EnvelopeCandidate> {
        self.candidates.iter().find(|c| !c.whole_surface)
    }
}

pub(crate) fn candidates_from_regions(genus: usize, regions: &[super::neighborhood::ComplementSummary]) -> Vec<EnvelopeCandidate> {
    let mut out: Vec<EnvelopeCandidate> = regions
        .iter()
        .enumerate()
        .map(|(k, r)| EnvelopeCandidate {
            subsurface: SubsurfaceType::new(genus + 1 - r.genus - r.boundary, r.boundary),
            excluded: k,
            absorbed: (0..regions.len()).filter(|&j| j != k).collect(),
            whole_surface: r.is_disk(),
        })
        .collect();
    out.sort_by_key(|c| (c.subsurface.genus, c.subsurface.boundary, c.excluded));
    out
}

/// Non-separating subsurfaces with connected complement that contain the
/// union of the curves in `s`.
pub fn enveloping_subsurface(sys: &LickorishSystem, s: CurveSet) -> Result<Envelope, SurfaceError> {
    if !sys.is_connected_subset(s)? {
        return Err(SurfaceError::Disconnected(sys.format_set(s)));
    }
    let nb = neighborhood(sys, s)?;
    let candidates = candidates_from_regions(sys.genus(), &nb.complement);
    Ok(Envelope { curves: sys.labels_of(s), neighborhood: nb, candidates })
}

/// The two size-dependent alternatives a connected subset may satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Alternative {
    /// |S| = 2l: genus l, one boundary curve.
    EvenFullGenus,
    /// |S| = 2l: genus at most l - 1, three boundary curves.
    EvenThreeBoundary,
    /// |S| = 2l + 1: genus l, at most two boundary curves.
    OddFullGenus,
    /// |S| = 2l + 1: genus at most l - 1, at most three boundary curves.
    OddLowGenus,
}

impl Alternative {
    pub fn as_str(&self) -> &'static str {
        match self {
            Alternative::EvenFullGenus => "even_full_genus",
            Alternative::EvenThreeBoundary => "even_three_boundary",
            Alternative::OddFullGenus => "odd_full_genus",
            Alternative::OddLowGenus => "odd_low_genus",
        }
    }
}

/// Alternative met by a subsurface of type `t` enveloping `size` curves.
pub fn alternative_for(size: usize, t: SubsurfaceType) -> Option<Alternative> {
    let ell = size / 2;
    let (h, b) = (t.genus, t.boundary);
    if size.is_multiple_of(2) {
        if h == ell && b == 1 {
            Some(Alternative::EvenFullGenus)
        } else if h < ell && b == 3 {
            Some(Alternative::EvenThreeBoundary)
        } else {
            None
        }
    } else if h == ell && b <= 2 {
        Some(Alternative::OddFullGenus)
    } else if h < ell && b <= 3 {
        Some(Alternative::OddLowGenus)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SubsetStatus {
    Satisfied { alternative: Alternative, subsurface: SubsurfaceType, excluded: usize, all: Vec<Alternative> },
    /// Only the whole surface (minus a disk) envelopes the subset.
    WholeSurface,
    Violation { candidates: Vec<EnvelopeCandidate> },
}

/// Checks one connected subset against the envelope bound.
pub fn check_subset_bound(sys: &LickorishSystem, s: CurveSet) -> Result<SubsetStatus, SurfaceError> {
    if !sys.is_connected_subset(s)? {
        return Err(SurfaceError::Disconnected(sys.format_set(s)));
    }
    let c = cut(sys, s);
    Ok(status_of(s.len(), candidates_from_regions(sys.genus(), &c.regions)))
}

fn status_of(size: usize, candidates: Vec<EnvelopeCandidate>) -> SubsetStatus {
    let hits: Vec<(Alternative, &EnvelopeCandidate)> = candidates
        .iter()
        .filter(|c| !c.whole_surface)
        .filter_map(|c| alternative_for(size, c.subsurface).map(|a| (a, c)))
        .collect();
    if let Some(&(alternative, c)) = hits.first() {
        let mut all: Vec<Alternative> = hits.iter().map(|h| h.0).collect();
        all.sort();
        all.dedup();
        SubsetStatus::Satisfied { alternative, subsurface: c.subsurface, excluded: c.excluded, all }
    } else if candidates.iter().any(|c| c.whole_surface) {
        SubsetStatus::WholeSurface
    } else {
        SubsetStatus::Violation { candidates }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub curves: Vec<CurveLabel>,
    pub candidates: Vec<EnvelopeCandidate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub genus: usize,
    pub connected_subsets: usize,
    pub satisfied: usize,
    pub whole_surface: usize,
    /// Subsets enveloped by candidates meeting both alternatives of their size.
    pub both_alternatives: usize,
    /// Keyed by alternative, counting the first satisfying candidate.
    pub alternative_counts: BTreeMap<String, usize>,
    pub whole_surface_subsets: Vec<Vec<CurveLabel>>,
    pub violations: Vec<Violation>,
}

pub const BOUND_MAX_GENUS: usize = 6;

/// Exhaustively checks every connected subset of the Lickorish curves.
pub fn verify_prop52(genus: usize) -> Result<BoundReport, SurfaceError> {
    if !(super::lickorish::MIN_GENUS..=BOUND_MAX_GENUS).contains(&genus) {
        return Err(SurfaceError::GenusOutOfRange {
            genus,
            min: super::lickorish::MIN_GENUS,
            max: BOUND_MAX_GENUS,
        });
    }
    let sys = LickorishSystem::new(genus)?;
    let n = sys.curve_count();
    let statuses: Vec<(CurveSet, SubsetStatus)> = (1u64..(1u64 << n))
        .into_par_iter()
        .filter_map(|mask| {
            let s = CurveSet(mask);
            if sys.components(s).len() != 1 {
                return None;
            }
            let c = cut(&sys, s);
            Some((s, status_of(s.len(), candidates_from_regions(genus, &c.regions))))
        })
        .collect();
    let mut report = BoundReport {
        genus,
        connected_subsets: statuses.len(),
        satisfied: 0,
        whole_surface: 0,
        both_alternatives: 0,
        alternative_counts: BTreeMap::new(),
        whole_surface_subsets: Vec::new(),
        violations: Vec::new(),
    };
    for (s, status) in statuses {
        match status {
            SubsetStatus::Satisfied { alternative, all, .. } => {
                report.satisfied += 1;
                if all.len() > 1 {
                    report.both_alternatives += 1;
                }
                *report.alternative_counts.entry(alternative.as_str().to_string()).or_default() += 1;
            }
            SubsetStatus::WholeSurface => {
                report.whole_surface += 1;
                report.whole_surface_subsets.push(sys.labels_of(s));
            }
            SubsetStatus::Violation { candidates } => {
                report.violations.push(Violation { curves: sys.labels_of(s), candidates });
            }
        }
    }
    Ok(report)
}
