use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::curveset::CurveSet;
use super::envelope::SubsurfaceType;
use super::lickorish::{CurveFamily, LickorishSystem};
use super::neighborhood::{cut, Cut};
use crate::error::SurfaceError;

/// One copy of the target subsurface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CopyPiece {
    /// Regular neighborhood of `blocks[block]`.
    Neighborhood { block: usize },
    /// Complement component of the neighborhood of the union of all blocks,
    /// numbered by smallest face.
    Complement { region: usize },
}

/// Pairwise disjoint subsurfaces of one type, each with connected complement.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CopiesWitness {
    pub subsurface: SubsurfaceType,
    /// Connected, pairwise disjoint and pairwise non-intersecting curve sets.
    pub blocks: Vec<CurveSet>,
    pub pieces: Vec<CopyPiece>,
}

impl CopiesWitness {
    pub fn count(&self) -> usize {
        self.pieces.len()
    }
}

fn chain_position(sys: &LickorishSystem, c: usize) -> usize {
    let l = sys.label(c);
    match l.family {
        CurveFamily::A | CurveFamily::B => 2 * (l.index - 1),
        CurveFamily::C => 2 * (l.index - 1) + 1,
    }
}

fn closed_neighbourhood(sys: &LickorishSystem, s: CurveSet) -> CurveSet {
    s.iter().fold(s, |acc, c| acc.union(sys.neighbours(c)))
}

/// Connected curve subsets of exactly `size` curves.
pub(crate) fn connected_subsets(sys: &LickorishSystem, size: usize) -> Vec<CurveSet> {
    if size == 0 || size > sys.curve_count() {
        return Vec::new();
    }
    let mut level: HashSet<u64> = (0..sys.curve_count()).map(|c| CurveSet::singleton(c).0).collect();
    for _ in 1..size {
        let mut next = HashSet::new();
        for &m in &level {
            let s = CurveSet(m);
            for c in closed_neighbourhood(sys, s).minus(s).iter() {
                let mut t = s;
                t.insert(c);
                next.insert(t.0);
            }
        }
        level = next;
    }
    let mut out: Vec<CurveSet> = level.into_iter().map(CurveSet).collect();
    out.sort();
    out
}

fn block_matches(c: &Cut, t: SubsurfaceType) -> bool {
    c.components == 1 && c.genus() == t.genus && c.walks.len() == t.boundary && c.regions.len() == 1
}

/// Graph on blocks and complement regions of their union, joined when a
/// boundary curve of a block faces a region.
struct PieceGraph {
    nodes: usize,
    edges: Vec<(usize, usize)>,
}

impl PieceGraph {
    fn new(blocks: &[CurveSet], c: &Cut) -> Self {
        let k = blocks.len();
        let mut edges = Vec::new();
        for w in &c.walks {
            let b = blocks.iter().position(|b| b.contains(w.curve)).expect("walk curve lies in a block");
            edges.push((b, k + w.region));
        }
        PieceGraph { nodes: k + c.regions.len(), edges }
    }

    fn connected_without(&self, removed: usize) -> bool {
        let mut parent: Vec<usize> = (0..self.nodes).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(a, b) in &self.edges {
            if a != removed && b != removed {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        let mut roots = HashSet::new();
        for v in (0..self.nodes).filter(|&v| v != removed) {
            roots.insert(find(&mut parent, v));
        }
        roots.len() <= 1
    }
}

fn complement_pieces(sys: &LickorishSystem, blocks: &[CurveSet], t: SubsurfaceType) -> Vec<CopyPiece> {
    if blocks.is_empty() {
        return Vec::new();
    }
    let u = blocks.iter().fold(CurveSet::default(), |a, b| a.union(*b));
    let c = cut(sys, u);
    let graph = PieceGraph::new(blocks, &c);
    c.regions
        .iter()
        .enumerate()
        .filter(|(r, reg)| reg.genus == t.genus && reg.boundary == t.boundary && graph.connected_without(blocks.len() + r))
        .map(|(r, _)| CopyPiece::Complement { region: r })
        .collect()
}

fn witness_for(sys: &LickorishSystem, t: SubsurfaceType, blocks: Vec<CurveSet>) -> CopiesWitness {
    let mut pieces: Vec<CopyPiece> = (0..blocks.len()).map(|block| CopyPiece::Neighborhood { block }).collect();
    pieces.extend(complement_pieces(sys, &blocks, t));
    CopiesWitness { subsurface: t, blocks, pieces }
}

/// Largest set of disjoint copies of `t` found by packing chain blocks from
/// left to right, or a single block together with complement components.
pub fn max_copies_witness(sys: &LickorishSystem, t: SubsurfaceType) -> CopiesWitness {
    let empty = CopiesWitness { subsurface: t, blocks: Vec::new(), pieces: Vec::new() };
    if t.boundary == 0 || !t.nonseparating {
        return empty;
    }
    let mut candidates: Vec<CurveSet> = connected_subsets(sys, t.chain_length())
        .into_iter()
        .filter(|&s| block_matches(&cut(sys, s), t))
        .collect();
    if candidates.is_empty() {
        return empty;
    }
    candidates.sort_by_key(|&s| (s.iter().map(|c| chain_position(sys, c)).max(), s.len(), s.0));

    let mut chosen: Vec<CurveSet> = Vec::new();
    let mut used = CurveSet::default();
    for &s in &candidates {
        if closed_neighbourhood(sys, s).is_disjoint(used) {
            chosen.push(s);
            used = used.union(s);
        }
    }
    let mut best = witness_for(sys, t, chosen);
    for &s in &candidates {
        let w = witness_for(sys, t, vec![s]);
        if w.count() > best.count() {
            best = w;
        }
    }
    best
}

/// `count` disjoint copies of `t`, each with connected complement.
pub fn disjoint_copies_witness(sys: &LickorishSystem, t: SubsurfaceType, count: usize) -> Result<CopiesWitness, SurfaceError> {
    if count == 0 {
        return Err(SurfaceError::NonPositiveCount);
    }
    if t.boundary == 0 {
        return Err(SurfaceError::InvalidType("boundary count must be at least 1".into()));
    }
    if !t.nonseparating {
        return Err(SurfaceError::InvalidType("copies must have connected complement".into()));
    }
    let mut w = max_copies_witness(sys, t);
    if w.count() < count {
        return Err(SurfaceError::InsufficientCopies { requested: count, found: w.count() });
    }
    w.pieces.truncate(count);
    Ok(w)
}

/// Re-checks a witness from the curve data alone.
pub fn check_copies_witness(sys: &LickorishSystem, w: &CopiesWitness) -> Result<(), String> {
    let t = w.subsurface;
    if t.boundary == 0 || !t.nonseparating {
        return Err(format!("invalid subsurface type (genus {}, boundary {})", t.genus, t.boundary));
    }
    if w.pieces.is_empty() {
        return Err("witness has no pieces".into());
    }
    let all = sys.all();
    for (i, &b) in w.blocks.iter().enumerate() {
        if b.is_empty() || !all.contains_set(b) {
            return Err(format!("block {i} is empty or names unknown curves"));
        }
        if sys.components(b).len() != 1 {
            return Err(format!("block {i} ({}) is not connected", sys.format_set(b)));
        }
        for (j, &other) in w.blocks.iter().enumerate().skip(i + 1) {
            if !closed_neighbourhood(sys, b).is_disjoint(other) {
                return Err(format!("blocks {i} and {j} overlap or intersect"));
            }
        }
    }
    let mut seen = HashSet::new();
    for p in &w.pieces {
        if !seen.insert(*p) {
            return Err(format!("piece {p:?} listed twice"));
        }
    }
    let u = w.blocks.iter().fold(CurveSet::default(), |a, b| a.union(*b));
    let c = if u.is_empty() { None } else { Some(cut(sys, u)) };
    for p in &w.pieces {
        match *p {
            CopyPiece::Neighborhood { block } => {
                let b = *w.blocks.get(block).ok_or_else(|| format!("piece refers to missing block {block}"))?;
                let bc = cut(sys, b);
                if bc.genus() != t.genus || bc.walks.len() != t.boundary {
                    return Err(format!(
                        "block {block} has genus {} and {} boundary curves, expected {} and {}",
                        bc.genus(),
                        bc.walks.len(),
                        t.genus,
                        t.boundary
                    ));
                }
                if bc.regions.len() != 1 {
                    return Err(format!("complement of block {block} is disconnected"));
                }
            }
            CopyPiece::Complement { region } => {
                let c = c.as_ref().ok_or("complement piece without blocks")?;
                let reg = c.regions.get(region).ok_or_else(|| format!("piece refers to missing region {region}"))?;
                if reg.genus != t.genus || reg.boundary != t.boundary {
                    return Err(format!(
                        "region {region} has genus {} and {} boundary curves, expected {} and {}",
                        reg.genus, reg.boundary, t.genus, t.boundary
                    ));
                }
                let graph = PieceGraph::new(&w.blocks, c);
                if !graph.connected_without(w.blocks.len() + region) {
                    return Err(format!("complement of region {region} is disconnected"));
                }
            }
        }
    }
    Ok(())
}
