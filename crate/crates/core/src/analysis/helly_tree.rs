use serde::{Deserialize, Serialize};

use crate::error::AnalysisError;
use crate::model::tree::{MetricTree, TreePoint};
use crate::model::ModelPoint;

const TOL: f64 = 1e-12;

/// Closed sub-interval `[lo, hi]` of an edge, measured from the edge's `u` end.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeInterval {
    pub edge: usize,
    pub lo: f64,
    pub hi: f64,
}

/// A closed subset of a metric tree given as a union of edge intervals.
/// It is convex exactly when it is connected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Subtree {
    pub intervals: Vec<EdgeInterval>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HellyTreeReport {
    pub holds: bool,
    pub witness: Option<ModelPoint>,
    pub disjoint_pair: Option<(usize, usize)>,
}

/// Merged per-edge intervals plus vertex membership.
#[derive(Debug, Clone)]
pub struct NormalSubtree {
    per_edge: Vec<Vec<(f64, f64)>>,
    vertices: Vec<bool>,
}

impl Subtree {
    /// Closed ball of radius `r` around `c`.
    pub fn ball(tree: &MetricTree, c: TreePoint, r: f64) -> Self {
        let centre = tree.edges()[c.edge];
        let mut intervals = Vec::new();
        for (i, e) in tree.edges().iter().enumerate() {
            if i == c.edge {
                let (lo, hi) = ((c.offset - r).max(0.0), (c.offset + r).min(e.length));
                intervals.push(EdgeInterval { edge: i, lo, hi });
                continue;
            }
            let from = |v: usize| {
                (c.offset + tree.vertex_distance(centre.u, v)).min(centre.length - c.offset + tree.vertex_distance(centre.v, v))
            };
            let (du, dv) = (from(e.u), from(e.v));
            if du <= r {
                intervals.push(EdgeInterval { edge: i, lo: 0.0, hi: (r - du).min(e.length) });
            }
            if dv <= r {
                intervals.push(EdgeInterval { edge: i, lo: (e.length - (r - dv)).max(0.0), hi: e.length });
            }
        }
        Subtree { intervals }
    }

    /// Geodesic segment between two points.
    pub fn segment(tree: &MetricTree, p: TreePoint, q: TreePoint) -> Self {
        let intervals = tree
            .path_pieces(p, q)
            .into_iter()
            .map(|(edge, lo, hi)| EdgeInterval { edge, lo, hi })
            .collect();
        Subtree { intervals }
    }

    /// Convex hull of finitely many points: union of segments from the first point.
    pub fn hull(tree: &MetricTree, points: &[TreePoint]) -> Self {
        let mut intervals = Vec::new();
        for q in points.iter().skip(1) {
            intervals.extend(Self::segment(tree, points[0], *q).intervals);
        }
        if intervals.is_empty() {
            if let Some(p) = points.first() {
                intervals.push(EdgeInterval { edge: p.edge, lo: p.offset, hi: p.offset });
            }
        }
        Subtree { intervals }
    }

    /// Validates and merges intervals; rejects disconnected input.
    pub fn normalize(&self, tree: &MetricTree) -> Result<NormalSubtree, String> {
        if self.intervals.is_empty() {
            return Err("empty subtree".into());
        }
        let m = tree.edges().len();
        let mut per_edge: Vec<Vec<(f64, f64)>> = vec![Vec::new(); m];
        for iv in &self.intervals {
            let e = tree.edges().get(iv.edge).ok_or_else(|| format!("edge {} does not exist", iv.edge))?;
            let slack = TOL * e.length.max(1.0);
            if !(iv.lo.is_finite() && iv.hi.is_finite()) || iv.lo > iv.hi + slack || iv.lo < -slack || iv.hi > e.length + slack {
                return Err(format!("interval [{}, {}] invalid on edge {} of length {}", iv.lo, iv.hi, iv.edge, e.length));
            }
            per_edge[iv.edge].push((iv.lo.clamp(0.0, e.length), iv.hi.clamp(0.0, e.length).max(iv.lo.clamp(0.0, e.length))));
        }
        for list in &mut per_edge {
            list.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut merged: Vec<(f64, f64)> = Vec::new();
            for &(lo, hi) in list.iter() {
                match merged.last_mut() {
                    Some(last) if lo <= last.1 + TOL => last.1 = last.1.max(hi),
                    _ => merged.push((lo, hi)),
                }
            }
            *list = merged;
        }
        let n = tree.vertex_count();
        let mut vertices = vec![false; n];
        // union-find over vertices (0..n) and pieces (n..)
        let mut pieces = Vec::new();
        for (e, list) in per_edge.iter().enumerate() {
            for &(lo, hi) in list {
                pieces.push((e, lo, hi));
            }
        }
        let mut parent: Vec<usize> = (0..n + pieces.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for (k, &(e, lo, hi)) in pieces.iter().enumerate() {
            let edge = tree.edges()[e];
            for (touch, v) in [(lo <= TOL, edge.u), (hi >= edge.length - TOL, edge.v)] {
                if touch {
                    vertices[v] = true;
                    let (a, b) = (find(&mut parent, n + k), find(&mut parent, v));
                    parent[a] = b;
                }
            }
        }
        let root = find(&mut parent, n);
        if (1..pieces.len()).any(|k| find(&mut parent, n + k) != root) {
            return Err("subtree is not connected".into());
        }
        Ok(NormalSubtree { per_edge, vertices })
    }
}

impl NormalSubtree {
    pub fn contains(&self, tree: &MetricTree, p: TreePoint) -> bool {
        if let Some(v) = tree.as_vertex(p, TOL) {
            if self.vertices[v] {
                return true;
            }
        }
        self.per_edge[p.edge].iter().any(|&(lo, hi)| p.offset >= lo - TOL && p.offset <= hi + TOL)
    }
}

fn common_point(tree: &MetricTree, sets: &[&NormalSubtree]) -> Option<TreePoint> {
    for v in 0..tree.vertex_count() {
        if sets.iter().all(|s| s.vertices[v]) {
            return Some(tree.vertex_point(v));
        }
    }
    for e in 0..tree.edges().len() {
        let mut acc = sets[0].per_edge[e].clone();
        for s in &sets[1..] {
            let mut next = Vec::new();
            for &(a, b) in &acc {
                for &(c, d) in &s.per_edge[e] {
                    let (lo, hi) = (a.max(c), b.min(d));
                    if lo <= hi + TOL {
                        next.push((lo, hi.max(lo)));
                    }
                }
            }
            acc = next;
            if acc.is_empty() {
                break;
            }
        }
        if let Some(&(lo, hi)) = acc.first() {
            return Some(TreePoint { edge: e, offset: 0.5 * (lo + hi) });
        }
    }
    None
}

/// Helly check in a finite metric tree: either a pair of disjoint subtrees
/// or a point common to all of them.
pub fn helly_check_tree(tree: &MetricTree, subtrees: &[Subtree]) -> Result<HellyTreeReport, AnalysisError> {
    if subtrees.is_empty() {
        return Err(AnalysisError::EmptyInput);
    }
    let norm = subtrees
        .iter()
        .enumerate()
        .map(|(index, s)| s.normalize(tree).map_err(|reason| AnalysisError::NonConvex { index, reason }))
        .collect::<Result<Vec<_>, _>>()?;
    for i in 0..norm.len() {
        for j in i + 1..norm.len() {
            if common_point(tree, &[&norm[i], &norm[j]]).is_none() {
                return Ok(HellyTreeReport { holds: false, witness: None, disjoint_pair: Some((i, j)) });
            }
        }
    }
    let refs: Vec<&NormalSubtree> = norm.iter().collect();
    let p = common_point(tree, &refs)
        .ok_or_else(|| AnalysisError::Inconsistent("pairwise intersecting subtrees without a common point".into()))?;
    if let Some(bad) = norm.iter().position(|s| !s.contains(tree, p)) {
        return Err(AnalysisError::Inconsistent(format!("witness outside subtree {bad}")));
    }
    Ok(HellyTreeReport { holds: true, witness: Some(ModelPoint::tree(p)), disjoint_pair: None })
}
