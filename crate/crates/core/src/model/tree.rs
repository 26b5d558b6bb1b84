use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TreeEdge {
    pub u: usize,
    pub v: usize,
    pub length: f64,
}

#[derive(Serialize, Deserialize)]
struct TreeSpec {
    vertices: usize,
    edges: Vec<TreeEdge>,
}

/// A finite metric tree with precomputed all-pairs vertex distances.
///
/// Points live on edges: `(edge, offset)` is at distance `offset` from the
/// edge's `u` endpoint. Vertices therefore have several representations.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "TreeSpec", into = "TreeSpec")]
pub struct MetricTree {
    vertices: usize,
    edges: Vec<TreeEdge>,
    adjacency: Vec<Vec<(usize, usize)>>,
    dist: Vec<f64>,
    // toward[r * n + v]: (neighbor of v on the path to r, connecting edge)
    toward: Vec<Option<(usize, usize)>>,
    edge_index: HashMap<(usize, usize), usize>,
}

impl PartialEq for MetricTree {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl TryFrom<TreeSpec> for MetricTree {
    type Error = GeometryError;
    fn try_from(spec: TreeSpec) -> Result<Self, Self::Error> {
        MetricTree::new(spec.vertices, spec.edges)
    }
}

impl From<MetricTree> for TreeSpec {
    fn from(t: MetricTree) -> Self {
        TreeSpec { vertices: t.vertices, edges: t.edges }
    }
}

/// A point of a tree seen from one of its edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreePoint {
    pub edge: usize,
    pub offset: f64,
}

impl MetricTree {
    pub fn new(vertices: usize, edges: Vec<TreeEdge>) -> Result<Self, GeometryError> {
        let bad = |m: String| Err(GeometryError::InvalidSpace(m));
        if vertices < 2 {
            return bad("a metric tree needs at least two vertices".into());
        }
        if edges.len() != vertices - 1 {
            return bad(format!(
                "a tree on {vertices} vertices has {} edges, got {}",
                vertices - 1,
                edges.len()
            ));
        }
        let mut adjacency = vec![Vec::new(); vertices];
        let mut edge_index = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            if e.u >= vertices || e.v >= vertices || e.u == e.v {
                return bad(format!("edge {i} has invalid endpoints ({}, {})", e.u, e.v));
            }
            if !(e.length.is_finite() && e.length > 0.0) {
                return bad(format!("edge {i} has non-positive length {}", e.length));
            }
            if edge_index.insert((e.u.min(e.v), e.u.max(e.v)), i).is_some() {
                return bad(format!("edge {i} duplicates an earlier edge"));
            }
            adjacency[e.u].push((e.v, i));
            adjacency[e.v].push((e.u, i));
        }
        let n = vertices;
        let mut dist = vec![f64::INFINITY; n * n];
        let mut toward = vec![None; n * n];
        for r in 0..n {
            dist[r * n + r] = 0.0;
            let mut queue = VecDeque::from([r]);
            while let Some(x) = queue.pop_front() {
                for &(y, e) in &adjacency[x] {
                    if dist[r * n + y].is_infinite() {
                        dist[r * n + y] = dist[r * n + x] + edges[e].length;
                        toward[r * n + y] = Some((x, e));
                        queue.push_back(y);
                    }
                }
            }
            if dist[r * n..(r + 1) * n].iter().any(|d| d.is_infinite()) {
                return bad("tree is not connected".into());
            }
        }
        Ok(MetricTree { vertices, edges, adjacency, dist, toward, edge_index })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn vertex_distance(&self, a: usize, b: usize) -> f64 {
        self.dist[a * self.vertices + b]
    }

    /// Edge joining `a` and `b`, if any.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&(a.min(b), a.max(b))).copied()
    }

    /// Vertex path from `a` to `b` inclusive, as (vertices, edges).
    pub fn vertex_path(&self, a: usize, b: usize) -> (Vec<usize>, Vec<usize>) {
        let mut verts = vec![a];
        let mut es = Vec::new();
        let mut x = a;
        while x != b {
            let (y, e) = self.toward[b * self.vertices + x].expect("tree is connected");
            verts.push(y);
            es.push(e);
            x = y;
        }
        (verts, es)
    }

    pub fn validate_point(&self, p: TreePoint) -> Result<(), GeometryError> {
        let e = self.edges.get(p.edge).ok_or_else(|| {
            GeometryError::InvalidPoint(format!("edge {} does not exist", p.edge))
        })?;
        let slack = tolerance::VALIDITY * e.length.max(1.0);
        if !p.offset.is_finite() || p.offset < -slack || p.offset > e.length + slack {
            return Err(GeometryError::InvalidPoint(format!(
                "offset {} outside [0, {}] on edge {}",
                p.offset, e.length, p.edge
            )));
        }
        Ok(())
    }

    /// Point at vertex `v`, expressed on its first incident edge.
    pub fn vertex_point(&self, v: usize) -> TreePoint {
        let &(_, e) = self.adjacency[v].first().expect("tree has at least one edge");
        let edge = self.edges[e];
        TreePoint { edge: e, offset: if edge.u == v { 0.0 } else { edge.length } }
    }

    /// The vertex a point coincides with, if any.
    pub fn as_vertex(&self, p: TreePoint, tol: f64) -> Option<usize> {
        let e = self.edges[p.edge];
        if p.offset <= tol {
            Some(e.u)
        } else if p.offset >= e.length - tol {
            Some(e.v)
        } else {
            None
        }
    }

    fn exits(&self, p: TreePoint) -> [(usize, f64); 2] {
        let e = self.edges[p.edge];
        let o = p.offset.clamp(0.0, e.length);
        [(e.u, o), (e.v, e.length - o)]
    }

    fn best_exits(&self, p: TreePoint, q: TreePoint) -> (usize, f64, usize, f64, f64) {
        let mut best = (0, 0.0, 0, 0.0, f64::INFINITY);
        for (a, ca) in self.exits(p) {
            for (b, cb) in self.exits(q) {
                let total = ca + self.vertex_distance(a, b) + cb;
                if total < best.4 {
                    best = (a, ca, b, cb, total);
                }
            }
        }
        best
    }

    pub fn distance(&self, p: TreePoint, q: TreePoint) -> f64 {
        if p.edge == q.edge {
            return (p.offset - q.offset).abs();
        }
        self.best_exits(p, q).4
    }

    /// Point at distance `s` from vertex `x` along the edge `e`.
    fn along(&self, x: usize, e: usize, s: f64) -> TreePoint {
        let edge = self.edges[e];
        let s = s.clamp(0.0, edge.length);
        if edge.u == x {
            TreePoint { edge: e, offset: s }
        } else {
            TreePoint { edge: e, offset: edge.length - s }
        }
    }

    pub fn geodesic_point(&self, p: TreePoint, q: TreePoint, t: f64) -> TreePoint {
        if p.edge == q.edge {
            return TreePoint { edge: p.edge, offset: p.offset + t * (q.offset - p.offset) };
        }
        let (a, ca, b, cb, total) = self.best_exits(p, q);
        let mut s = t * total;
        if s <= ca {
            let e = self.edges[p.edge];
            let offset = if a == e.u { p.offset - s } else { p.offset + s };
            return TreePoint { edge: p.edge, offset: offset.clamp(0.0, e.length) };
        }
        s -= ca;
        let (verts, es) = self.vertex_path(a, b);
        for (x, e) in verts.iter().zip(&es) {
            let len = self.edges[*e].length;
            if s <= len {
                return self.along(*x, *e, s);
            }
            s -= len;
        }
        // remaining distance lies on q's edge, measured from b
        let remaining = (cb - s).max(0.0);
        let e = self.edges[q.edge];
        let offset = if b == e.u { q.offset - remaining } else { q.offset + remaining };
        TreePoint { edge: q.edge, offset: offset.clamp(0.0, e.length) }
    }

    /// Edge pieces `(edge, lo, hi)` covering the geodesic from `p` to `q`.
    pub fn path_pieces(&self, p: TreePoint, q: TreePoint) -> Vec<(usize, f64, f64)> {
        if p.edge == q.edge {
            return vec![(p.edge, p.offset.min(q.offset), p.offset.max(q.offset))];
        }
        let (a, _, b, _, _) = self.best_exits(p, q);
        let piece = |x: TreePoint, end: usize| {
            let e = self.edges[x.edge];
            if end == e.u {
                (x.edge, 0.0, x.offset)
            } else {
                (x.edge, x.offset, e.length)
            }
        };
        let mut out = vec![piece(p, a)];
        out.extend(self.vertex_path(a, b).1.into_iter().map(|e| (e, 0.0, self.edges[e].length)));
        out.push(piece(q, b));
        out
    }

    /// Image of a point under a vertex permutation that is a tree automorphism.
    pub fn map_point(&self, perm: &[usize], p: TreePoint) -> TreePoint {
        let e = self.edges[p.edge];
        let (a, b) = (perm[e.u], perm[e.v]);
        let f = self.edge_between(a, b).expect("automorphism maps edges to edges");
        let img = self.edges[f];
        if img.u == a {
            TreePoint { edge: f, offset: p.offset }
        } else {
            TreePoint { edge: f, offset: img.length - p.offset }
        }
    }

    /// Checks that `perm` is a length-preserving automorphism.
    pub fn check_automorphism(&self, perm: &[usize]) -> Result<(), String> {
        if perm.len() != self.vertices {
            return Err(format!("map has {} entries for {} vertices", perm.len(), self.vertices));
        }
        let mut seen = vec![false; self.vertices];
        for &v in perm {
            if v >= self.vertices || std::mem::replace(&mut seen[v], true) {
                return Err("vertex map is not a permutation".into());
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            match self.edge_between(perm[e.u], perm[e.v]) {
                Some(f) if (self.edges[f].length - e.length).abs() <= tolerance::VALIDITY * e.length.max(1.0) => {}
                Some(_) => return Err(format!("edge {i} is mapped to an edge of different length")),
                None => return Err(format!("edge {i} is not mapped to an edge")),
            }
        }
        Ok(())
    }

    /// Endpoints of a diametral pair of vertices.
    pub fn diametral_vertices(&self) -> (usize, usize) {
        let n = self.vertices;
        let mut best = (0, 0, 0.0);
        for a in 0..n {
            for b in a + 1..n {
                let d = self.vertex_distance(a, b);
                if d > best.2 {
                    best = (a, b, d);
                }
            }
        }
        (best.0, best.1)
    }
}
