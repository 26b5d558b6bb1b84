//! The Lickorish curves `a_1..a_g, b_1..b_g, c_1..c_{g-1}` in their standard
//! chain position, as a ribbon graph.
//!
//! `a_i` and `b_i` meet once, `c_i` meets `b_i` and `b_{i+1}` once, and no
//! other pairs meet. Cutting the surface along all curves leaves `g` disks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::curveset::CurveSet;
use crate::error::SurfaceError;
use crate::model::symplectic::pairing;

pub const MIN_GENUS: usize = 2;
/// Curve subsets are stored as `u64` masks, so `3g - 1 <= 64`.
pub const MAX_GENUS: usize = 21;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveFamily {
    A,
    B,
    C,
}

/// `a_i`, `b_i` or `c_i` with a 1-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveLabel {
    pub family: CurveFamily,
    pub index: usize,
}

impl fmt::Display for CurveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            CurveFamily::A => 'a',
            CurveFamily::B => 'b',
            CurveFamily::C => 'c',
        };
        write!(f, "{c}{}", self.index)
    }
}

impl FromStr for CurveLabel {
    type Err = SurfaceError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SurfaceError::UnknownCurve(s.to_string());
        let mut chars = s.trim().chars();
        let family = match chars.next().ok_or_else(err)? {
            'a' | 'A' => CurveFamily::A,
            'b' | 'B' => CurveFamily::B,
            'c' | 'C' => CurveFamily::C,
            _ => return Err(err()),
        };
        let index: usize = chars.as_str().parse().map_err(|_| err())?;
        if index == 0 {
            return Err(err());
        }
        Ok(CurveLabel { family, index })
    }
}

impl Serialize for CurveLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CurveLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// One side of a curve at a crossing: the arc leaving (`out`) or entering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dart {
    pub crossing: usize,
    pub curve: usize,
    pub out: bool,
}

/// Transverse intersection point of two curves with the cyclic order of the
/// four arc-ends around it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub curves: (usize, usize),
    /// Counter-clockwise order of `(curve, out)` arc-ends.
    pub rotation: [(usize, bool); 4],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LickorishSystem {
    genus: usize,
    labels: Vec<CurveLabel>,
    homology: Vec<Vec<i64>>,
    crossings: Vec<Crossing>,
    order: Vec<Vec<usize>>,
    adjacency: Vec<u64>,
    face_of: Vec<usize>,
    face_count: usize,
}

impl LickorishSystem {
    pub fn new(genus: usize) -> Result<Self, SurfaceError> {
        if !(MIN_GENUS..=MAX_GENUS).contains(&genus) {
            return Err(SurfaceError::GenusOutOfRange { genus, min: MIN_GENUS, max: MAX_GENUS });
        }
        let g = genus;
        let n = 3 * g - 1;
        let (a, b, c) = (|i: usize| i - 1, |i: usize| g + i - 1, |i: usize| 2 * g + i - 1);
        let mut labels = Vec::with_capacity(n);
        for family in [CurveFamily::A, CurveFamily::B, CurveFamily::C] {
            let count = if family == CurveFamily::C { g - 1 } else { g };
            labels.extend((1..=count).map(|index| CurveLabel { family, index }));
        }
        // [a_i] = e_i, [b_i] = e_{g+i}, [c_i] = e_i - e_{i+1}
        let mut homology = vec![vec![0i64; 2 * g]; n];
        for i in 1..=g {
            homology[a(i)][i - 1] = 1;
            homology[b(i)][g + i - 1] = 1;
        }
        for i in 1..g {
            homology[c(i)][i - 1] = 1;
            homology[c(i)][i] = -1;
        }

        let mut pairs = Vec::new();
        let mut xab = vec![0; g + 1];
        let mut xcb = vec![(0, 0); g];
        for i in 1..=g {
            xab[i] = pairs.len();
            pairs.push((a(i), b(i)));
        }
        for i in 1..g {
            xcb[i].0 = pairs.len();
            pairs.push((c(i), b(i)));
            xcb[i].1 = pairs.len();
            pairs.push((c(i), b(i + 1)));
        }
        let mut order = vec![Vec::new(); n];
        for i in 1..=g {
            order[a(i)] = vec![xab[i]];
            let mut o = Vec::new();
            if i > 1 {
                o.push(xcb[i - 1].1);
            }
            o.push(xab[i]);
            if i < g {
                o.push(xcb[i].0);
            }
            order[b(i)] = o;
        }
        for i in 1..g {
            order[c(i)] = vec![xcb[i].0, xcb[i].1];
        }
        let crossings: Vec<Crossing> = pairs
            .iter()
            .map(|&(x, y)| {
                let s = pairing(&homology[x], &homology[y]);
                debug_assert_eq!(s.abs(), 1);
                let rotation = if s == 1 {
                    [(x, true), (y, true), (x, false), (y, false)]
                } else {
                    [(x, true), (y, false), (x, false), (y, true)]
                };
                Crossing { curves: (x, y), rotation }
            })
            .collect();
        let mut adjacency = vec![0u64; n];
        for &(x, y) in &pairs {
            adjacency[x] |= 1 << y;
            adjacency[y] |= 1 << x;
        }
        let mut sys = LickorishSystem {
            genus,
            labels,
            homology,
            crossings,
            order,
            adjacency,
            face_of: Vec::new(),
            face_count: 0,
        };
        let faces = sys.trace_faces(sys.all());
        sys.face_of = vec![usize::MAX; 4 * sys.crossings.len()];
        for (k, f) in faces.iter().enumerate() {
            for d in f {
                let i = sys.dart_index(*d);
                sys.face_of[i] = k;
            }
        }
        sys.face_count = faces.len();
        Ok(sys)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn curve_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[CurveLabel] {
        &self.labels
    }

    pub fn label(&self, curve: usize) -> CurveLabel {
        self.labels[curve]
    }

    pub fn homology(&self, curve: usize) -> &[i64] {
        &self.homology[curve]
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Crossings met along `curve`, in order of traversal.
    pub fn order(&self, curve: usize) -> &[usize] {
        &self.order[curve]
    }

    /// Mask of curves meeting `curve`.
    pub fn neighbours(&self, curve: usize) -> CurveSet {
        CurveSet(self.adjacency[curve])
    }

    pub fn intersects(&self, x: usize, y: usize) -> bool {
        self.adjacency[x] >> y & 1 == 1
    }

    pub fn all(&self) -> CurveSet {
        CurveSet::full(self.curve_count())
    }

    pub fn index_of(&self, label: &CurveLabel) -> Result<usize, SurfaceError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| SurfaceError::UnknownCurve(label.to_string()))
    }

    pub fn parse_curve(&self, s: &str) -> Result<usize, SurfaceError> {
        self.index_of(&s.parse()?)
    }

    /// Parses a comma or whitespace separated list of labels.
    pub fn parse_set(&self, s: &str) -> Result<CurveSet, SurfaceError> {
        let mut set = CurveSet::default();
        for part in s.split(|c: char| c == ',' || c.is_whitespace()).filter(|p| !p.is_empty()) {
            set.insert(self.parse_curve(part)?);
        }
        Ok(set)
    }

    pub fn set_from_labels(&self, labels: &[CurveLabel]) -> Result<CurveSet, SurfaceError> {
        let mut set = CurveSet::default();
        for l in labels {
            set.insert(self.index_of(l)?);
        }
        Ok(set)
    }

    pub fn labels_of(&self, s: CurveSet) -> Vec<CurveLabel> {
        s.iter().map(|c| self.labels[c]).collect()
    }

    pub fn format_set(&self, s: CurveSet) -> String {
        let inner: Vec<String> = s.iter().map(|c| self.labels[c].to_string()).collect();
        format!("{{{}}}", inner.join(","))
    }

    fn check_subset(&self, s: CurveSet) -> Result<(), SurfaceError> {
        if !self.all().contains_set(s) {
            return Err(SurfaceError::UnknownCurve(format!("curve index outside 0..{}", self.curve_count())));
        }
        Ok(())
    }

    /// Connected components of the intersection graph on `s`, ordered by
    /// their smallest curve.
    pub fn components(&self, s: CurveSet) -> Vec<CurveSet> {
        let mut rest = s;
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let mut comp = CurveSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = CurveSet::default();
                for c in frontier.iter() {
                    next = next.union(CurveSet(self.adjacency[c]));
                }
                frontier = next.intersection(s).minus(comp);
                comp = comp.union(frontier);
            }
            out.push(comp);
            rest = rest.minus(comp);
        }
        out
    }

    /// Whether the union of the curves in `s` is connected.
    pub fn is_connected_subset(&self, s: CurveSet) -> Result<bool, SurfaceError> {
        self.check_subset(s)?;
        if s.is_empty() {
            return Err(SurfaceError::EmptySubset);
        }
        Ok(self.components(s).len() == 1)
    }

    pub(crate) fn dart_index(&self, d: Dart) -> usize {
        let pos = self.crossings[d.crossing]
            .rotation
            .iter()
            .position(|&(c, o)| c == d.curve && o == d.out)
            .expect("dart belongs to its crossing");
        4 * d.crossing + pos
    }

    pub(crate) fn face_of(&self, d: Dart) -> usize {
        self.face_of[self.dart_index(d)]
    }

    pub fn face_count(&self) -> usize {
        self.face_count
    }

    pub(crate) fn is_inner_crossing(&self, x: usize, s: CurveSet) -> bool {
        let (a, b) = self.crossings[x].curves;
        s.contains(a) && s.contains(b)
    }

    /// Orbits of `sigma . alpha` on the darts at crossings inside `s`, where
    /// `alpha` follows a curve to the next crossing inside `s` and `sigma`
    /// rotates counter-clockwise at a crossing.
    pub(crate) fn trace_faces(&self, s: CurveSet) -> Vec<Vec<Dart>> {
        let inner: Vec<bool> = (0..self.crossings.len()).map(|x| self.is_inner_crossing(x, s)).collect();
        let seqs: Vec<Vec<usize>> = self
            .order
            .iter()
            .map(|o| o.iter().copied().filter(|&x| inner[x]).collect())
            .collect();
        let alpha = |d: Dart| -> Dart {
            let seq = &seqs[d.curve];
            let k = seq.iter().position(|&x| x == d.crossing).expect("inner crossing");
            let len = seq.len();
            if d.out {
                Dart { crossing: seq[(k + 1) % len], curve: d.curve, out: false }
            } else {
                Dart { crossing: seq[(k + len - 1) % len], curve: d.curve, out: true }
            }
        };
        let sigma = |d: Dart| -> Dart {
            let rot = &self.crossings[d.crossing].rotation;
            let k = rot.iter().position(|&(c, o)| c == d.curve && o == d.out).expect("dart at crossing");
            let (curve, out) = rot[(k + 1) % 4];
            Dart { crossing: d.crossing, curve, out }
        };
        let mut seen = vec![false; 4 * self.crossings.len()];
        let mut faces = Vec::new();
        for x in (0..self.crossings.len()).filter(|&x| inner[x]) {
            for &(curve, out) in &self.crossings[x].rotation {
                let start = Dart { crossing: x, curve, out };
                if seen[self.dart_index(start)] {
                    continue;
                }
                let mut face = Vec::new();
                let mut d = start;
                while !seen[self.dart_index(d)] {
                    seen[self.dart_index(d)] = true;
                    face.push(d);
                    d = sigma(alpha(d));
                }
                faces.push(face);
            }
        }
        faces
    }
}

/// Builds the Lickorish system of the closed genus-`g` surface.
pub fn lickorish_system(genus: usize) -> Result<LickorishSystem, SurfaceError> {
    LickorishSystem::new(genus)
}

/// Serializable summary of a Lickorish system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemSummary {
    pub genus: usize,
    pub curves: Vec<CurveLabel>,
    pub intersections: Vec<(CurveLabel, CurveLabel)>,
    pub ribbon: Vec<RibbonVertex>,
    pub homology: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RibbonVertex {
    pub curves: (CurveLabel, CurveLabel),
    /// Counter-clockwise arc-ends as `"a1+"` (leaving) or `"a1-"` (arriving).
    pub rotation: Vec<String>,
}

impl LickorishSystem {
    pub fn summary(&self) -> SystemSummary {
        SystemSummary {
            genus: self.genus,
            curves: self.labels.clone(),
            intersections: self
                .crossings
                .iter()
                .map(|x| (self.labels[x.curves.0], self.labels[x.curves.1]))
                .collect(),
            ribbon: self
                .crossings
                .iter()
                .map(|x| RibbonVertex {
                    curves: (self.labels[x.curves.0], self.labels[x.curves.1]),
                    rotation: x
                        .rotation
                        .iter()
                        .map(|&(c, o)| format!("{}{}", self.labels[c], if o { '+' } else { '-' }))
                        .collect(),
                })
                .collect(),
            homology: self.homology.clone(),
        }
    }
}
