use serde::{Deserialize, Serialize};

use super::curveset::CurveSet;
use super::lickorish::{CurveLabel, Dart, LickorishSystem};
use crate::error::SurfaceError;

/// A connected component of the surface minus the open neighborhood.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementSummary {
    pub chi: i64,
    pub boundary: usize,
    pub genus: usize,
    /// Faces of the full curve complex inside this component.
    pub faces: Vec<usize>,
}

impl ComplementSummary {
    pub fn is_disk(&self) -> bool {
        self.chi == 1 && self.boundary == 1
    }
}

/// Regular neighborhood of a union of Lickorish curves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RibbonNeighborhood {
    pub curves: Vec<CurveLabel>,
    /// Crossings between curves of the subset.
    pub vertices: usize,
    /// Arcs of subset curves between such crossings.
    pub edges: usize,
    pub chi: i64,
    pub boundary: usize,
    /// Total genus over the connected pieces.
    pub genus: usize,
    pub components: usize,
    /// The complement has more than one component.
    pub separating: bool,
    pub complement: Vec<ComplementSummary>,
}

/// Boundary curve of the neighborhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Walk {
    /// A curve of the subset running along this boundary curve.
    pub curve: usize,
    /// Complement component on the other side.
    pub region: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Cut {
    pub vertices: usize,
    pub edges: usize,
    pub chi: i64,
    pub components: usize,
    pub walks: Vec<Walk>,
    pub regions: Vec<ComplementSummary>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Cuts the surface along the boundary of the regular neighborhood of `s`.
/// Complement components are numbered by their smallest face.
pub(crate) fn cut(sys: &LickorishSystem, s: CurveSet) -> Cut {
    let ncross = sys.crossings().len();
    let inner: Vec<bool> = (0..ncross).map(|x| sys.is_inner_crossing(x, s)).collect();
    let vertices = inner.iter().filter(|&&b| b).count();
    let mut edges = 0;
    let mut reps: Vec<Dart> = sys.trace_faces(s).into_iter().map(|f| f[0]).collect();
    for c in s.iter() {
        let k = sys.order(c).iter().filter(|&&x| inner[x]).count();
        if k == 0 {
            let x = sys.order(c)[0];
            reps.push(Dart { crossing: x, curve: c, out: true });
            reps.push(Dart { crossing: x, curve: c, out: false });
        } else {
            edges += k;
        }
    }
    let chi = vertices as i64 - edges as i64;

    let nf = sys.face_count();
    let mut parent: Vec<usize> = (0..nf).collect();
    let mut arcs = Vec::new();
    for c in (0..sys.curve_count()).filter(|&c| !s.contains(c)) {
        let seq = sys.order(c);
        for (k, &v) in seq.iter().enumerate() {
            let w = seq[(k + 1) % seq.len()];
            let f1 = sys.face_of(Dart { crossing: v, curve: c, out: true });
            let f2 = sys.face_of(Dart { crossing: w, curve: c, out: false });
            let (r1, r2) = (find(&mut parent, f1), find(&mut parent, f2));
            parent[r1] = r2;
            arcs.push(f1);
        }
    }
    // canonical numbering by smallest face
    let mut region_of_root = vec![usize::MAX; nf];
    let mut region_of_face = vec![0; nf];
    let mut regions: Vec<ComplementSummary> = Vec::new();
    for f in 0..nf {
        let r = find(&mut parent, f);
        if region_of_root[r] == usize::MAX {
            region_of_root[r] = regions.len();
            regions.push(ComplementSummary { chi: 0, boundary: 0, genus: 0, faces: Vec::new() });
        }
        region_of_face[f] = region_of_root[r];
        let reg = &mut regions[region_of_root[r]];
        reg.faces.push(f);
        reg.chi += 1;
    }
    for f in arcs {
        regions[region_of_face[f]].chi -= 1;
    }
    for (x, crossing) in sys.crossings().iter().enumerate() {
        let (a, b) = crossing.curves;
        if !s.contains(a) && !s.contains(b) {
            let (curve, out) = crossing.rotation[0];
            regions[region_of_face[sys.face_of(Dart { crossing: x, curve, out })]].chi += 1;
        }
    }
    let walks: Vec<Walk> = reps
        .iter()
        .map(|d| Walk { curve: d.curve, region: region_of_face[sys.face_of(*d)] })
        .collect();
    for w in &walks {
        regions[w.region].boundary += 1;
    }
    for r in &mut regions {
        let twice = 2 - r.chi - r.boundary as i64;
        debug_assert!(twice >= 0 && twice % 2 == 0, "complement genus must be a whole number");
        r.genus = (twice / 2) as usize;
    }
    let components = sys.components(s).len();
    Cut { vertices, edges, chi, components, walks, regions }
}

impl Cut {
    pub fn genus(&self) -> usize {
        let twice = 2 * self.components as i64 - self.chi - self.walks.len() as i64;
        debug_assert!(twice >= 0 && twice % 2 == 0);
        (twice / 2) as usize
    }
}

/// Euler characteristic, boundary curves, genus and complement components of
/// the regular neighborhood of the curves in `s`.
pub fn neighborhood(sys: &LickorishSystem, s: CurveSet) -> Result<RibbonNeighborhood, SurfaceError> {
    if s.is_empty() {
        return Err(SurfaceError::EmptySubset);
    }
    if !sys.all().contains_set(s) {
        return Err(SurfaceError::UnknownCurve(format!("curve index outside 0..{}", sys.curve_count())));
    }
    let c = cut(sys, s);
    Ok(RibbonNeighborhood {
        curves: sys.labels_of(s),
        vertices: c.vertices,
        edges: c.edges,
        chi: c.chi,
        boundary: c.walks.len(),
        genus: c.genus(),
        components: c.components,
        separating: c.regions.len() > 1,
        complement: c.regions,
    })
}
