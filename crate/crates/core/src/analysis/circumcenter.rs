use serde::{Deserialize, Serialize};

use super::minball::min_enclosing_ball;
use crate::error::AnalysisError;
use crate::model::tangent::{exp_map, log_map};
use crate::model::{ModelPoint, SpaceDescriptor};

/// Closed ball containing a finite set; `radius` is the largest distance
/// from `center` to an input point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnclosingBall {
    pub center: ModelPoint,
    pub radius: f64,
}

const AVERAGING_STEPS: usize = 4000;

fn max_distance(space: &SpaceDescriptor, c: &ModelPoint, points: &[ModelPoint]) -> Result<(f64, usize), AnalysisError> {
    let mut best = (0.0, 0);
    for (i, p) in points.iter().enumerate() {
        let d = space.distance_unchecked(c, p)?;
        if d > best.0 {
            best = (d, i);
        }
    }
    Ok(best)
}

/// Geodesic averaging toward the farthest point with steps `1/(k+1)`.
fn averaging(space: &SpaceDescriptor, points: &[ModelPoint], steps: usize) -> Result<ModelPoint, AnalysisError> {
    let mut c = points[0].clone();
    let mut best = (max_distance(space, &c, points)?.0, c.clone());
    for k in 1..=steps {
        let (r, far) = max_distance(space, &c, points)?;
        if r < best.0 {
            best = (r, c.clone());
        }
        if r == 0.0 {
            break;
        }
        c = space.geodesic_unchecked(&c, &points[far], 1.0 / (k as f64 + 1.0))?;
    }
    let r = max_distance(space, &c, points)?.0;
    Ok(if r < best.0 { c } else { best.1 })
}

/// Riemannian refinement: move toward the center of the minimal ball of the
/// logarithms until that center is the origin.
fn tangent_refine(space: &SpaceDescriptor, points: &[ModelPoint], start: ModelPoint) -> Result<ModelPoint, AnalysisError> {
    let mut c = start;
    let mut r = max_distance(space, &c, points)?.0;
    for _ in 0..1000 {
        let logs = points.iter().map(|p| log_map(space, &c, p)).collect::<Result<Vec<_>, _>>()?;
        let m = min_enclosing_ball(&logs).center;
        let norm = m.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm <= 1e-15 * r.max(1.0) {
            break;
        }
        let mut alpha = 1.0;
        let mut moved = false;
        while alpha > 1e-12 {
            let step: Vec<f64> = m.iter().map(|x| alpha * x).collect();
            let cand = exp_map(space, &c, &step)?;
            let rc = max_distance(space, &cand, points)?.0;
            if rc < r {
                c = cand;
                r = rc;
                moved = true;
                break;
            }
            alpha *= 0.5;
        }
        if !moved {
            break;
        }
    }
    Ok(c)
}

/// Center and radius of the minimal enclosing ball.
///
/// Euclidean inputs are solved exactly, trees by the midpoint of a
/// diametral pair, Siegel spaces and smooth products by tangent-space
/// refinement. Products with a tree factor fall back to geodesic averaging,
/// which is approximate.
pub fn circumcenter(space: &SpaceDescriptor, points: &[ModelPoint]) -> Result<EnclosingBall, AnalysisError> {
    if points.is_empty() {
        return Err(AnalysisError::EmptyInput);
    }
    space.validate()?;
    for p in points {
        space.validate_point(p)?;
    }
    let center = match space {
        SpaceDescriptor::Euclid { .. } => {
            let coords: Vec<Vec<f64>> = points
                .iter()
                .map(|p| match p {
                    ModelPoint::Euclid { coords } => coords.clone(),
                    _ => unreachable!("validated"),
                })
                .collect();
            ModelPoint::euclid(min_enclosing_ball(&coords).center)
        }
        SpaceDescriptor::Tree(_) => {
            let mut best = (0.0, 0, 0);
            for i in 0..points.len() {
                for j in i + 1..points.len() {
                    let d = space.distance_unchecked(&points[i], &points[j])?;
                    if d > best.0 {
                        best = (d, i, j);
                    }
                }
            }
            let center = space.geodesic_unchecked(&points[best.1], &points[best.2], 0.5)?;
            return Ok(EnclosingBall { center, radius: best.0 / 2.0 });
        }
        _ if space.has_tree_factor() => averaging(space, points, AVERAGING_STEPS)?,
        _ => {
            let start = averaging(space, points, 32)?;
            tangent_refine(space, points, start)?
        }
    };
    let radius = max_distance(space, &center, points)?.0;
    Ok(EnclosingBall { center, radius })
}
